"""Shared corpus builders and brute-force oracles for the test suite.

Oracles here deliberately avoid the code paths they check: operator
products are validated through the action on functions, factorizations
through exhaustive trial division over the residue field.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from padicdx import DiffOp, MicroOp, PAdicScalar, ResiduePoly, TatePoly


def rand_scalar(rng, p, val_range=(-3, 3), zero_ok=True):
    if zero_ok and rng.random() < 0.12:
        return PAdicScalar.zero(p)
    unit_num = rng.choice([1, 2, 3, 5, 7, 11])
    while unit_num % p == 0:
        unit_num += 1
    unit_den = rng.choice([1, 2, 3, 5, 7])
    while unit_den % p == 0:
        unit_den += 1
    sign = rng.choice([1, -1])
    e = rng.randint(*val_range)
    return PAdicScalar(sign * Fraction(unit_num, unit_den) * Fraction(p) ** e, p)


def rand_poly(rng, p, var="x", max_deg=4, val_range=(-3, 3), nonzero=False):
    deg = rng.randint(0, max_deg)
    coeffs = [rand_scalar(rng, p, val_range) for _ in range(deg + 1)]
    f = TatePoly(coeffs, p, var)
    if nonzero and f.is_zero():
        return TatePoly.one(p, var) + f
    return f


def rand_diffop(rng, p, var="x", max_dd=4, max_dx=4, val_range=(-3, 3), nonzero=False):
    order = rng.randint(0, max_dd)
    coeffs = {
        n: rand_poly(rng, p, var, max_dx, val_range) for n in range(order + 1)
    }
    P = DiffOp(coeffs, p, var)
    if nonzero and P.is_zero():
        return DiffOp.one(p, var)
    return P


def rand_microop(rng, p, var="x", window=(-3, 3), max_dx=3, val_range=(-2, 2)):
    lo = rng.randint(window[0], 0)
    hi = rng.randint(0, window[1])
    coeffs = {
        n: rand_poly(rng, p, var, max_dx, val_range) for n in range(lo, hi + 1)
    }
    return MicroOp(coeffs, p, var)


def naive_apply(P: DiffOp, f: TatePoly) -> TatePoly:
    """Independent action of an operator on a function."""
    out = TatePoly.zero(P.p, f.var)
    for n, c in P.coeffs.items():
        g = f
        for _ in range(n):
            g = g.derivative()
        out = out + c * g
    return out


def monic_polys(p, deg, var="x"):
    """All monic polynomials of exact degree deg over the residue field."""
    for tail in iproduct(range(p), repeat=deg):
        yield ResiduePoly(list(tail) + [1], p, var)


def brute_is_irreducible(g: ResiduePoly) -> bool:
    """Trial division by every monic polynomial of degree up to half."""
    d = g.degree()
    if d <= 0:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for q in monic_polys(g.p, deg, g.var):
            if q.divides(g):
                return False
    return True


def brute_factor(g: ResiduePoly):
    """Exhaustive factorization into monic irreducibles, smallest first."""
    f = g.monic()
    out = {}
    deg = 1
    while f.degree() >= 1:
        found = False
        for q in monic_polys(f.p, deg, f.var):
            if brute_is_irreducible(q) and q.divides(f):
                mult = 0
                while q.divides(f):
                    f = f // q
                    mult += 1
                out[q] = mult
                found = True
                break
        if not found:
            deg += 1
    return sorted(out.items(), key=lambda qm: (qm[0].degree(), qm[0].coeffs))
