"""Exact p-adic scalars and functions on the closed unit disc.

Every quantity below is exact: scalars are rationals tagged with the
prime, and every norm is a power of p carried as an integer exponent.
Run with: python demos/01_scalars_and_functions.py
"""

from fractions import Fraction

from padicdx import PAdicScalar, TatePoly

p = 2
w = PAdicScalar.uniformizer_power

print("== scalars ==")
q = PAdicScalar(Fraction(3, 4), p)
print(f"q = {q}, valuation {q.valuation()}, norm {q.norm()}")
print(f"uniformizer pi = {w(p)}, |pi| = {w(p).norm()}")
print(f"|1/p^2| = {w(p, -2).norm()}")
print(f"3/5 mod pi = {PAdicScalar(Fraction(3, 5), p).reduce_mod_pi()}")

print()
print("== functions on the disc ==")
x = TatePoly.variable(p)
f = (x - w(p)) * (x - w(p, 2))
print(f"f = {f}")
print(f"Gauss norm of f: {f.gauss_norm()}  (max over coefficient norms)")

# dividing out the uniformizer content reaches Gauss norm one
g = f.scale(w(p, 2))
normalized, shift = g.normalize()
print(f"pi^2 * f normalizes to ({normalized}) with content exponent {shift}")

# reduction to the residue field and factorization of the zero locus
reduced = f.reduce()
print(f"f mod pi = {reduced}")
for point, mult in reduced.factor():
    print(f"  zero: {point} with multiplicity {mult}")

print()
print("== units and certified inversion ==")
u = TatePoly.one(p) - x.scale(w(p))
print(f"u = {u} is a unit on the disc: {u.is_unit_on_disc()}")
inv, residual = u.invert_on_disc(-3)
print(f"inverse to precision p^-3: {inv}")
print(f"certified residual |u * inv - 1| = {residual}")
print(f"exact check: |u * inv - 1| = {(u * inv - 1).gauss_norm()}")

print()
print("== Newton polygon ==")
h = x * x - w(p)
print(f"h = {h}")
for valuation, count in h.newton_valuation_counts():
    print(f"  {count} root(s) of valuation {valuation}")
