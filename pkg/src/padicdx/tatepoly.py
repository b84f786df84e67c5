"""Polynomial representatives of functions on the closed unit disc.

A :class:`TatePoly` is a finite coefficient sequence over the exact p-adic
scalars; the Gauss norm (the maximum of the coefficient norms) is the
spectral norm of the function it represents and is multiplicative.  The
module provides normalization to Gauss norm one, reduction to the residue
field, the dominant-constant-term unit test on the disc, a geometric
series inverse with an exactly certified residual, and Newton polygon
data used for locating roots by valuation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NormTooLarge, NotAUnit, ZeroInput
from .residue import ResiduePoly
from .scalars import NEG_INF, NormExp, PAdicScalar


def _as_exp(eps) -> int:
    if isinstance(eps, NormExp):
        if eps.is_neg_inf():
            raise ValueError("a target precision of norm zero is unreachable")
        return eps.exp
    return int(eps)


class TatePoly:
    """A polynomial over the exact p-adic scalars with a variable symbol.

    Coefficients are stored ascending by degree with trailing zeros
    trimmed; the zero polynomial has an empty coefficient tuple.
    Constants are compatible with any variable symbol.
    """

    __slots__ = ("coeffs", "p", "var")

    def __init__(self, coeffs, p: int, var: str = "x"):
        cs = [
            c if isinstance(c, PAdicScalar) else PAdicScalar(c, p) for c in coeffs
        ]
        for c in cs:
            if c.p != p:
                raise ValueError("mixed primes in coefficients")
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("TatePoly is immutable")

    # constructors

    @classmethod
    def zero(cls, p: int, var: str = "x") -> "TatePoly":
        return cls((), p, var)

    @classmethod
    def one(cls, p: int, var: str = "x") -> "TatePoly":
        return cls((1,), p, var)

    @classmethod
    def constant(cls, value, p: int, var: str = "x") -> "TatePoly":
        return cls((value,), p, var)

    @classmethod
    def variable(cls, p: int, var: str = "x") -> "TatePoly":
        return cls((0, 1), p, var)

    # structure

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coefficient(self, i: int) -> PAdicScalar:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return PAdicScalar.zero(self.p)

    def leading(self) -> PAdicScalar:
        if not self.coeffs:
            raise ZeroInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_term(self) -> PAdicScalar:
        return self.coefficient(0)

    def _merge_var(self, other: "TatePoly") -> str:
        if self.is_constant():
            return other.var
        if other.is_constant():
            return self.var
        if self.var != other.var:
            raise ValueError(f"mixed variables {self.var!r} and {other.var!r}")
        return self.var

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return TatePoly((PAdicScalar(other, self.p),), self.p, self.var)
        if isinstance(other, PAdicScalar):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return TatePoly((other,), self.p, self.var)
        if isinstance(other, TatePoly):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        return None

    # arithmetic

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        var = self._merge_var(o)
        n = max(len(self.coeffs), len(o.coeffs))
        return TatePoly(
            [self.coefficient(i) + o.coefficient(i) for i in range(n)], self.p, var
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return TatePoly([-c for c in self.coeffs], self.p, self.var)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        var = self._merge_var(o)
        if self.is_zero() or o.is_zero():
            return TatePoly.zero(self.p, var)
        zero = PAdicScalar.zero(self.p)
        out = [zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return TatePoly(out, self.p, var)

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("negative power of a polynomial")
        out = TatePoly.one(self.p, self.var)
        base = self
        while exp:
            if exp & 1:
                out = out * base
            base = base * base
            exp >>= 1
        return out

    def scale(self, scalar) -> "TatePoly":
        s = scalar if isinstance(scalar, PAdicScalar) else PAdicScalar(scalar, self.p)
        return TatePoly([c * s for c in self.coeffs], self.p, self.var)

    def derivative(self) -> "TatePoly":
        return TatePoly(
            [c * i for i, c in enumerate(self.coeffs)][1:], self.p, self.var
        )

    def evaluate(self, point: PAdicScalar) -> PAdicScalar:
        acc = PAdicScalar.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def compose_linear(
        self, shift: PAdicScalar, stretch: PAdicScalar, new_var: str
    ) -> "TatePoly":
        """Substitute shift + stretch * (new variable) for the variable."""
        lin = TatePoly((shift, stretch), self.p, new_var)
        acc = TatePoly.zero(self.p, new_var)
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def with_var(self, var: str) -> "TatePoly":
        return TatePoly(self.coeffs, self.p, var)

    def drop_below(self, cutoff_exp: int) -> "TatePoly":
        """Discard coefficients of norm below the cutoff exponent."""
        zero = PAdicScalar.zero(self.p)
        return TatePoly(
            [c if c.norm() >= NormExp(cutoff_exp) else zero for c in self.coeffs],
            self.p,
            self.var,
        )

    # norms and reduction

    def gauss_norm(self) -> NormExp:
        """Spectral norm: the maximum of the coefficient norms."""
        return max((c.norm() for c in self.coeffs), default=NEG_INF)

    def normalize(self) -> tuple["TatePoly", int]:
        """Split off the power of the uniformizer reaching Gauss norm one.

        Returns (g, v) with ``self == p**v * g`` and ``g`` of Gauss norm
        one exactly.
        """
        if self.is_zero():
            raise ZeroInput("cannot normalize the zero polynomial")
        v = -self.gauss_norm().exp
        return self.scale(PAdicScalar.uniformizer_power(self.p, -v)), v

    def reduce(self) -> ResiduePoly:
        """Coefficientwise reduction; requires Gauss norm at most one."""
        if self.gauss_norm() > NormExp(0):
            raise NormTooLarge(f"Gauss norm of {self} exceeds one")
        return ResiduePoly(
            [c.reduce_mod_pi().value for c in self.coeffs], self.p, self.var
        )

    # units on the disc

    def is_unit_on_disc(self) -> bool:
        """Dominant constant term test for invertibility on the disc."""
        if self.is_zero():
            return False
        c0 = self.coeffs[0].norm()
        return all(c.norm() < c0 for c in self.coeffs[1:])

    def invert_on_disc(self, eps) -> tuple["TatePoly", NormExp]:
        """Geometric-series inverse with an exactly certified residual.

        Returns (g, rho) with ``gauss_norm(self * g - 1) == rho < eps``.
        The tail ratio has Gauss norm strictly below one, so truncation
        terminates; the residual is recomputed exactly before returning.
        """
        eps_exp = _as_exp(eps)
        if not self.is_unit_on_disc():
            raise NotAUnit(f"{self} is not a unit on the closed disc")
        c0 = self.coeffs[0]
        scaled = self.scale(1 / c0)
        tail = scaled - TatePoly.one(self.p, self.var)
        if tail.is_zero():
            return TatePoly.constant(1 / c0, self.p, self.var), NEG_INF
        tail_exp = tail.gauss_norm().exp
        acc = TatePoly.one(self.p, self.var)
        power = TatePoly.one(self.p, self.var)
        bound = tail_exp
        while bound >= eps_exp:
            power = power * (-tail)
            acc = acc + power
            bound += tail_exp
        inverse = acc.scale(1 / c0)
        residual = (self * inverse - 1).gauss_norm()
        return inverse, residual

    # Newton polygon

    def newton_valuation_counts(self) -> list[tuple[Fraction, int]]:
        """Root valuations from the lower Newton polygon.

        Returns (valuation, count) pairs accounting for every nonzero
        root in an algebraic closure, with multiplicity.  Roots equal to
        zero are not listed; their number is the order of vanishing at
        the origin.
        """
        pts = [
            (i, c.valuation()) for i, c in enumerate(self.coeffs) if not c.is_zero()
        ]
        if not pts:
            raise ZeroInput("zero polynomial has no Newton polygon")
        hull = [pts[0]]
        for pt in pts[1:]:
            while len(hull) >= 2:
                (x1, y1), (x2, y2) = hull[-2], hull[-1]
                # drop hull points above the segment to pt
                if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                    hull.pop()
                else:
                    break
            hull.append(pt)
        out = []
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            slope = Fraction(y2 - y1, x2 - x1)
            out.append((-slope, x2 - x1))
        return out

    def root_count_in_valuation_range(self, low, high) -> int:
        """Number of roots with valuation strictly between low and high.

        Zero roots (valuation infinity) are included when ``high`` is
        ``None`` (unbounded above).
        """
        count = 0
        ord0 = 0
        while ord0 < len(self.coeffs) and self.coeffs[ord0].is_zero():
            ord0 += 1
        if high is None and ord0 > 0:
            count += ord0
        for val, mult in self.newton_valuation_counts():
            if val > low and (high is None or val < high):
                count += mult
        return count

    # misc

    def _eq_key(self):
        return (self.p, self.coeffs, self.var if len(self.coeffs) > 1 else "")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PAdicScalar)):
            other = self._check(other)
        if not isinstance(other, TatePoly):
            return NotImplemented
        return self._eq_key() == other._eq_key()

    def __hash__(self):
        return hash(self._eq_key())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            sign = "-" if c.value < 0 else "+"
            mag = abs(c.value)
            if i == 0:
                body = str(mag)
            else:
                v = self.var if i == 1 else f"{self.var}^{i}"
                body = v if mag == 1 else f"{mag}*{v}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"TatePoly({[str(c) for c in self.coeffs]}, p={self.p}, var={self.var!r})"
