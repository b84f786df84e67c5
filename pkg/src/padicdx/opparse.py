"""Expression language for operators and functions.

Grammar, with left associative sums and products and products kept in
written order::

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' exponent)?
    atom   := 'd' | variable | 'p' | rational | '(' expr ')'

Exponents are nonnegative integers, except on the prime symbol (any
integer, giving exact scalar powers) and on the derivation symbol in
Laurent mode, where negative powers denote the inverse derivation.
Rationals are integer literals or slash fractions written without
spaces.  Normalization into an operator moves coefficients left of the
derivation powers through the product rule only; the syntax tree itself
preserves the source shape, parentheses included.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    MixedVariables,
    NegativePowerOutsideMicroMode,
    ParseError,
)
from .micro import MicroOp
from .scalars import PAdicScalar
from .tatepoly import TatePoly
from .weyl import DiffOp

VARIABLES = ("x", "t", "u")


# syntax tree


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Symbol:
    name: str

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Rational:
    numerator: int
    denominator: int = 1

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Neg:
    operand: object

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Paren:
    inner: object

    def __str__(self):
        return print_expr(self)


# lexer

_TOK_INT = "int"
_TOK_SYM = "sym"
_TOK_OP = "op"
_TOK_EOF = "eof"


def _tokenize(src: str) -> list[tuple[str, object, int]]:
    out = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            num = int(src[i:j])
            if j < n and src[j] == "/":
                k = j + 1
                if k >= n or not src[k].isdigit():
                    raise ParseError("expected digits after '/'", j)
                m = k
                while m < n and src[m].isdigit():
                    m += 1
                den = int(src[k:m])
                if den == 0:
                    raise ParseError("zero denominator", k)
                out.append((_TOK_INT, (num, den), i))
                i = m
            else:
                out.append((_TOK_INT, (num, 1), i))
                i = j
            continue
        if ch.isalpha():
            if ch in VARIABLES or ch in ("d", "p"):
                out.append((_TOK_SYM, ch, i))
                i += 1
                continue
            raise ParseError(f"unknown symbol {ch!r}", i)
        if ch in "+-*^()":
            out.append((_TOK_OP, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    out.append((_TOK_EOF, None, n))
    return out


class _Parser:
    def __init__(self, tokens, micro: bool):
        self.tokens = tokens
        self.pos = 0
        self.micro = micro

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, at = self.peek()
        if kind != _TOK_OP or value != op:
            raise ParseError(f"expected {op!r}", at)
        return self.advance()

    def parse_expr(self):
        kind, value, _ = self.peek()
        negate_first = kind == _TOK_OP and value == "-"
        if negate_first:
            self.advance()
        first = self.parse_term()
        terms = [Neg(first) if negate_first else first]
        while True:
            kind, value, _ = self.peek()
            if kind == _TOK_OP and value in "+-":
                self.advance()
                term = self.parse_term()
                terms.append(Neg(term) if value == "-" else term)
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def parse_term(self):
        factors = [self.parse_factor()]
        while True:
            kind, value, _ = self.peek()
            if kind == _TOK_OP and value == "*":
                self.advance()
                factors.append(self.parse_factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def parse_factor(self):
        atom = self.parse_atom()
        kind, value, _ = self.peek()
        if kind == _TOK_OP and value == "^":
            self.advance()
            exponent = self.parse_exponent(atom)
            return Power(atom, exponent)
        return atom

    def parse_exponent(self, base) -> int:
        negative = False
        kind, value, at = self.peek()
        if kind == _TOK_OP and value == "-":
            if base == Symbol("d"):
                if not self.micro:
                    raise NegativePowerOutsideMicroMode(
                        "inverse powers of d need the Laurent ring"
                    )
            elif base != Symbol("p"):
                raise ParseError("negative exponent only on d or p", at)
            negative = True
            self.advance()
        kind, value, at = self.peek()
        if kind != _TOK_INT or value[1] != 1:
            raise ParseError("expected an integer exponent", at)
        self.advance()
        exp = value[0]
        return -exp if negative else exp

    def parse_atom(self):
        kind, value, at = self.advance()
        if kind == _TOK_INT:
            return Rational(*value)
        if kind == _TOK_SYM:
            return Symbol(value)
        if kind == _TOK_OP and value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return Paren(inner)
        raise ParseError("expected a value", at)


def parse(src: str, micro: bool = False):
    """Parse an expression into a syntax tree.

    Laurent mode admits negative exponents on the derivation symbol.
    """
    if not src.strip():
        raise ParseError("empty expression", 0)
    parser = _Parser(_tokenize(src), micro)
    tree = parser.parse_expr()
    kind, _, at = parser.peek()
    if kind != _TOK_EOF:
        raise ParseError("trailing input", at)
    return tree


# printing


def _atomic(node) -> bool:
    if isinstance(node, (Symbol, Paren)):
        return True
    if isinstance(node, Rational):
        return node.denominator == 1 and node.numerator >= 0
    return False


def print_expr(node) -> str:
    """Render a syntax tree; parse of the result recovers the tree up to
    the parentheses the rendering itself introduces."""
    if isinstance(node, Rational):
        if node.denominator == 1:
            return str(node.numerator)
        return f"{node.numerator}/{node.denominator}"
    if isinstance(node, Symbol):
        return node.name
    if isinstance(node, Paren):
        return f"({print_expr(node.inner)})"
    if isinstance(node, Neg):
        inner = print_expr(node.operand)
        if isinstance(node.operand, (Sum, Neg)):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Power):
        base = print_expr(node.base)
        if not _atomic(node.base):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Product):
        parts = []
        for f in node.factors:
            text = print_expr(f)
            if isinstance(f, (Sum, Neg)):
                text = f"({text})"
            parts.append(text)
        return "*".join(parts)
    if isinstance(node, Sum):
        out = print_expr(node.terms[0])
        if isinstance(node.terms[0], Sum):
            out = f"({out})"
        for term in node.terms[1:]:
            if isinstance(term, Neg):
                text = print_expr(term.operand)
                if isinstance(term.operand, (Sum, Neg)):
                    text = f"({text})"
                out += f" - {text}"
            else:
                text = print_expr(term)
                if isinstance(term, Sum):
                    text = f"({text})"
                out += f" + {text}"
        return out
    raise TypeError(f"not a syntax tree node: {node!r}")


def strip_parens(node):
    """Canonical structural form: grouping nodes removed and associative
    nesting flattened, for comparison after round trips."""
    if isinstance(node, Paren):
        return strip_parens(node.inner)
    if isinstance(node, Sum):
        terms = []
        for t in node.terms:
            t = strip_parens(t)
            if isinstance(t, Sum):
                terms.extend(t.terms)
            else:
                terms.append(t)
        return Sum(tuple(terms))
    if isinstance(node, Product):
        factors = []
        for f in node.factors:
            f = strip_parens(f)
            if isinstance(f, Product):
                factors.extend(f.factors)
            else:
                factors.append(f)
        return Product(tuple(factors))
    if isinstance(node, Power):
        return Power(strip_parens(node.base), node.exponent)
    if isinstance(node, Neg):
        return Neg(strip_parens(node.operand))
    return node


# normalization into operators


class _Normalizer:
    def __init__(self, p: int, default_var: str):
        self.p = p
        self.var: str | None = None
        self.default_var = default_var

    def run(self, node) -> MicroOp:
        result = self.eval(node)
        return result

    def eval(self, node) -> MicroOp:
        p = self.p
        if isinstance(node, Rational):
            return MicroOp(
                {0: PAdicScalar(Fraction(node.numerator, node.denominator), p)},
                p,
                self.var or self.default_var,
            )
        if isinstance(node, Symbol):
            if node.name == "d":
                return MicroOp.d_power(1, p, self.var or self.default_var)
            if node.name == "p":
                return MicroOp({0: PAdicScalar(p, p)}, p, self.var or self.default_var)
            if node.name in VARIABLES:
                if self.var is None:
                    self.var = node.name
                elif self.var != node.name:
                    raise MixedVariables(
                        f"expression mixes {self.var!r} and {node.name!r}"
                    )
                return MicroOp.from_poly(TatePoly.variable(p, node.name))
            raise ParseError(f"unknown symbol {node.name!r}", 0)
        if isinstance(node, Paren):
            return self.eval(node.inner)
        if isinstance(node, Neg):
            return -self.eval(node.operand)
        if isinstance(node, Sum):
            out = self.eval(node.terms[0])
            for term in node.terms[1:]:
                out = out + self.eval(term)
            return out
        if isinstance(node, Product):
            out = self.eval(node.factors[0])
            for factor in node.factors[1:]:
                out = out * self.eval(factor)
            return out
        if isinstance(node, Power):
            if node.exponent < 0:
                if node.base == Symbol("d"):
                    return MicroOp.d_power(
                        node.exponent, p, self.var or self.default_var
                    )
                if node.base == Symbol("p"):
                    return MicroOp(
                        {0: PAdicScalar(Fraction(p) ** node.exponent, p)},
                        p,
                        self.var or self.default_var,
                    )
                raise NegativePowerOutsideMicroMode(
                    "negative exponent only on d or p"
                )
            return self.eval(node.base) ** node.exponent
        raise TypeError(f"not a syntax tree node: {node!r}")


def to_micro_op(node, p: int, default_var: str = "x") -> MicroOp:
    """Evaluate a syntax tree in the Laurent operator ring."""
    return _Normalizer(p, default_var).run(node)


def to_diff_op(node, p: int, default_var: str = "x") -> DiffOp:
    """Evaluate a syntax tree as a finite differential operator."""
    micro = to_micro_op(node, p, default_var)
    if any(n < 0 for n in micro.coeffs):
        raise NegativePowerOutsideMicroMode(
            "expression involves inverse powers of d"
        )
    return micro.to_diffop()
