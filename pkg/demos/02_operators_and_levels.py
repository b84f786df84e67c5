"""Finite differential operators, congruence-level norms and brackets.

The level-k norm weights the n-th derivation power by k*n on the
exponent scale.  It is multiplicative, and every commutator contracts by
at least one level, which is what makes the Laurent rings of the next
demo possible.
Run with: python demos/02_operators_and_levels.py
"""

import random

from padicdx import (
    ConnectionMatrix,
    DiffOp,
    PAdicScalar,
    TatePoly,
    commutator,
    connection_level,
    connection_matrix_power,
)

p = 2
w = PAdicScalar.uniformizer_power
x = DiffOp.from_poly(TatePoly.variable(p))
d = DiffOp.derivation(p)

print("== products move coefficients left through the product rule ==")
print(f"d * x        = {d * x}")
print(f"d^2 * x      = {DiffOp.derivation(p, n=2) * x}")
print(f"(x d)*(x d)  = {(x * d) * (x * d)}")

print()
print("== level norms and orders ==")
print(f"|d|_2 = {d.norm(2)}")
P = d.scale(PAdicScalar(p, p)) * d + d  # p d^2 + d
print(f"P = {P}")
print(f"|P|_1 = {P.norm(1)}, order at level 1: {P.order(1)}")
print(f"|P|_0 = {P.norm(0)}, order at level 0: {P.order(0)}")

print()
print("== multiplicativity and the commutator contraction ==")
rng = random.Random(1)


def rand_op():
    return DiffOp(
        {
            n: TatePoly([rng.randint(-8, 8) for _ in range(3)], p)
            for n in range(rng.randint(1, 3))
        },
        p,
    )


for _ in range(3):
    A, B = rand_op(), rand_op()
    if A.is_zero() or B.is_zero():
        continue
    print(
        f"|AB|_1 = {(A * B).norm(1)} = |A|_1 + |B|_1 = {A.norm(1) + B.norm(1)}"
    )
    C = commutator(A, B)
    print(f"  bracket norm {C.norm(1)} <= {A.norm(1) + B.norm(1) + (-1)}")

print()
print("== integrable connections ==")
A = ConnectionMatrix([[TatePoly.variable(p)]], p)
for n in (1, 2, 3):
    print(f"S_{n}(A) = {connection_matrix_power(A, n).entries[0][0]}")
print(f"convergence level of A = [x]: {connection_level(A)}")
bad = ConnectionMatrix([[w(p, -1)]], p)
print(f"convergence level of [1/p]: {connection_level(bad)}")
