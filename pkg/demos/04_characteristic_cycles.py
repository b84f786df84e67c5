"""Supports and characteristic cycles of cyclic operator modules.

The stable support is the zero locus of the reduced normalized dominant
coefficient; the cycle adds a zero-section component with multiplicity
the derivation degree.  Cycles add along products, and a cycle vanishes
exactly when the presenting operator is invertible.
Run with: python demos/04_characteristic_cycles.py
"""

from padicdx import (
    DiffOp,
    PAdicScalar,
    TatePoly,
    bernstein_check,
    cc_add,
    char_cycle,
    infinite_support,
    render_cc,
)

p = 2
w = PAdicScalar.uniformizer_power
x = TatePoly.variable(p)

print("== the running example ==")
P = DiffOp({2: (x - w(p)) * (x - w(p, 2)), 1: x}, p)
print(f"P = {P}")
report = infinite_support(P)
print(f"support certified from level {report.rmin}:")
for point, mult in report.points:
    print(f"  {point} with multiplicity {mult}")
cc = char_cycle(P)
print(f"cycle: m0 = {cc.m0}, length = {cc.length}")

print()
print(render_cc(cc, "ascii"))

print("== additivity along products ==")
A = DiffOp({1: x, 0: -1}, p)  # x d - 1
B = DiffOp.derivation(p)
lhs = char_cycle(A * B)
rhs = cc_add(char_cycle(A), char_cycle(B))
print(f"CC(A B)      : m0 = {lhs.m0}, vertical = {[(str(pt), m) for pt, m in lhs.vertical]}")
print(f"CC(A) + CC(B): m0 = {rhs.m0}, vertical = {[(str(pt), m) for pt, m in rhs.vertical]}")
print(f"equal: {lhs == rhs}")

print()
print("== vanishing detects invertibility ==")
for label, Q in (
    ("1", DiffOp.one(p)),
    ("pi^3", DiffOp.from_poly(TatePoly.constant(w(p, 3), p))),
    ("x d - 1", A),
    ("x", DiffOp.from_poly(x)),
):
    cc = char_cycle(Q)
    print(
        f"  {label}: cycle zero = {cc.is_zero()}, unit = {Q.is_disc_unit()}, "
        f"consistent = {bernstein_check(Q)}"
    )
