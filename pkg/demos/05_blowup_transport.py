"""Transporting functions, operators and supports to a blow-up.

Blowing up the disc at a center splits the support point there into
points on the inner chart, possibly together with the crossing point of
the exceptional locus; multiplicities over every base point are
conserved, as is the zero-section multiplicity.
Run with: python demos/05_blowup_transport.py
"""

from padicdx import (
    BlowupModel,
    DiffOp,
    PAdicScalar,
    TatePoly,
    chart_commutator_constant,
    fiber_sum_check,
    infinite_support,
    pull_function_u1,
    pull_operator_u1,
    support_on_blowup,
)

p = 2
w = PAdicScalar.uniformizer_power
x = TatePoly.variable(p)
B = BlowupModel(PAdicScalar.zero(p), 1)

print("== pulling functions to the inner chart (x = pi t) ==")
a = (x - w(p)) * (x - w(p, 2))
print(f"a = {a}")
pulled = pull_function_u1(a, B)
print(f"a on the chart: {pulled}")
normalized, shift = pulled.normalize()
print(f"normalized: pi^{shift} * ({normalized})")
print(f"reduction on the chart: {normalized.reduce()}")

print()
print("== operator transport needs the level to clear the blow-up ==")
for k in (1, 2, 3):
    scaled = DiffOp({1: w(p, k)}, p)
    moved = pull_operator_u1(scaled, B, k)
    print(f"pi^{k} d_x pulls to {moved}")
print("commutator norm of the scaled derivation with the chart coordinate:")
for k in (1, 2, 3):
    print(f"  level {k}: {chart_commutator_constant(B, k)}")

print()
print("== support transport and the fiber sum ==")
P = DiffOp({2: a, 1: x}, p)
base = infinite_support(P)
print("base support:", [(str(pt), m) for pt, m in base.points])
above = support_on_blowup(P, B)
print("blow-up support:")
for cp, m in above:
    print(f"  [{cp.chart.value}] {cp.point} with multiplicity {m}")
print(f"fiber sums and zero-section multiplicity conserved: {fiber_sum_check(P, B)}")

print()
print("== a double point splits across levels ==")
Q = DiffOp({1: x * x - w(p)}, p)  # roots of valuation 1/2
print(f"Q = {Q}")
print("base:", [(str(pt), m) for pt, m in infinite_support(Q).points])
for cp, m in support_on_blowup(Q, B):
    print(f"  at level 1: [{cp.chart.value}] {cp.point} multiplicity {m}")
print(f"conserved: {fiber_sum_check(Q, B)}")
