"""The operator expression language and the command line driver.

Products keep their written order; normalizing into an operator moves
coefficients left of the derivation powers through the product rule.
Every kernel operation is also reachable as a CLI subcommand emitting
JSON; see the README for the full flag list.
Run with: python demos/06_expression_language.py
"""

from padicdx import parse, print_expr, to_diff_op, to_micro_op
from padicdx.cli import main

p = 2

print("== parsing and normalization ==")
for src in ("x*d - 1", "d*x", "(x - p)*(x - p^2)*d^2 + x*d"):
    tree = parse(src)
    P = to_diff_op(tree, p)
    print(f"{src!r}")
    print(f"  tree prints back as {print_expr(tree)!r}")
    print(f"  normalizes to       {P}")

print()
print("== Laurent mode admits inverse derivation powers ==")
S = to_micro_op(parse("d + d^-1", micro=True), p)
print(f"d + d^-1 -> {S}")

print()
print("== the same computations through the CLI ==")
for argv in (
    ["norm", "-p", "2", "-k", "1", "p*d^2 + d"],
    ["charvar", "-p", "2", "(x-p)*(x-p^2)*d^2"],
    ["fiber-check", "-p", "2", "--blowup", "c=0,m=1", "(x-p)*(x-p^2)*d^2"],
):
    print(f"$ padicdx {' '.join(argv)}")
    code = main(argv)
    print(f"(exit code {code})")
    print()
