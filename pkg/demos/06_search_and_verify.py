"""Search a box of rational points, classify solutions, and certify denominators.

Each shipped problem is searched on (1/D)Z^t inside a sup-norm box. Every
solution is classified as nondegenerate (no proper subsum vanishes) or
degenerate, with the finest partition into vanishing blocks as witness.
N_emp is the least common denominator of pi'(q) over nondegenerate
solutions; it should not change when the box grows.
"""
from pathlib import Path

from polyexp import SearchSpec, compute_H, finiteness_monitor, search_box, translate_check, verify_system
from polyexp.reports import parse_problem

PROBLEMS = Path(__file__).resolve().parent / "problems"


def load(name):
    return parse_problem((PROBLEMS / f"{name}.json").read_text()).system


eq = load("four_pow_x_minus_2")
rep = verify_system(eq, SearchSpec(3, 12, growth_steps=1))
print(eq.name)
for r in rep.records:
    print(f"  q = {[str(x) for x in r.q]}: {r.status}")
print("  N_emp per box:", [(str(b), n) for b, n in rep.growth], "stable:", rep.stable)

eq = load("cancellation")
print(eq.name)
for r in search_box(eq, SearchSpec(1, 2)):
    print(f"  q = {[str(x) for x in r.q]}: {r.status}, blocks {r.witness}")

eq = load("minus_one_pow_x")
recs = search_box(eq, SearchSpec(5, 1))
v = translate_check(eq, recs, compute_H(eq), 5)
print(eq.name)
print("  integer solutions:", [int(r.q[0]) for r in recs])
print("  cosets of H:", v.cosets, "verdict:", "pass" if v.passed else "fail")

eq = load("two_x_three_y")
mon = finiteness_monitor(eq, SearchSpec(2, 6, growth_steps=2))
print(eq.name)
print("  nondegenerate counts per box:", [(str(b), n) for b, n in mon.rows])
print("  note:", mon.warnings[0])

eq = load("symbolic_generator")
rep = verify_system(eq, SearchSpec(2, 4, "allow_grouped"))
print(eq.name)
for r in rep.records:
    print(f"  q = {[str(x) for x in r.q]}: {r.status} ({r.zero_mode})")
for w in rep.warnings:
    print("  warning:", w)
