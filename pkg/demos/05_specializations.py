"""Certificates that a tuple of polynomials stays independent after evaluation.

Points are chosen one at a time in the spiral order 0, 1, -1, 2, ... so
that the evaluation matrix on a basis of the tuple is nonsingular. The
certificate carries everything needed to check it by hand.
"""
from pathlib import Path

from polyexp import build_specializations, linear_dimension
from polyexp.reports import parse_poly_tuple

HERE = Path(__file__).resolve().parent

for name in ("vandermonde_tuple", "gaussian_tuple"):
    tup = parse_poly_tuple((HERE / "problems" / f"{name}.json").read_text())
    dim, basis = linear_dimension(tup)
    cert = build_specializations(tup)
    print(f"{name}: variables {list(tup.variables)}, {len(tup.entries)} entries, linear dimension {dim}")
    print("  basis entries:", [i + 1 for i in basis])
    print("  points:", [list(p) for p in cert.points])
    print("  determinant:", cert.determinant)
