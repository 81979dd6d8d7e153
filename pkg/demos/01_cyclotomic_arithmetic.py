"""Exact arithmetic in cyclotomic fields.

Every number lives in Q(zeta_M) as a canonical residue modulo the M-th
cyclotomic polynomial, so "is this zero?" is a plain comparison of
rational coordinates. No floating point is involved anywhere.
"""
from fractions import Fraction

from polyexp import CycNum, cyc_embed, cyclotomic_polynomial, sqrt_rational

print("Cyclotomic polynomials (coefficients, constant term first):")
for M in (1, 4, 6, 12):
    print(f"  Phi_{M}: {list(cyclotomic_polynomial(M).coeffs)}")

# The p-th roots of unity sum to zero.
for p in (3, 5, 7):
    total = sum((CycNum.zeta(p, j) for j in range(p)), CycNum.zero(p))
    print(f"sum of all roots of unity of order {p} is zero: {total.is_zero()}")

i = CycNum.zeta(4)
print("i * i =", i * i)
print("1 / (1 + i) =", (1 + i).inverse())

# Fields nest: zeta_3 is zeta_6 squared.
print("zeta_3 inside Q(zeta_6):", cyc_embed(CycNum.zeta(3), 6), "== zeta_6^2:", CycNum.zeta(6, 2))

# Square roots of rationals are cyclotomic (Gauss sums).
for r in (Fraction(2), Fraction(3), Fraction(5, 7)):
    s = sqrt_rational(r)
    print(f"sqrt({r}) lives in Q(zeta_{s.order}); squared back: {s * s == CycNum.from_rational(r, s.order)};"
          f" numerically {s.to_complex().real:.10f}")
