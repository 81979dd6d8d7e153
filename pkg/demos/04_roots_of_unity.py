"""Which roots of unity can appear in a short vanishing sum?

A minimal vanishing sum with k + 1 terms only involves roots of unity of
orders satisfying divisibility and prime-sum constraints. The bound T is
the largest admissible order; the enumerator lists the sums themselves.
"""
from polyexp import DZParams, dz_feasible, dz_order_bound, enumerate_vanishing_sums

for k in (1, 2, 3, 4):
    T, orders = dz_order_bound(DZParams(k, 1))
    print(f"k = {k}: T = {T}, admissible orders {orders}")

check = dz_feasible(5, 2, 1)
print(f"order 5 with k = 2: feasible={bool(check)}, prime sum {check.prime_sum} > k - 1")

print("minimal vanishing sums with at most 4 terms, coefficients +-1, order <= 12:")
for vs in enumerate_vanishing_sums(4, 12, (1, -1), dedupe_galois=True):
    terms = " + ".join(f"({c})z{vs.order}^{e}" for c, e in zip(vs.coefficients, vs.exponents))
    print(f"  {terms} = 0")
