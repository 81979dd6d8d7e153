"""The subspace V, its complement, the projections and the relation lattice H.

For sum_i P_i(x) exp(x . alpha_i) = 0, V collects the directions along
which every exponential factor changes in the same way. Solutions can
drift freely along V, so the interesting part of a solution q is its
projection pi'(q) onto a fixed complement V'.
"""
from fractions import Fraction

from polyexp import compute_H, corollary_congruence_lattice, split_space, system

# 2^x 3^y = 3^x 2^y
sym = system([("g1", 2), ("g2", 3)],
             [(1, [(0, [1, 0]), (0, [0, 1])]), (-1, [(0, [0, 1]), (0, [1, 0])])], name="symmetric logs")
sp = split_space(sym)
print(sym.name)
print("  V basis:", [[str(x) for x in v] for v in sp.V_basis])
print("  V' spanned by e" + ", e".join(str(j + 1) for j in sp.Vprime_indices))
q = (Fraction(3), Fraction(1))
pi, pi_prime = sp.project(q)
print(f"  q = (3, 1) splits as pi(q) = {[str(x) for x in pi]} and pi'(q) = {[str(x) for x in pi_prime]}")
print("  complement fingerprint:", sp.fingerprint)

# exp(pi i x) + 1 = 0: the exponentials agree on even integers only.
minus_one = system([], [(1, [(Fraction(1, 2), [])]), (1, [(0, [])])], name="exp(pi i x) + 1")
print(minus_one.name)
print("  H =", compute_H(minus_one).basis)
for N in (1, 2, 3):
    print(f"  congruence lattice at N = {N}:", corollary_congruence_lattice(minus_one, N).basis)
