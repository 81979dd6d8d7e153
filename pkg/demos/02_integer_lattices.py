"""Integer kernels, normal forms, congruence lattices and nearest points."""
from fractions import Fraction

from polyexp import (ZLattice, congruence_lattice, hnf, integer_kernel, lattice_index, lattice_intersection,
                     nearest_point, snf)

A = [[2, 4, 6], [1, 3, 5]]
K = integer_kernel(A)
print("integer kernel of", A, "->", K.basis)

print("HNF of generators [[4], [6]]:", hnf([[4], [6]]))
D, U, V = snf([[2, 0], [0, 3]])
print("SNF of diag(2, 3):", D, " (U, V unimodular)")

# n with n/2 an integer, i.e. 2Z; and with n/2 in 3Z, i.e. 6Z.
print("{n : n/2 in Z}  =", congruence_lattice([[Fraction(1, 2)]], [1]).basis)
print("{n : n/2 in 3Z} =", congruence_lattice([[Fraction(1, 2)]], [3]).basis)

two, three = ZLattice.from_generators([[2]], 1), ZLattice.from_generators([[3]], 1)
six = lattice_intersection(two, three)
print("2Z cap 3Z =", six.basis, "; index of 6Z in 2Z:", lattice_index(six, two))

skew = ZLattice.from_generators([[1, 0, 206], [0, 1, 213], [0, 0, 388]], 3)
target = [Fraction(7, 2), Fraction(-5, 3), Fraction(100)]
point, dist = nearest_point(skew, target)
print(f"nearest point of a skewed lattice to {[str(x) for x in target]}: {point} at sup distance {dist}")
