"""Exact rational matrices and integer lattices.

Matrices are lists of rows. Rational matrices hold Fractions, integer
matrices hold Python ints. Lattices are kept in row Hermite normal form
(positive pivots, entries above each pivot reduced into [0, pivot)), which
is canonical, so two lattices are equal exactly when their bases are.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError

Vector = tuple


def _rows(A, ncols: int | None) -> tuple[list[list], int]:
    rows = [list(r) for r in A]
    if ncols is None:
        if not rows:
            raise InputError("cannot infer column count of an empty matrix")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise InputError("dimension mismatch: ragged matrix")
    return rows, ncols


def _clear_denominators(row: Sequence) -> list[int]:
    den = 1
    for x in row:
        den = math.lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


def mat_vec(A, v) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def mat_mul(A, B) -> list[list]:
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def det(A) -> Fraction | int:
    """Exact determinant by Bareiss elimination (integers stay integral)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    integral = all(isinstance(x, int) or Fraction(x).denominator == 1 for r in M for x in r)
    if not integral:
        M = [[Fraction(x) for x in r] for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num // prev if integral else num / prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# -- rational elimination ----------------------------------------------------

def rref(A, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form (nonzero rows only) and pivot columns.

    Forward elimination is fraction-free on the denominator-cleared rows; the
    final normalization divides each pivot row once.
    """
    rows, ncols = _rows(A, ncols)
    M = [_clear_denominators(r) for r in rows]
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, len(M)):
            f = M[i][c]
            M[i] = [(piv * M[i][j] - f * M[r][j]) // prev for j in range(ncols)]
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    R = [[Fraction(x, M[i][pivots[i]]) for x in M[i]] for i in range(len(pivots))]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    return R, pivots


def rref_kernel(A, ncols: int | None = None) -> tuple[int, list[int], list[tuple[Fraction, ...]]]:
    """Rank, pivot columns and the canonical rational kernel basis of A.

    Kernel vectors have a 1 in their free column and 0 in the other free
    columns; they are ordered by free-column index.

    >>> rref_kernel([[2, 4], [1, 2]])[2]
    [(Fraction(-2, 1), Fraction(1, 1))]
    """
    R, pivots = rref(A, ncols)
    rows, ncols = _rows(A, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        kernel.append(tuple(v))
    return len(pivots), pivots, kernel


def solve(A, b, ncols: int | None = None) -> tuple[Fraction, ...] | None:
    """One exact solution x of A x = b (free variables zero), or None."""
    rows, ncols = _rows(A, ncols)
    aug = [list(r) + [Fraction(bi)] for r, bi in zip(rows, b)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][ncols]
    return tuple(x)


def rank(A, ncols: int | None = None) -> int:
    return len(rref(A, ncols)[1])


# -- integer normal forms ----------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _elimination(a: int, b: int) -> tuple[int, int, int, int]:
    """Unimodular (x, y, c, d) sending (a, b) to (gcd, 0); plain subtraction when a | b."""
    if a and b % a == 0:
        return 1, 0, -(b // a), 1
    g, x, y = _xgcd(a, b)
    return x, y, -b // g, a // g


def _echelon(M: list[list[int]], ncols: int, extra: list[list[int]] | None = None) -> list[int]:
    """Integer row echelon form in place by unimodular row operations.

    ``extra`` rows (same count as M) receive the same operations. Returns the
    pivot columns; rows below len(pivots) are zero in the first ``ncols`` entries.
    """
    def combine(i, k, a, b, c, d):
        # rows (i, k) <- (a*row_i + b*row_k, c*row_i + d*row_k), ad - bc = 1
        ri, rk = M[i], M[k]
        M[i] = [a * x + b * y for x, y in zip(ri, rk)]
        M[k] = [c * x + d * y for x, y in zip(ri, rk)]
        if extra is not None:
            ei, ek = extra[i], extra[k]
            extra[i] = [a * x + b * y for x, y in zip(ei, ek)]
            extra[k] = [c * x + d * y for x, y in zip(ei, ek)]

    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        for k in range(r + 1, len(M)):
            if M[k][c] != 0:
                combine(r, k, *_elimination(M[r][c], M[k][c]))
        if M[r][c] == 0:
            continue
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
            if extra is not None:
                extra[r] = [-x for x in extra[r]]
        piv = M[r][c]
        for i in range(r):
            q = M[i][c] // piv
            if q:
                M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                if extra is not None:
                    extra[i] = [x - q * y for x, y in zip(extra[i], extra[r])]
        pivots.append(c)
        r += 1
    return pivots


def hnf(B, ncols: int | None = None) -> list[list[int]]:
    """Row Hermite normal form of the row span of an integer matrix (zero rows dropped).

    >>> hnf([[4], [6]])
    [[2]]
    """
    rows, ncols = _rows(B, ncols)
    M = [[int(x) for x in r] for r in rows]
    pivots = _echelon(M, ncols)
    return M[:len(pivots)]


def hnf_pivots(H: Sequence[Sequence[int]]) -> list[int]:
    return [next(j for j, x in enumerate(row) if x != 0) for row in H]


def snf(B, ncols: int | None = None) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form: returns (D, U, V) with U @ B @ V == D and d_i | d_{i+1}."""
    rows, ncols = _rows(B, ncols)
    D = [[int(x) for x in r] for r in rows]
    m, n = len(D), ncols
    U = identity(m)
    V = identity(n)

    def row_op(i, k, a, b, c, d):
        for X in (D, U):
            ri, rk = X[i], X[k]
            X[i] = [a * x + b * y for x, y in zip(ri, rk)]
            X[k] = [c * x + d * y for x, y in zip(ri, rk)]

    def col_op(j, k, a, b, c, d):
        # cols (j, k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for X in (D, V):
            for row in X:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y

    t = 0
    while t < min(m, n):
        # choose the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            for X in (D, V):
                for row in X:
                    row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for k in range(t + 1, m):
                if D[k][t]:
                    row_op(t, k, *_elimination(D[t][t], D[k][t]))
            for k in range(t + 1, n):
                if D[t][k]:
                    col_op(t, k, *_elimination(D[t][t], D[t][k]))
                    done = False
            if done and all(D[k][t] == 0 for k in range(t + 1, m)):
                # divisibility: fold any entry not divisible by the pivot into row t
                bad = next(((k, l) for k in range(t + 1, m) for l in range(t + 1, n)
                            if D[k][l] % D[t][t]), None)
                if bad is None:
                    break
                row_op(t, bad[0], 1, 1, 0, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


# -- lattices ----------------------------------------------------------------

@dataclass(frozen=True)
class ZLattice:
    """A sublattice of Z^t given by its canonical row-HNF basis."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, gens, ambient_dim: int) -> "ZLattice":
        H = hnf(gens, ambient_dim) if gens else []
        return cls(ambient_dim, tuple(tuple(r) for r in H))

    @classmethod
    def full(cls, t: int) -> "ZLattice":
        return cls(t, tuple(tuple(r) for r in identity(t)))

    @classmethod
    def zero(cls, t: int) -> "ZLattice":
        return cls(t, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return hnf_pivots(self.basis)

    def __contains__(self, v) -> bool:
        return lattice_member(self, v)

    def reduce(self, v) -> tuple:
        """Canonical representative of v modulo the lattice (pivot coordinates in [0, pivot))."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            q = math.floor(Fraction(v[p]) / row[p])
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return tuple(v)

    def __str__(self):
        return f"ZLattice(rank {self.rank} in Z^{self.ambient_dim}: {[list(r) for r in self.basis]})"


def integer_kernel(A, ncols: int | None = None) -> ZLattice:
    """The lattice {n in Z^t : A n = 0} for a rational matrix A."""
    rows, t = _rows(A, ncols)
    if not rows:
        return ZLattice.full(t)
    Aint = [_clear_denominators(r) for r in rows]
    # echelonize A^T with an identity block; rows whose A^T part vanishes span the kernel
    M = [list(col) for col in zip(*Aint)]
    extra = identity(t)
    pivots = _echelon(M, len(Aint), extra)
    return ZLattice.from_generators(extra[len(pivots):], t)


def congruence_lattice(A, modulus: Sequence[int], ncols: int | None = None) -> ZLattice:
    """{n in Z^t : (A n)_r = 0 mod modulus_r for every row r}.

    Rows are cleared of denominators (scaling the modulus alike) and one
    auxiliary column per row absorbs the multiple of the modulus; the
    integer kernel of the augmented matrix is projected back to Z^t.
    """
    rows, t = _rows(A, ncols)
    if len(modulus) != len(rows):
        raise InputError("dimension mismatch: one modulus per row required")
    if not rows:
        return ZLattice.full(t)
    aug = []
    for r, (row, m) in enumerate(zip(rows, modulus)):
        if int(m) != m or m <= 0:
            raise InputError(f"invalid modulus: {m}")
        den = 1
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
        aux = [0] * len(rows)
        aux[r] = -den * int(m)
        aug.append([int(Fraction(x) * den) for x in row] + aux)
    K = integer_kernel(aug, t + len(rows))
    return ZLattice.from_generators([list(v[:t]) for v in K.basis], t)


def lattice_member(L: ZLattice, v) -> bool:
    if len(v) != L.ambient_dim:
        raise InputError("dimension mismatch")
    v = [Fraction(x) for x in v]
    if any(x.denominator != 1 for x in v):
        return False
    for row, p in zip(L.basis, L.pivots):
        if v[p] % row[p]:
            return False
        q = v[p] / row[p]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def lattice_coordinates(L: ZLattice, v) -> tuple[int, ...]:
    """Integer coefficients of v in the HNF basis (v must be a member)."""
    v = [Fraction(x) for x in v]
    coeffs = []
    for row, p in zip(L.basis, L.pivots):
        q = v[p] / row[p]
        if q.denominator != 1:
            raise InputError(f"{tuple(v)} is not in the lattice")
        coeffs.append(int(q))
        v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        raise InputError("vector is not in the lattice")
    return tuple(coeffs)


def lattice_intersection(L1: ZLattice, L2: ZLattice) -> ZLattice:
    if L1.ambient_dim != L2.ambient_dim:
        raise InputError("dimension mismatch")
    t = L1.ambient_dim
    if not L1.rank or not L2.rank:
        return ZLattice.zero(t)
    # a B1 = b B2  <=>  (a, b) in ker [B1^T | -B2^T]
    cols = [list(r) for r in L1.basis] + [[-x for x in r] for r in L2.basis]
    K = integer_kernel([list(r) for r in zip(*cols)], len(cols))
    gens = [[sum(a * row[j] for a, row in zip(k[:L1.rank], L1.basis)) for j in range(t)]
            for k in K.basis]
    return ZLattice.from_generators(gens, t)


def lattice_sum(L1: ZLattice, L2: ZLattice) -> ZLattice:
    if L1.ambient_dim != L2.ambient_dim:
        raise InputError("dimension mismatch")
    return ZLattice.from_generators(list(L1.basis) + list(L2.basis), L1.ambient_dim)


def lattice_index(L_sub: ZLattice, L_sup: ZLattice) -> int | float:
    """[L_sup : L_sub]; ``math.inf`` when the ranks differ."""
    if L_sub.ambient_dim != L_sup.ambient_dim:
        raise InputError("dimension mismatch")
    for row in L_sub.basis:
        if not lattice_member(L_sup, row):
            raise InputError("index needs L_sub to be contained in L_sup")
    if L_sub.rank != L_sup.rank:
        return math.inf
    C = [list(lattice_coordinates(L_sup, row)) for row in L_sub.basis]
    return abs(det(C))


def sup_norm(v) -> Fraction:
    return max((abs(Fraction(x)) for x in v), default=Fraction(0))


def nearest_point(L: ZLattice, target) -> tuple[tuple[int, ...], Fraction]:
    """Lattice point closest to ``target`` in the sup norm, ties to the lexicographically smallest.

    Enumerates HNF coefficients coordinate by coordinate: on pivot column p_i
    only row i and earlier rows are nonzero, so a sup-distance budget d
    confines the i-th coefficient to an interval once the earlier ones are fixed.
    The budget shrinks to the best distance found so far.
    """
    target = [Fraction(x) for x in target]
    t = L.ambient_dim
    if len(target) != t:
        raise InputError("dimension mismatch")
    if L.rank == 0:
        return (0,) * t, sup_norm(target)
    basis, pivots = L.basis, L.pivots

    # initial budget from successive rounding
    partial = [Fraction(0)] * t
    for row, p in zip(basis, pivots):
        c = round((target[p] - partial[p]) / row[p])
        partial = [x + c * y for x, y in zip(partial, row)]
    best = [sup_norm([a - b for a, b in zip(partial, target)]), tuple(int(x) for x in partial)]

    def descend(i, point):
        if i == len(basis):
            d = sup_norm([a - b for a, b in zip(point, target)])
            pt = tuple(int(x) for x in point)
            if d < best[0] or d == best[0] and pt < best[1]:
                best[0], best[1] = d, pt
            return
        row, p = basis[i], pivots[i]
        # columns before p are final once rows 0..i-1 are fixed
        for j in range(p):
            if abs(point[j] - target[j]) > best[0]:
                return
        centre = (target[p] - point[p]) / row[p]
        c0 = math.floor(centre)
        # centre-first order so the budget shrinks early
        for step in range(0, 2 * (math.ceil(best[0] / row[p]) + 2)):
            c = c0 + (step + 1) // 2 if step % 2 else c0 - step // 2
            if abs(point[p] + c * row[p] - target[p]) > best[0]:
                if abs(c - centre) > best[0] / row[p] + 1:
                    break
                continue
            descend(i + 1, [x + c * y for x, y in zip(point, row)])

    descend(0, [Fraction(0)] * t)
    return best[1], best[0]
