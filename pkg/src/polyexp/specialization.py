"""Nonsingular specializations of polynomial tuples.

Given polynomials b_1, ..., b_q over Q(zeta_M) in formal variables, find
rational points v_1, ..., v_q' (q' the linear dimension of the tuple) such that
the evaluation matrix [b_j(v_i)] on a basis subset has nonzero determinant.
Points are chosen one at a time: with v_1..v_{r-1} fixed, the determinant
with a symbolic last row is a nonzero polynomial, and the first integer point
in spiral order where it does not vanish becomes v_r.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InputError
from .exact_arith import CycNum, cyc_embed, lcm
from .model import CycPolyMV, poly_eval

DEFAULT_SPIRAL_BUDGET = 100_000


@dataclass(frozen=True)
class PolyTuple:
    variables: tuple[str, ...]
    entries: tuple[CycPolyMV, ...]

    def __post_init__(self):
        n = len(self.variables)
        for P in self.entries:
            if P.nvars is not None and P.nvars != n:
                raise InputError(f"dimension mismatch: entry in {P.nvars} variables, {n} declared")
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def order(self) -> int:
        return lcm(*(P.order for P in self.entries)) if self.entries else 1

    @property
    def nvars(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class SpecializationCert:
    points: tuple[tuple[int, ...], ...]
    selected_basis: tuple[int, ...]      # 0-based indices into the tuple's entries
    matrix: tuple[tuple[CycNum, ...], ...]
    determinant: CycNum
    fallback_used: bool = False
    seed: int | None = None

    @property
    def size(self) -> int:
        return len(self.points)


def cyc_det(matrix: Sequence[Sequence[CycNum]]) -> CycNum:
    """Determinant over Q(zeta_M) by Gaussian elimination with field inverses."""
    n = len(matrix)
    if n == 0:
        return CycNum.one(1)
    M = [list(r) for r in matrix]
    order = M[0][0].order
    result = CycNum.one(order)
    for c in range(n):
        p = next((i for i in range(c, n) if not M[i][c].is_zero()), None)
        if p is None:
            return CycNum.zero(order)
        if p != c:
            M[c], M[p] = M[p], M[c]
            result = -result
        piv = M[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if not M[i][c].is_zero():
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return result


def _coefficient_rows(entries: Sequence[CycPolyMV], order: int):
    monos = sorted({e for P in entries for e, _ in P.monomials})
    col = {e: j for j, e in enumerate(monos)}
    zero = CycNum.zero(order)
    rows = []
    for P in entries:
        row = [zero] * len(monos)
        for e, c in P.monomials:
            row[col[e]] = cyc_embed(c, order)
        rows.append(row)
    return rows


def linear_dimension(tup: PolyTuple) -> tuple[int, tuple[int, ...]]:
    """Rank over Q(zeta_M) of the entries and the greedy first basis subset (0-based)."""
    order = tup.order
    echelon: list[tuple[int, list[CycNum]]] = []  # (pivot column, row with pivot 1)
    basis = []
    for idx, row in enumerate(_coefficient_rows(tup.entries, order)):
        for pc, er in echelon:
            f = row[pc]
            if not f.is_zero():
                row = [a - f * b for a, b in zip(row, er)]
        pc = next((j for j, x in enumerate(row) if not x.is_zero()), None)
        if pc is None:
            continue
        inv = row[pc].inverse()
        echelon.append((pc, [x * inv for x in row]))
        basis.append(idx)
    return len(basis), tuple(basis)


def spiral_points(nvars: int) -> Iterator[tuple[int, ...]]:
    """Z^n in shells of growing sup norm; inside a shell, lexicographic in the order 0, 1, -1, 2, -2, ..."""
    if nvars == 0:
        yield ()
        return
    R = 0
    while True:
        seq = [0]
        for k in range(1, R + 1):
            seq += [k, -k]
        for pt in itertools.product(seq, repeat=nvars):
            if max(abs(x) for x in pt) == R:
                yield pt
        R += 1


def _bordered_polynomial(basis_polys: Sequence[CycPolyMV], rows: Sequence[Sequence[CycNum]],
                         order: int) -> CycPolyMV:
    """Determinant of ``rows`` bordered by a last row of the unevaluated polynomials.

    Laplace expansion along the last row: sum_j (-1)^(r+j) minor_j * b_j.
    """
    r = len(rows) + 1
    total = CycPolyMV(order, ())
    for j, b in enumerate(basis_polys):
        minor = [[x for k, x in enumerate(row) if k != j] for row in rows]
        cof = cyc_det(minor) if minor else CycNum.one(order)
        if (r - 1 + j) % 2:
            cof = -cof
        if not cof.is_zero():
            total = total + b.scale(cyc_embed(cof, lcm(cof.order, order)))
    return total


def build_specializations(tup: PolyTuple, budget: int = DEFAULT_SPIRAL_BUDGET,
                          seed: int = 0) -> SpecializationCert:
    """Evaluation points with a nonsingular evaluation matrix on a basis of the tuple.

    The spiral search is deterministic; if a point search exceeds ``budget``
    candidates, seeded random points from growing boxes are tried instead and
    the certificate records it.
    """
    if all(P.is_zero() for P in tup.entries):
        raise InputError("all-zero tuple has no specialization")
    order = tup.order
    _, basis = linear_dimension(tup)
    polys = [tup.entries[i].embed(order) for i in basis]
    points: list[tuple[int, ...]] = []
    rows: list[list[CycNum]] = []
    fallback = False
    rng = random.Random(seed)
    for _ in range(len(polys)):
        D = _bordered_polynomial(polys[:len(rows) + 1], [row[:len(rows) + 1] for row in rows], order)
        if D.is_zero():
            raise ArithmeticError("bordered determinant vanished identically")  # pragma: no cover
        point = None
        for n, pt in enumerate(spiral_points(tup.nvars)):
            if n >= budget:
                break
            if not poly_eval(D, pt).is_zero():
                point = pt
                break
        if point is None:
            fallback = True
            radius = 1
            while point is None:
                radius *= 2
                for _ in range(64):
                    pt = tuple(rng.randint(-radius, radius) for _ in range(tup.nvars))
                    if not poly_eval(D, pt).is_zero():
                        point = pt
                        break
        points.append(point)
        rows.append([poly_eval(P, point) for P in polys])
    matrix = tuple(tuple(r) for r in rows)
    return SpecializationCert(tuple(points), basis, matrix, cyc_det(matrix), fallback,
                              seed if fallback else None)
