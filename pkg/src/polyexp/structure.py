"""Exponent-equalizing subspace V, its complement, projections and relation lattices.

V is the rational subspace of q with q . alpha_i equal for every i; H is the
lattice of integer n with exp(n . alpha_i) equal for every i. Both reduce to
constraints on the differences alpha_i - alpha_1 because 2*pi*i and the
log g_m are assumed Q-linearly independent.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .linalg import ZLattice, congruence_lattice, integer_kernel, lattice_intersection, rref, rref_kernel
from .model import AlphaMatrix, EqSystem


def _difference_rows(alpha: AlphaMatrix) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """(log rows, rho rows) of alpha_i - alpha_1 for i = 2..s; one log row per coordinate."""
    log_rows, rho_rows = [], []
    first = alpha.rows[0]
    for row in alpha.rows[1:]:
        diffs = [c - f for c, f in zip(row, first)]
        for k in range(alpha.m):
            log_rows.append([d.logs[k] for d in diffs])
        rho_rows.append([d.rho for d in diffs])
    return log_rows, rho_rows


def compute_V(alpha: AlphaMatrix) -> list[tuple[Fraction, ...]]:
    """Canonical basis of V = {q : q . alpha_i = q . alpha_1 for all i}."""
    log_rows, rho_rows = _difference_rows(alpha)
    _, _, kernel = rref_kernel(log_rows + rho_rows, alpha.t)
    return kernel


@dataclass(frozen=True)
class SplitSpace:
    """Q^t = V (+) V' with V' spanned by standard vectors off the pivots of V's RREF."""

    t: int
    V_basis: tuple[tuple[Fraction, ...], ...]
    Vprime_indices: tuple[int, ...]
    rref_rows: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @property
    def dim_V(self) -> int:
        return len(self.V_basis)

    @property
    def Vprime_basis(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == j) for i in range(self.t)) for j in self.Vprime_indices]

    def pi(self, q: Sequence) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.t
        for row, p in zip(self.rref_rows, self.pivots):
            c = Fraction(q[p])
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    def pi_prime(self, q: Sequence) -> tuple[Fraction, ...]:
        return tuple(Fraction(a) - b for a, b in zip(q, self.pi(q)))

    def project(self, q: Sequence) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        p = self.pi(q)
        return p, tuple(Fraction(a) - b for a, b in zip(q, p))

    @property
    def fingerprint(self) -> str:
        """Stable identifier of the complement choice, echoed in certificates."""
        idx = ",".join(f"e{j + 1}" for j in self.Vprime_indices) or "none"
        body = ";".join(",".join(str(x) for x in r) for r in self.rref_rows)
        digest = hashlib.sha256(f"{self.t}|{idx}|{body}".encode()).hexdigest()[:12]
        return f"pivot-complement[{idx}]#{digest}"


def complement_and_projections(V_basis: Sequence[Sequence], t: int) -> SplitSpace:
    V_basis = [tuple(Fraction(x) for x in v) for v in V_basis]
    if any(len(v) != t for v in V_basis):
        raise InputError("dimension mismatch in V basis")
    if V_basis:
        R, pivots = rref(V_basis, t)
        if len(pivots) != len(V_basis):
            raise InputError("dependent input basis for V")
    else:
        R, pivots = [], []
    free = tuple(j for j in range(t) if j not in pivots)
    return SplitSpace(t, tuple(V_basis), free, tuple(tuple(r) for r in R), tuple(pivots))


def split_space(eqsys: EqSystem) -> SplitSpace:
    return complement_and_projections(compute_V(eqsys.alpha), eqsys.t)


def compute_H(eqsys: EqSystem) -> ZLattice:
    """H = {n in Z^t : exp(n . alpha_i) equal for all i}, canonical HNF."""
    log_rows, rho_rows = _difference_rows(eqsys.alpha)
    t = eqsys.t
    L_log = integer_kernel(log_rows, t)
    L_rho = congruence_lattice(rho_rows, [1] * len(rho_rows), t)
    return lattice_intersection(L_log, L_rho)


def corollary_congruence_lattice(eqsys: EqSystem, N: int) -> ZLattice:
    """{m in Z^t : m . (alpha_i - alpha_1) in 2*pi*i*N*Z for all i}."""
    if int(N) != N or N <= 0:
        raise InputError(f"N must be a positive integer, got {N}")
    log_rows, rho_rows = _difference_rows(eqsys.alpha)
    t = eqsys.t
    L_log = integer_kernel(log_rows, t)
    L_rho = congruence_lattice(rho_rows, [int(N)] * len(rho_rows), t)
    return lattice_intersection(L_log, L_rho)
