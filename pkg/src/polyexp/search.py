"""Exact evaluation, degeneracy classification and bounded-denominator solution search.

Terms are evaluated on the normalized exponents alpha_i - alpha_1 (same
solutions, same nondegeneracy). A term value P_i(q) * exp(q . alpha_i') is
split as ``coefficient * monomial`` where the coefficient lies in a cyclotomic
field and the monomial is a product of generator powers chosen from a fixed
set of class representatives; the equation holds iff every class coefficient
vanishes.

For concrete generators the representative of an exponent vector e is its
residue in [0, 1/2)^m, the half-integral rest being folded into the
coefficient (square roots of rationals are cyclotomic). Two distinct
representatives differ by a real radical whose square is not rational, which
lies in no abelian extension of Q; by Kummer theory the representatives are
linearly independent over every cyclotomic field, so the test is exact
("exact_cyclotomic"). Symbolic generators are kept as formal powers; a verdict
that separates different symbolic powers assumes their independence and is
flagged "grouped_radical".
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import HypothesisError, InputError, SearchTooLarge
from .exact_arith import CycNum, as_rat, cyc_embed, lcm, sqrt_rational
from .linalg import ZLattice, congruence_lattice, integer_kernel, lattice_intersection, nearest_point, sup_norm
from .model import EqSystem, exp_value, normalize_alpha, poly_eval
from .structure import SplitSpace, corollary_congruence_lattice, split_space

EXACT = "exact_cyclotomic"
GROUPED = "grouped_radical"
ASSUMPTION_WARNING = ("radical-independence assumption: distinct powers of symbolic generators "
                      "are taken to be linearly independent over the cyclotomic numbers")

DEFAULT_SUBSET_CAP = 20
DEFAULT_GRID_CAP = 1_000_000

MODES = ("exact_only", "allow_grouped")


@dataclass(frozen=True)
class SearchSpec:
    box: Fraction
    denominator: int
    mode: str = "exact_only"
    growth_steps: int = 0

    def __post_init__(self):
        object.__setattr__(self, "box", as_rat(self.box))
        if self.box <= 0:
            raise InputError(f"box must be positive, got {self.box}")
        if int(self.denominator) != self.denominator or self.denominator < 1:
            raise InputError(f"denominator must be a positive integer, got {self.denominator}")
        if self.mode not in MODES:
            raise InputError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.growth_steps < 0:
            raise InputError("growth_steps must be non-negative")


@dataclass(frozen=True)
class TermGrouping:
    """Per-term class keys and cyclotomic coefficients, all in Q(zeta_order)."""

    order: int
    term_keys: tuple[tuple, ...]
    term_coeffs: tuple[CycNum, ...]
    zero_mode: str

    @property
    def groups(self) -> dict[tuple, CycNum]:
        return self.subset_groups(range(len(self.term_keys)))

    def subset_groups(self, indices) -> dict[tuple, CycNum]:
        out: dict[tuple, CycNum] = {}
        for i in indices:
            k = self.term_keys[i]
            out[k] = out[k] + self.term_coeffs[i] if k in out else self.term_coeffs[i]
        return out

    def subset_is_zero(self, indices) -> bool:
        return all(c.is_zero() for c in self.subset_groups(indices).values())

    def is_zero(self) -> bool:
        return self.subset_is_zero(range(len(self.term_keys)))


@dataclass(frozen=True)
class SolutionRecord:
    q: tuple[Fraction, ...]
    status: str                                   # "nondegenerate" | "degenerate"
    witness: tuple[tuple[int, ...], ...] | None   # vanishing blocks, 1-based term indices
    zero_mode: str
    pi_q: tuple[Fraction, ...]
    pi_prime_q: tuple[Fraction, ...]

    @property
    def nondegenerate(self) -> bool:
        return self.status == "nondegenerate"


@dataclass(frozen=True)
class EmpiricalCert:
    N_emp: int
    records: tuple[SolutionRecord, ...]
    box: Fraction | None
    denominator: int | None
    complement: str


@dataclass(frozen=True)
class DistanceRow:
    q: tuple[Fraction, ...]
    nearest: tuple[Fraction, ...]   # m / N
    distance: Fraction              # sup |pi'(q) - m/N|
    log_norm: float                 # log(max(1, |pi'(q)|))


@dataclass(frozen=True)
class TranslateVerdict:
    passed: bool
    cosets: tuple[tuple[int, ...], ...]
    missing: tuple[tuple[int, ...], ...]
    box: Fraction


@dataclass(frozen=True)
class FinitenessReport:
    rows: tuple[tuple[Fraction, int], ...]   # (box, nondegenerate count)
    stabilized: bool
    hypothesis_holds: bool
    relation: tuple[int, ...] | None
    warnings: tuple[str, ...]


# -- evaluation --------------------------------------------------------------

class _Evaluator:
    """Precomputed per-system data for repeated evaluation."""

    def __init__(self, eqsys: EqSystem, mode: str):
        if mode not in MODES:
            raise InputError(f"unknown mode {mode!r}")
        self.eqsys = eqsys
        self.mode = mode
        self.alpha = normalize_alpha(eqsys.alpha)
        gens = eqsys.genset.generators
        self.concrete = [k for k, g in enumerate(gens) if not g.is_symbolic]
        self.symbolic = [k for k, g in enumerate(gens) if g.is_symbolic]
        self.values = [g.value for g in gens]

    def grouping(self, q) -> TermGrouping:
        eqsys = self.eqsys
        raw = []
        order = eqsys.order
        for P, row in zip(eqsys.polys, self.alpha.rows):
            c = poly_eval(P, q)
            gv = exp_value(row, q)
            rational = Fraction(1)
            odd = Fraction(1)
            key = []
            for k in self.concrete:
                e = gv.expvec[k]
                half = Fraction(math.floor(2 * e), 2)
                key.append(e - half)
                whole = math.floor(half)
                rational *= self.values[k] ** whole
                if half != whole:
                    odd *= self.values[k]
            sym = tuple(gv.expvec[k] for k in self.symbolic)
            root = sqrt_rational(odd) if odd != 1 else None
            order = lcm(order, gv.angle.denominator, root.order if root else 1)
            raw.append((c.scale(rational), gv.angle, root, tuple(key) + sym))
        if self.symbolic and len({r[3][len(self.concrete):] for r in raw}) > 1:
            if self.mode == "exact_only":
                raise InputError("requires grouped mode: the verdict depends on symbolic generators")
            zero_mode = GROUPED
        else:
            zero_mode = EXACT
        coeffs = []
        for c, angle, root, _ in raw:
            v = cyc_embed(c, order) * CycNum.zeta(order, int(angle * order))
            if root is not None:
                v = v * cyc_embed(root, order)
            coeffs.append(v)
        return TermGrouping(order, tuple(r[3] for r in raw), tuple(coeffs), zero_mode)


@lru_cache(maxsize=64)
def _evaluator(eqsys: EqSystem, mode: str) -> _Evaluator:
    return _Evaluator(eqsys, mode)


@lru_cache(maxsize=64)
def _split(eqsys: EqSystem) -> SplitSpace:
    return split_space(eqsys)


def evaluate_at(eqsys: EqSystem, q: Sequence, mode: str = "exact_only") -> tuple[TermGrouping, bool, str]:
    """(grouping, is_zero, zero_mode) for the equation at the rational point q."""
    q = tuple(as_rat(x) for x in q)
    if len(q) != eqsys.t:
        raise InputError(f"dimension mismatch: q has {len(q)} coordinates, t = {eqsys.t}")
    g = _evaluator(eqsys, mode).grouping(q)
    return g, g.is_zero(), g.zero_mode


def _finest_partition(grouping: TermGrouping, s: int) -> tuple[tuple[int, ...], ...] | None:
    """Partition into vanishing blocks, or None if no nonempty proper subset vanishes."""
    vanishing = []
    for r in range(1, s):
        for sub in itertools.combinations(range(s), r):
            if grouping.subset_is_zero(sub):
                vanishing.append(sub)
    if not vanishing:
        return None
    remaining = set(range(s))
    blocks = []
    while remaining:
        first = min(remaining)
        block = next((sub for sub in vanishing if first in sub and remaining.issuperset(sub)),
                     tuple(sorted(remaining)))
        blocks.append(tuple(i + 1 for i in block))
        remaining -= set(block)
    return tuple(blocks)


def classify(eqsys: EqSystem, q: Sequence, mode: str = "exact_only",
             subset_cap: int = DEFAULT_SUBSET_CAP) -> SolutionRecord | None:
    """Classify q as a nondegenerate or degenerate solution; None if q is not a solution."""
    if eqsys.s > subset_cap:
        raise InputError(f"subset explosion: s = {eqsys.s} exceeds the cap {subset_cap}")
    q = tuple(as_rat(x) for x in q)
    grouping, zero, zero_mode = evaluate_at(eqsys, q, mode)
    if not zero:
        return None
    witness = _finest_partition(grouping, eqsys.s)
    pi_q, pi_prime_q = _split(eqsys).project(q)
    return SolutionRecord(q, "degenerate" if witness else "nondegenerate", witness, zero_mode, pi_q, pi_prime_q)


# -- search ------------------------------------------------------------------

def grid_axis(box: Fraction, denominator: int) -> list[Fraction]:
    K = math.floor(as_rat(box) * denominator)
    return [Fraction(k, denominator) for k in range(-K, K + 1)]


def grid_size(eqsys: EqSystem, spec: SearchSpec) -> int:
    return len(grid_axis(spec.box, spec.denominator)) ** eqsys.t


def _search_chunk(args) -> list[SolutionRecord]:
    eqsys, mode, first_values, axis = args
    out = []
    for x0 in first_values:
        for rest in itertools.product(axis, repeat=eqsys.t - 1):
            rec = classify(eqsys, (x0,) + rest, mode)
            if rec is not None:
                out.append(rec)
    return out


def search_box(eqsys: EqSystem, spec: SearchSpec, jobs: int = 1,
               grid_cap: int = DEFAULT_GRID_CAP) -> list[SolutionRecord]:
    """All solutions q in (1/D)Z^t with |q| <= B, classified, in lexicographic order.

    With ``jobs > 1`` the grid is split by first coordinate across processes;
    the merged output does not depend on scheduling.
    """
    axis = grid_axis(spec.box, spec.denominator)
    size = len(axis) ** eqsys.t
    if size > grid_cap:
        raise SearchTooLarge(size, grid_cap)
    if jobs <= 1 or len(axis) < 2:
        return _search_chunk((eqsys, spec.mode, axis, axis))
    n = min(jobs, len(axis))
    chunks = [axis[i::n] for i in range(n)]
    with ProcessPoolExecutor(max_workers=n) as pool:
        parts = list(pool.map(_search_chunk, [(eqsys, spec.mode, c, axis) for c in chunks]))
    return sorted((r for part in parts for r in part), key=lambda r: r.q)


# -- certificates and monitors -----------------------------------------------

def empirical_denominator(records: Sequence[SolutionRecord], split: SplitSpace,
                          box=None, denominator: int | None = None) -> EmpiricalCert:
    """N_emp = lcm of the denominators of pi'(q) over the nondegenerate records."""
    N = 1
    for r in records:
        if r.nondegenerate:
            for x in split.pi_prime(r.q):
                N = lcm(N, x.denominator)
    return EmpiricalCert(N, tuple(records), None if box is None else as_rat(box), denominator,
                         split.fingerprint)


def distance_report(records: Sequence[SolutionRecord], L: ZLattice, N: int) -> list[DistanceRow]:
    """Distance from pi'(q) to the nearest point of L/N for each nondegenerate record."""
    rows = []
    for r in records:
        if not r.nondegenerate:
            continue
        target = [N * x for x in r.pi_prime_q]
        m, d = nearest_point(L, target)
        norm = sup_norm(r.pi_prime_q)
        rows.append(DistanceRow(r.q, tuple(Fraction(x, N) for x in m), d / N,
                                math.log(max(Fraction(1), norm))))
    return rows


def translate_check(eqsys: EqSystem, records: Sequence[SolutionRecord], H: ZLattice, box) -> TranslateVerdict:
    """Every H-coset met by an integer nondegenerate solution is fully solved inside the box.

    Only meaningful for constant polynomials; otherwise refuses.
    """
    if not eqsys.all_constant():
        raise HypothesisError("theorem hypothesis violated: translate check needs constant polynomials")
    box = as_rat(box)
    sols = {tuple(int(x) for x in r.q) for r in records
            if r.nondegenerate and all(x.denominator == 1 for x in r.q) and sup_norm(r.q) <= box}
    reps = sorted({H.reduce(n) for n in sols})
    rep_set = set(reps)
    K = math.floor(box)
    missing = []
    for pt in itertools.product(range(-K, K + 1), repeat=eqsys.t):
        if pt not in sols and H.reduce(pt) in rep_set:
            missing.append(pt)
    return TranslateVerdict(not missing, tuple(tuple(int(x) for x in r) for r in reps),
                            tuple(missing), box)


def beta_relations(eqsys: EqSystem) -> ZLattice:
    """Integer relations among the distinct nontrivial values beta_ij = exp(alpha_ij)."""
    betas = sorted({(c.rho - math.floor(c.rho), c.logs) for row in eqsys.alpha.rows for c in row
                    if not (c.rho.denominator == 1 and not any(c.logs))})
    n = len(betas)
    if not n:
        return ZLattice.zero(0)
    log_rows = [[b[1][k] for b in betas] for k in range(eqsys.m)]
    rho_row = [[b[0] for b in betas]]
    return lattice_intersection(integer_kernel(log_rows, n), congruence_lattice(rho_row, [1], n))


def finiteness_monitor(eqsys: EqSystem, spec: SearchSpec, jobs: int = 1) -> FinitenessReport:
    """Nondegenerate solution counts on boxes B, 2B, ..., 2^k B at fixed denominator.

    A stable count is evidence of finiteness, not a proof.
    """
    if not eqsys.genset.concrete:
        raise HypothesisError("theorem hypothesis violated: finiteness monitor needs concrete generators")
    warnings = ["a stabilized count is empirical evidence of finiteness, not a proof"]
    rel_lattice = beta_relations(eqsys)
    relation = rel_lattice.basis[0] if rel_lattice.rank else None
    if relation is not None:
        warnings.append("hypothesis fails: the nontrivial beta values are multiplicatively dependent "
                        f"(relation {list(relation)})")
    rows = []
    for k in range(spec.growth_steps + 1):
        box = spec.box * 2 ** k
        recs = search_box(eqsys, SearchSpec(box, spec.denominator, spec.mode), jobs)
        rows.append((box, sum(1 for r in recs if r.nondegenerate)))
    stabilized = len(rows) >= 2 and rows[-1][1] == rows[-2][1]
    return FinitenessReport(tuple(rows), stabilized, relation is None, relation, tuple(warnings))


@dataclass(frozen=True)
class VerifyReport:
    records: tuple[SolutionRecord, ...]
    cert: EmpiricalCert
    lattice: ZLattice
    distances: tuple[DistanceRow, ...]
    growth: tuple[tuple[Fraction, int], ...]          # (box, N_emp)
    denominator_sweep: tuple[tuple[int, int], ...]    # (divisor d, N_emp on (1/d)Z^t)
    warnings: tuple[str, ...]

    @property
    def stable(self) -> bool:
        return len({n for _, n in self.growth}) <= 1


def verify_system(eqsys: EqSystem, spec: SearchSpec, jobs: int = 1) -> VerifyReport:
    """Search, classify, certify N_emp, and measure distances to the congruence lattice."""
    split = _split(eqsys)
    records = search_box(eqsys, spec, jobs)
    cert = empirical_denominator(records, split, spec.box, spec.denominator)
    L = corollary_congruence_lattice(eqsys, cert.N_emp)
    distances = distance_report(records, L, cert.N_emp)
    growth = [(spec.box, cert.N_emp)]
    for k in range(1, spec.growth_steps + 1):
        box = spec.box * 2 ** k
        recs = search_box(eqsys, SearchSpec(box, spec.denominator, spec.mode), jobs)
        growth.append((box, empirical_denominator(recs, split).N_emp))
    sweep = []
    for d in range(1, spec.denominator + 1):
        if spec.denominator % d == 0:
            sub = [r for r in records if all((x * d).denominator == 1 for x in r.q)]
            sweep.append((d, empirical_denominator(sub, split).N_emp))
    warnings = []
    if any(r.zero_mode == GROUPED for r in records):
        warnings.append(ASSUMPTION_WARNING)
    return VerifyReport(tuple(records), cert, L, tuple(distances), tuple(growth), tuple(sweep),
                        tuple(warnings))
