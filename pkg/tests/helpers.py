"""Reference systems and independent oracles shared by the test modules.

The oracles deliberately avoid the package's own algorithms: determinants by
permutation expansion, lattice membership by a separate Fraction solver,
numerics by mpmath, divisibility checks by trial division.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction as F
from pathlib import Path

import mpmath

from polyexp import CycNum, CycPolyMV, PolyTuple, system
from polyexp.model import EqSystem

DEMO_PROBLEMS = Path(__file__).resolve().parent.parent / "demos" / "problems"


# -- reference systems -------------------------------------------------------

def four_pow_x_minus_2() -> EqSystem:
    return system([("g1", 2)], [(1, [(0, [2])]), (-2, [(0, [0])])], name="4^x - 2")


def minus_one_pow_x_plus_1() -> EqSystem:
    return system([], [(1, [(F(1, 2), [])]), (1, [(0, [])])], name="exp(pi i x) + 1")


def two_x_three_y() -> EqSystem:
    return system([("g1", 2), ("g2", 3)],
                  [(1, [(0, [1, 0]), (0, [0, 1])]), (-6, [(0, [0, 0]), (0, [0, 0])])], name="2^x 3^y - 6")


def symmetric_logs() -> EqSystem:
    return system([("g1", 2), ("g2", 3)],
                  [(1, [(0, [1, 0]), (0, [0, 1])]), (-1, [(0, [0, 1]), (0, [1, 0])])], name="symmetric")


def cancellation() -> EqSystem:
    return system([("g1", 2)], [(1, [(0, [1])]), (-1, [(0, [1])]), (1, [(0, [0])]), (-1, [(0, [0])])],
                  name="cancellation")


# -- oracles -----------------------------------------------------------------

def leibniz_det(matrix):
    """Determinant by the permutation expansion; works for any ring elements."""
    n = len(matrix)
    total = None
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = matrix[0][perm[0]]
        for i in range(1, n):
            term = term * matrix[i][perm[i]]
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


def fraction_solve(rows, rhs):
    """Solve x . rows = rhs over Q (rows are generators); None if inconsistent.

    Plain Gauss-Jordan on the transposed system, independent of the package.
    """
    n, d = len(rows), len(rhs)
    aug = [[F(rows[j][i]) for j in range(n)] + [F(rhs[i])] for i in range(d)]
    piv_cols, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, d) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(d):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in aug):
        return None
    x = [F(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][n]
    return x


def in_lattice(basis, v) -> bool:
    """Membership for a lattice given by linearly independent integer generators."""
    if not basis:
        return all(x == 0 for x in v)
    x = fraction_solve(basis, v)
    return x is not None and all(c.denominator == 1 for c in x)


def membership_oracle(basis):
    """Fast integer membership test: Cramer's rule on a nonsingular column minor."""
    r = len(basis)
    if r == 0:
        return lambda p: not any(p)
    d = len(basis[0])
    for cols in itertools.combinations(range(d), r):
        sub = [[row[c] for c in cols] for row in basis]
        D = leibniz_det(sub)
        if D:
            break
    # adj[i][j] = (-1)^(i+j) * minor_ji, so x = p_S . adj / D solves x . sub = p_S
    adj = [[(-1) ** (i + j) * (leibniz_det([[sub[a][b] for b in range(r) if b != i]
                                              for a in range(r) if a != j]) if r > 1 else 1)
            for j in range(r)] for i in range(r)]

    def member(p):
        ps = [p[c] for c in cols]
        y = [sum(ps[i] * adj[i][j] for i in range(r)) for j in range(r)]
        if any(v % D for v in y):
            return False
        x = [v // D for v in y]
        return all(sum(x[i] * basis[i][k] for i in range(r)) == p[k] for k in range(d))

    return member


def brute_nearest(basis, target, radius=None):
    """Minimum sup distance from target to the lattice, by scanning integer points.

    ``radius`` must be an upper bound for the distance (the origin gives one).
    """
    target = [F(t) for t in target]
    best = max(abs(t) for t in target) if radius is None else F(radius)
    scale = math.lcm(*(t.denominator for t in target), best.denominator)
    T = [int(t * scale) for t in target]
    best_s = int(best * scale)
    member = membership_oracle(basis)
    lo = [math.floor(t - best) for t in target]
    hi = [math.ceil(t + best) for t in target]
    for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        dist = max(abs(x * scale - t) for x, t in zip(p, T))
        if dist < best_s and member(p):
            best_s = dist
    return F(best_s, scale)


def prime_factors(n: int) -> dict[int, int]:
    """Trial division."""
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def constraints_hold(Q: int, k: int, delta: int) -> bool:
    """Direct reading of the divisibility and prime-sum constraints."""
    f = prime_factors(Q)
    for p, e in f.items():
        if e >= 2 and (2 * delta) % p ** (e - 1):
            return False
    return sum((p - 1) // math.gcd(delta, p - 1) - 1 for p, e in f.items() if e == 1) <= k - 1


def numeric_value(eqsys: EqSystem, q, dps: int = 50, symbolic=None):
    """sum_i P_i(q) exp(q . alpha_i) in mpmath at ``dps`` digits.

    ``symbolic`` maps names of symbolic generators to stand-in real values.
    """
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        logs = [mpmath.log(mpmath.mpf(symbolic[g.name]) if g.is_symbolic
                           else mpmath.mpf(g.value.numerator) / g.value.denominator)
                for g in eqsys.genset.generators]
        for P, row in zip(eqsys.polys, eqsys.alpha.rows):
            coeff = mpmath.mpc(0)
            for exps, c in P.monomials:
                mono = mpmath.mpf(1)
                for x, e in zip(q, exps):
                    mono *= (mpmath.mpf(F(x).numerator) / F(x).denominator) ** e
                coeff += cyc_to_mp(c) * mono
            expo = mpmath.mpc(0)
            for x, a in zip(q, row):
                xv = mpmath.mpf(F(x).numerator) / F(x).denominator
                expo += xv * (2j * mpmath.pi * (mpmath.mpf(a.rho.numerator) / a.rho.denominator)
                              + sum((mpmath.mpf(c.numerator) / c.denominator) * L for c, L in zip(a.logs, logs)))
            total += coeff * mpmath.exp(expo)
        return total


def cyc_to_mp(c: CycNum):
    z = mpmath.exp(2j * mpmath.pi / c.order)
    return sum((mpmath.mpf(a.numerator) / a.denominator) * z ** j for j, a in enumerate(c.coeffs))


# -- random generators -------------------------------------------------------

def random_cyc(rng, M: int, span: int = 3) -> CycNum:
    return CycNum.from_exponents({j: rng.randint(-span, span) for j in range(M)}, M)


def random_poly(rng, nvars: int, M: int, max_terms: int = 3, max_deg: int = 2):
    terms = [(tuple(rng.randint(0, max_deg) for _ in range(nvars)), random_cyc(rng, M))
             for _ in range(rng.randint(1, max_terms))]
    return CycPolyMV.from_terms(terms, nvars, M)


def random_poly_tuple(rng, max_vars: int = 3, max_len: int = 4, max_order: int = 6):
    """Random tuple; sometimes the last entry is a combination of the others."""
    nvars = rng.randint(1, max_vars)
    M = rng.randint(1, max_order)
    n = rng.randint(1, max_len)
    entries = []
    while len(entries) < n:
        P = random_poly(rng, nvars, M)
        if not P.is_zero():
            entries.append(P)
    if n >= 3 and rng.random() < 0.3:
        comb = entries[0].scale(random_cyc(rng, M)) + entries[1].scale(random_cyc(rng, M))
        if not comb.is_zero():
            entries[-1] = comb
    return PolyTuple(tuple(f"u{j}" for j in range(nvars)), tuple(e.embed(M) for e in entries))
