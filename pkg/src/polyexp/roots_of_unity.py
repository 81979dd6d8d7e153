"""Order bounds for roots of unity in minimal vanishing sums, and a brute-force oracle.

For a minimal relation a_0 + sum_{j=1..k} a_j zeta^{n_j} = 0 with zeta of
order Q, gcd(Q, n_1, ..., n_k) = 1 and coefficients in a number field F with
delta = [F cap Q(zeta) : Q], the order satisfies

* p^(n+1) | Q  implies  p^n | 2*delta, and
* sum over primes p exactly dividing Q of ((p-1)/gcd(delta, p-1) - 1) <= k - 1.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint, isprime, primerange

from .errors import InputError
from .exact_arith import CycNum, as_rat
from .model import EqSystem


@dataclass(frozen=True)
class DZParams:
    k: int
    delta: int = 1

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise InputError(f"k must be a positive integer, got {self.k}")
        if int(self.delta) != self.delta or self.delta < 1:
            raise InputError(f"delta must be a positive integer, got {self.delta}")


@dataclass(frozen=True)
class PrimeCheck:
    prime: int
    exponent: int
    divisibility_ok: bool  # p^(e-1) | 2*delta (vacuous when e == 1)
    contribution: int      # (p-1)/gcd(delta, p-1) - 1 when e == 1, else 0


@dataclass(frozen=True)
class DZCheck:
    order: int
    params: DZParams
    primes: tuple[PrimeCheck, ...]
    prime_sum: int

    @property
    def divisibility_ok(self) -> bool:
        return all(p.divisibility_ok for p in self.primes)

    @property
    def sum_ok(self) -> bool:
        return self.prime_sum <= self.params.k - 1

    @property
    def feasible(self) -> bool:
        return self.divisibility_ok and self.sum_ok

    def __bool__(self):
        return self.feasible


def dz_feasible(Q: int, params: DZParams | int, delta: int = 1) -> DZCheck:
    """Check both constraints for order Q; truthy iff Q is admissible."""
    if not isinstance(params, DZParams):
        params = DZParams(params, delta)
    if Q < 1:
        raise InputError(f"Q must be positive, got {Q}")
    checks = []
    total = 0
    for p, e in sorted(factorint(Q).items()):
        ok = e == 1 or (2 * params.delta) % p ** (e - 1) == 0
        contrib = (p - 1) // math.gcd(params.delta, p - 1) - 1 if e == 1 else 0
        total += contrib
        checks.append(PrimeCheck(p, e, ok, contrib))
    return DZCheck(Q, params, tuple(checks), total)


def _order_cap(params: DZParams) -> dict[int, int]:
    """Per-prime exponent caps; every admissible Q divides prod(p**cap)."""
    two_delta = factorint(2 * params.delta)
    # a prime exactly dividing Q contributes at least (p-1)/delta - 1
    p_max = max(params.k * params.delta + 1, max(two_delta))
    caps = {}
    for p in primerange(2, p_max + 1):
        caps[p] = two_delta.get(p, 0) + 1
    for p, e in two_delta.items():
        caps[p] = e + 1
    return caps


def dz_order_bound(params: DZParams | int, delta: int = 1) -> tuple[int, list[int]]:
    """(T, admissible orders): T is the largest Q passing :func:`dz_feasible`."""
    if not isinstance(params, DZParams):
        params = DZParams(params, delta)
    budget = params.k - 1
    # admissible (exponent, contribution) choices per prime; both constraints are per-prime
    options = []
    for p, cap in sorted(_order_cap(params).items()):
        opts = [(0, 0)]
        for e in range(1, cap + 1):
            if e == 1:
                c = (p - 1) // math.gcd(params.delta, p - 1) - 1
                if c <= budget:
                    opts.append((1, c))
            elif (2 * params.delta) % p ** (e - 1) == 0:
                opts.append((e, 0))
        options.append((p, opts))

    feasible = []

    def walk(i, Q, used):
        if i == len(options):
            feasible.append(Q)
            return
        p, opts = options[i]
        for e, c in opts:
            if used + c <= budget:
                walk(i + 1, Q * p ** e, used + c)

    walk(0, 1, 0)
    feasible.sort()
    return feasible[-1], feasible


def system_order_bound(eqsys: EqSystem, delta: int = 1) -> int:
    """Order bound for the roots of unity in a relation among the s terms of a system."""
    if eqsys.s < 2:
        return 1
    return dz_order_bound(DZParams(eqsys.s - 1, delta))[0]


# -- vanishing sums ----------------------------------------------------------

@dataclass(frozen=True, order=True)
class VanishingSum:
    """sum_j coefficients[j] * zeta_order ** exponents[j] == 0, minimal, exponents[0] == 0."""

    order: int
    exponents: tuple[int, ...]
    coefficients: tuple[Fraction, ...] = field(compare=True)

    @property
    def k(self) -> int:
        return len(self.exponents) - 1

    def value(self) -> CycNum:
        return subset_value(self, range(len(self.exponents)))


def subset_value(vs: VanishingSum, indices: Iterable[int]) -> CycNum:
    terms = {}
    for i in indices:
        e = vs.exponents[i]
        terms[e] = terms.get(e, 0) + vs.coefficients[i]
    return CycNum.from_exponents(terms, vs.order)


def is_minimal(vs: VanishingSum) -> bool:
    """No nonempty proper subset of the terms sums to zero."""
    n = len(vs.exponents)
    for r in range(1, n):
        for sub in itertools.combinations(range(n), r):
            if subset_value(vs, sub).is_zero():
                return False
    return True


def _modular_root(Q: int) -> tuple[int, int]:
    """A prime p = 1 (mod Q), p < 2**31, and an element of exact order Q mod p."""
    p = (2 ** 30 // Q) * Q + 1
    while p < 2 ** 31:
        if isprime(p):
            qf = list(factorint(Q))
            for g in range(2, 200):
                w = pow(g, (p - 1) // Q, p)
                if all(pow(w, Q // r, p) != 1 for r in qf):
                    return p, w
        p += Q
    raise InputError(f"no suitable prime for order {Q}")  # pragma: no cover


def _galois_canonical(vs: VanishingSum) -> VanishingSum:
    best = None
    for a in range(1, vs.order):
        if math.gcd(a, vs.order) != 1:
            continue
        pairs = sorted(((a * e) % vs.order, c) for e, c in zip(vs.exponents, vs.coefficients))
        cand = VanishingSum(vs.order, tuple(e for e, _ in pairs), tuple(c for _, c in pairs))
        if best is None or cand < best:
            best = cand
    return best if best is not None else vs


def enumerate_vanishing_sums(max_terms: int, max_order: int, coefficients: Sequence = (1,),
                             dedupe_galois: bool = False) -> list[VanishingSum]:
    """All minimal vanishing sums with at most ``max_terms`` terms and order <= ``max_order``.

    Exponent sets contain 0 and satisfy gcd(Q, n_1, ..., n_k) = 1; coefficients
    range over the given finite set (zeros ignored). Candidates are screened by
    reducing zeta_Q to an element of order Q modulo a prime p = 1 (mod Q),
    a ring map, so no vanishing sum is dropped; survivors are confirmed by the
    canonical cyclotomic zero test and the full subset-minimality check.
    """
    if max_terms < 2:
        raise InputError("max_terms must be at least 2")
    coeffs = sorted({as_rat(c) for c in coefficients} - {Fraction(0)})
    if not coeffs:
        raise InputError("coefficient set has no nonzero element")
    found = []
    combos_by_k = {k: np.array(list(itertools.combinations(range(1, max_order), k)), dtype=np.int64)
                   .reshape(-1, k) for k in range(1, max_terms)}
    for Q in range(2, max_order + 1):
        p, w = _modular_root(Q)
        powers = np.array([pow(w, n, p) for n in range(Q)], dtype=np.int64)
        residues = [c.numerator % p * pow(c.denominator, -1, p) % p for c in coeffs]
        for k in range(1, min(max_terms - 1, Q - 1) + 1):
            combos = combos_by_k[k]
            combos = combos[combos[:, -1] < Q]
            g = np.gcd.reduce(combos, axis=1)
            combos = combos[np.gcd(g, Q) == 1]
            if not len(combos):
                continue
            vals = powers[combos]
            scaled = [[(r * vals[:, j]) % p for j in range(k)] for r in residues]
            for assign in itertools.product(range(len(coeffs)), repeat=k + 1):
                acc = np.full(len(combos), residues[assign[0]], dtype=np.int64)
                for j in range(k):
                    acc += scaled[assign[j + 1]][j]
                hits = np.nonzero(acc % p == 0)[0]
                for h in hits:
                    vs = VanishingSum(Q, (0,) + tuple(int(x) for x in combos[h]),
                                      tuple(coeffs[a] for a in assign))
                    if vs.value().is_zero() and is_minimal(vs):
                        found.append(vs)
    if dedupe_galois:
        found = sorted({_galois_canonical(vs) for vs in found})
    return sorted(found)
