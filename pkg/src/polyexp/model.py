"""Equation instances: generators, log-rational exponents and cyclotomic polynomials.

An exponent alpha is encoded as ``2*pi*i*rho + sum_m logs[m] * log(g_m)``
with rational ``rho`` and ``logs``; the g_m are multiplicatively independent
positive rationals or free symbols. Under that restriction exp(q . alpha_i)
is computed exactly as a :class:`GroupVal`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import factorint

from .errors import InputError
from .exact_arith import CycNum, as_rat, cyc_embed, lcm, rat_str
from .linalg import integer_kernel


class DependentGenerators(InputError):
    """Concrete generators satisfy a multiplicative relation."""

    def __init__(self, names, relation):
        rel = ", ".join(str(e) for e in relation)
        super().__init__(f"generators {tuple(names)} are multiplicatively dependent: relation ({rel})")
        self.relation = tuple(relation)


@dataclass(frozen=True)
class Generator:
    name: str
    value: Fraction | None = None

    @property
    def is_symbolic(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class GenSet:
    generators: tuple[Generator, ...]
    independence_status: str  # "verified" | "assumed" | "refuted"
    relation: tuple[int, ...] | None = None

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def concrete(self) -> bool:
        return all(not g.is_symbolic for g in self.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class LogCoord:
    """alpha = 2*pi*i*rho + sum(logs[m] * log g_m)."""

    rho: Fraction
    logs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "rho", as_rat(self.rho))
        object.__setattr__(self, "logs", tuple(as_rat(c) for c in self.logs))

    def __sub__(self, other: "LogCoord") -> "LogCoord":
        return LogCoord(self.rho - other.rho, tuple(a - b for a, b in zip(self.logs, other.logs)))

    def is_zero(self) -> bool:
        return self.rho == 0 and not any(self.logs)


@dataclass(frozen=True)
class AlphaMatrix:
    rows: tuple[tuple[LogCoord, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows or not rows[0]:
            raise InputError("dimension mismatch: alpha needs s >= 1 rows and t >= 1 columns")
        t = len(rows[0])
        if any(len(r) != t for r in rows):
            raise InputError("dimension mismatch: alpha rows have different lengths")
        m = len(rows[0][0].logs)
        if any(len(c.logs) != m for r in rows for c in r):
            raise InputError("dimension mismatch: log coordinates have different lengths")
        object.__setattr__(self, "rows", rows)

    @property
    def s(self) -> int:
        return len(self.rows)

    @property
    def t(self) -> int:
        return len(self.rows[0])

    @property
    def m(self) -> int:
        return len(self.rows[0][0].logs)

    def __getitem__(self, i):
        return self.rows[i]


@dataclass(frozen=True)
class CycPolyMV:
    """Multivariate polynomial with coefficients in Q(zeta_order)."""

    order: int
    monomials: tuple[tuple[tuple[int, ...], CycNum], ...]

    @classmethod
    def from_terms(cls, terms, nvars: int, order: int = 1) -> "CycPolyMV":
        """Build from a mapping or (exponents, coeff) pairs; coeffs may be rationals or CycNums."""
        items = list(terms.items() if isinstance(terms, Mapping) else terms)
        parsed = []
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise InputError(f"dimension mismatch: exponent vector {exps} for {nvars} variables")
            if not isinstance(c, CycNum):
                c = CycNum.from_rational(as_rat(c), 1)
            order = lcm(order, c.order)
            parsed.append((exps, c))
        acc: dict[tuple[int, ...], CycNum] = {}
        for exps, c in parsed:
            c = cyc_embed(c, order)
            acc[exps] = acc[exps] + c if exps in acc else c
        return cls(order, tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero())))

    @classmethod
    def constant(cls, c, nvars: int, order: int = 1) -> "CycPolyMV":
        return cls.from_terms({(0,) * nvars: c}, nvars, order)

    @property
    def nvars(self) -> int | None:
        return len(self.monomials[0][0]) if self.monomials else None

    def is_zero(self) -> bool:
        return not self.monomials

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.monomials)

    def embed(self, order: int) -> "CycPolyMV":
        if order == self.order:
            return self
        return CycPolyMV(order, tuple((e, cyc_embed(c, order)) for e, c in self.monomials))

    def __add__(self, other: "CycPolyMV") -> "CycPolyMV":
        L = lcm(self.order, other.order)
        acc = dict(self.embed(L).monomials)
        for e, c in other.embed(L).monomials:
            acc[e] = acc[e] + c if e in acc else c
        return CycPolyMV(L, tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero())))

    def scale(self, c: CycNum) -> "CycPolyMV":
        L = lcm(self.order, c.order)
        c = cyc_embed(c, L)
        return CycPolyMV(L, tuple((e, m * c) for e, m in self.embed(L).monomials if not (m * c).is_zero()))

    def __call__(self, q) -> CycNum:
        return poly_eval(self, q)

    def __str__(self):
        if not self.monomials:
            return "0"
        parts = []
        for e, c in self.monomials:
            mon = "*".join(f"X{j + 1}" + (f"^{k}" if k > 1 else "") for j, k in enumerate(e) if k)
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


@dataclass(frozen=True)
class GroupVal:
    """exp(2*pi*i*angle) * prod(g_m ** expvec[m]); angle kept in [0, 1)."""

    angle: Fraction
    expvec: tuple[Fraction, ...]

    def __post_init__(self):
        a = as_rat(self.angle)
        object.__setattr__(self, "angle", a - math.floor(a))
        object.__setattr__(self, "expvec", tuple(as_rat(x) for x in self.expvec))

    @classmethod
    def one(cls, m: int) -> "GroupVal":
        return cls(Fraction(0), (Fraction(0),) * m)

    def __mul__(self, other: "GroupVal") -> "GroupVal":
        return GroupVal(self.angle + other.angle, tuple(a + b for a, b in zip(self.expvec, other.expvec)))

    def __pow__(self, n) -> "GroupVal":
        n = as_rat(n)
        return GroupVal(self.angle * n, tuple(x * n for x in self.expvec))

    def inverse(self) -> "GroupVal":
        return self ** -1

    def is_one(self) -> bool:
        return self.angle == 0 and not any(self.expvec)

    def __str__(self):
        parts = []
        if self.angle:
            parts.append(f"exp(2*pi*i*{rat_str(self.angle)})")
        parts += [f"g{m + 1}^{rat_str(e)}" for m, e in enumerate(self.expvec) if e]
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class EqSystem:
    """sum_i P_i(X) * exp(X . alpha_i) = 0 over a validated generator set."""

    genset: GenSet
    alpha: AlphaMatrix
    polys: tuple[CycPolyMV, ...]
    name: str = ""
    description: str = ""

    @property
    def s(self) -> int:
        return self.alpha.s

    @property
    def t(self) -> int:
        return self.alpha.t

    @property
    def m(self) -> int:
        return self.alpha.m

    @property
    def order(self) -> int:
        return self.polys[0].order

    def all_constant(self) -> bool:
        return all(P.is_constant() for P in self.polys)


# -- operations --------------------------------------------------------------

def _prime_exponents(value: Fraction) -> dict[int, int]:
    exps = dict(factorint(value.numerator))
    for p, e in factorint(value.denominator).items():
        exps[p] = exps.get(p, 0) - e
    exps.pop(1, None)
    return exps


def mult_independent(values: Sequence) -> tuple[int, ...] | None:
    """None if the positive rationals are multiplicatively independent, else a relation.

    A relation is a nonzero integer vector e with prod(values[i] ** e[i]) == 1;
    it is the first vector of the HNF basis of the relation lattice.

    >>> mult_independent([4, 8])
    (3, -2)
    """
    vals = [as_rat(v) for v in values]
    for i, v in enumerate(vals):
        if v <= 0:
            raise InputError(f"generator values must be positive, got {v}")
        if v == 1:
            rel = [0] * len(vals)
            rel[i] = 1
            return tuple(rel)
    facts = [_prime_exponents(v) for v in vals]
    primes = sorted(set().union(*facts)) if facts else []
    matrix = [[f.get(p, 0) for f in facts] for p in primes]
    K = integer_kernel(matrix, len(vals))
    return K.basis[0] if K.rank else None


def make_genset(generators: Iterable) -> GenSet:
    """Validate generators given as Generator objects or (name, value-or-None) pairs."""
    gens = []
    for g in generators:
        if not isinstance(g, Generator):
            name, value = g if isinstance(g, (tuple, list)) else (g, None)
            g = Generator(str(name), None if value is None else as_rat(value))
        gens.append(g)
    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise InputError(f"generator names must be unique: {names}")
    concrete = [g for g in gens if not g.is_symbolic]
    for g in concrete:
        if g.value <= 0 or g.value == 1:
            raise InputError(f"generator {g.name} must be a positive rational other than 1, got {g.value}")
    rel = mult_independent([g.value for g in concrete]) if concrete else None
    if rel is not None:
        raise DependentGenerators([g.name for g in concrete], rel)
    status = "verified" if len(concrete) == len(gens) else "assumed"
    return GenSet(tuple(gens), status)


def validate_system(generators, alpha, polys, *, name: str = "", description: str = "") -> EqSystem:
    """Check dimensions and generators and bring all polynomials to one cyclotomic order."""
    genset = generators if isinstance(generators, GenSet) else make_genset(generators)
    if not isinstance(alpha, AlphaMatrix):
        alpha = AlphaMatrix(tuple(tuple(c if isinstance(c, LogCoord) else LogCoord(*c) for c in row)
                                  for row in alpha))
    polys = list(polys)
    if len(polys) != alpha.s:
        raise InputError(f"dimension mismatch: {len(polys)} polynomials for {alpha.s} alpha rows")
    if alpha.m != len(genset):
        raise InputError(f"dimension mismatch: log coordinates have length {alpha.m}, "
                         f"{len(genset)} generators declared")
    for P in polys:
        if P.nvars is not None and P.nvars != alpha.t:
            raise InputError(f"dimension mismatch: polynomial in {P.nvars} variables, t = {alpha.t}")
    M = lcm(*(P.order for P in polys))
    return EqSystem(genset, alpha, tuple(P.embed(M) for P in polys), name, description)


def system(generators, terms, order: int = 1, **meta) -> EqSystem:
    """Convenience builder.

    ``terms`` is a list of ``(poly, alpha_row)``; ``poly`` maps exponent tuples
    to coefficients (or is a bare constant), ``alpha_row`` lists ``(rho, logs)``.
    """
    alpha_rows, polys = [], []
    t = len(terms[0][1])
    for poly, row in terms:
        alpha_rows.append(tuple(LogCoord(rho, tuple(logs)) for rho, logs in row))
        if not isinstance(poly, (Mapping, CycPolyMV)):
            poly = {(0,) * t: poly}
        polys.append(poly if isinstance(poly, CycPolyMV) else CycPolyMV.from_terms(poly, t, order))
    return validate_system(generators, AlphaMatrix(tuple(alpha_rows)), polys, **meta)


def normalize_alpha(alpha: AlphaMatrix) -> AlphaMatrix:
    """Subtract the first row from every row (first row becomes zero)."""
    first = alpha.rows[0]
    return AlphaMatrix(tuple(tuple(c - f for c, f in zip(row, first)) for row in alpha.rows))


def exp_value(alpha_row: Sequence[LogCoord], q: Sequence) -> GroupVal:
    """exp(q . alpha_row) as an exact GroupVal."""
    if len(alpha_row) != len(q):
        raise InputError("dimension mismatch between alpha row and q")
    m = len(alpha_row[0].logs) if alpha_row else 0
    angle = sum((Fraction(qj) * c.rho for qj, c in zip(q, alpha_row)), Fraction(0))
    expvec = [Fraction(0)] * m
    for qj, c in zip(q, alpha_row):
        if qj:
            for k, x in enumerate(c.logs):
                expvec[k] += qj * x
    return GroupVal(angle, tuple(expvec))


def poly_eval(P: CycPolyMV, q: Sequence) -> CycNum:
    """P(q) for rational q, exact, in Q(zeta_order)."""
    q = [as_rat(x) for x in q]
    if P.nvars is not None and len(q) != P.nvars:
        raise InputError(f"dimension mismatch: {len(q)} values for {P.nvars} variables")
    total = CycNum.zero(P.order)
    for exps, c in P.monomials:
        v = Fraction(1)
        for x, e in zip(q, exps):
            if e:
                v *= x ** e
        if v:
            total = total + c.scale(v)
    return total


def radical_member(x: GroupVal, generators: Sequence[GroupVal]) -> tuple[bool, int | None]:
    """Is some power x**n (n >= 1) in the group generated by ``generators``?

    Returns ``(True, n)`` with the least such n, or ``(False, None)``. The
    admissible n form a subgroup of Z: the projection onto the n-coordinate of
    the integer solutions (n, a, z) of
    n*expvec(x) = sum a_k expvec(g_k) and n*angle(x) = sum a_k angle(g_k) + z.
    """
    m = len(x.expvec)
    if any(len(g.expvec) != m for g in generators):
        raise InputError("dimension mismatch between group values")
    K = len(generators)
    rows = []
    for j in range(m):
        rows.append([x.expvec[j]] + [-g.expvec[j] for g in generators] + [Fraction(0)])
    rows.append([x.angle] + [-g.angle for g in generators] + [Fraction(-1)])
    L = integer_kernel(rows, K + 2)
    n = 0
    for v in L.basis:
        n = math.gcd(n, v[0])
    return (True, n) if n else (False, None)
