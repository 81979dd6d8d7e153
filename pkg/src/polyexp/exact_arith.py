"""Exact rational and cyclotomic-field arithmetic.

Rationals are plain :class:`fractions.Fraction` values. Elements of the
cyclotomic field Q(zeta_M) are stored as their canonical residue modulo the
cyclotomic polynomial Phi_M in the power basis 1, zeta, ..., zeta^(phi(M)-1),
so equality and zero testing are coefficient-wise.

zeta_M always denotes exp(2*pi*i/M).
"""
from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from sympy import factorint

from .errors import InputError, OrderTooLarge

Rat = Fraction

DEFAULT_MAX_ORDER = 10_000


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if any(c in text for c in ".eE") and not text.lower().startswith("0x"):
            raise InputError(f"floats forbidden; write {_float_hint(text)}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    if isinstance(x, float):
        raise InputError(f"floats forbidden; write {_float_hint(repr(x))}")
    raise InputError(f"not a rational: {x!r}")


def _float_hint(text: str) -> str:
    try:
        return str(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return "p/q"


def rat_str(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` when integral)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v) if v else out
    return out


def max_order() -> int:
    """The cyclotomic degree cap; ``POLYEXP_MAX_ORDER`` overrides the default."""
    env = os.environ.get("POLYEXP_MAX_ORDER")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"POLYEXP_MAX_ORDER must be an integer, got {env!r}") from exc
    return DEFAULT_MAX_ORDER


def _check_order(M: int) -> None:
    if not isinstance(M, int) or M < 1:
        raise InputError(f"cyclotomic order must be a positive integer, got {M!r}")
    if M > max_order():
        raise OrderTooLarge(f"order too large: {M} > {max_order()}")


@lru_cache(maxsize=None)
def totient(M: int) -> int:
    out = M
    for p in factorint(M):
        out -= out // p
    return out


class CycPoly:
    """The M-th cyclotomic polynomial, integer coefficients from low to high degree."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[int]):
        self.order = order
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, CycPoly) and (self.order, self.coeffs) == (other.order, other.coeffs)

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"CycPoly({self.order}, {list(self.coeffs)})"


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_poly_exact_div(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, y in enumerate(den):
                num[i - dd + j] -= c * y
    if any(num[:dd]):
        raise ArithmeticError("division is not exact")
    return quot


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(M: int) -> tuple[int, ...]:
    num = [-1] + [0] * (M - 1) + [1]
    den = [1]
    for d in _divisors(M)[:-1]:
        den = _int_poly_mul(den, _cyclotomic_coeffs(d))
    return tuple(_int_poly_exact_div(num, den))


def cyclotomic_polynomial(M: int) -> CycPoly:
    """Phi_M, by exact division of X^M - 1 by the Phi_d of the proper divisors d of M."""
    _check_order(M)
    return CycPoly(M, _cyclotomic_coeffs(M))


# -- rational polynomial helpers (lists low -> high) -------------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by zero")
    lead = b[-1]
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = Fraction(c) / lead
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] -= c * y
    return _trim(q), _trim(a[:db])


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _reduce(raw: list, M: int) -> tuple[Fraction, ...]:
    """Canonical residue of a polynomial in zeta_M (exponents already < M or not)."""
    phi = _cyclotomic_coeffs(M)
    d = len(phi) - 1
    if len(raw) > M:
        folded = [Fraction(0)] * M
        for i, c in enumerate(raw):
            if c:
                folded[i % M] += c
        raw = folded
    else:
        raw = [Fraction(c) for c in raw]
    for i in range(len(raw) - 1, d - 1, -1):
        c = raw[i]
        if c:
            base = i - d
            for j in range(d):
                y = phi[j]
                if y:
                    raw[base + j] -= c * y
            raw[i] = Fraction(0)
    out = raw[:d]
    if len(out) < d:
        out.extend([Fraction(0)] * (d - len(out)))
    return tuple(out)


class CycNum:
    """An element of Q(zeta_M) in canonical power-basis form. Immutable."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Sequence[Fraction], _canonical: bool = False):
        if not _canonical:
            _check_order(order)
            coeffs = _reduce(list(coeffs), order)
        self.order = order
        self.coeffs = tuple(coeffs)
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, M: int = 1) -> "CycNum":
        _check_order(M)
        return cls(M, (Fraction(0),) * totient(M), _canonical=True)

    @classmethod
    def one(cls, M: int = 1) -> "CycNum":
        return cls.from_rational(1, M)

    @classmethod
    def from_rational(cls, r, M: int = 1) -> "CycNum":
        _check_order(M)
        coeffs = [Fraction(0)] * totient(M)
        coeffs[0] = Fraction(r)
        return cls(M, coeffs, _canonical=True)

    @classmethod
    def zeta(cls, M: int, k: int = 1) -> "CycNum":
        """zeta_M ** k."""
        _check_order(M)
        raw = [Fraction(0)] * M
        raw[k % M] = Fraction(1)
        return cls(M, raw)

    @classmethod
    def from_exponents(cls, terms, M: int) -> "CycNum":
        """Sum of c * zeta_M**e over ``terms`` given as (e, c) pairs or a dict."""
        _check_order(M)
        items = terms.items() if hasattr(terms, "items") else terms
        raw = [Fraction(0)] * M
        for e, c in items:
            raw[e % M] += Fraction(c)
        return cls(M, raw)

    # predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"CycNum({self.order}, [{', '.join(rat_str(c) for c in self.coeffs)}])"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(rat_str(c))
            else:
                z = f"z{self.order}" + (f"^{i}" if i > 1 else "")
                parts.append(z if c == 1 else f"{rat_str(c)}*{z}")
        return " + ".join(parts) if parts else "0"

    # arithmetic
    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise InputError(
                    f"incompatible orders: {self.order} and {other.order}; embed first")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNum(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, tuple(-a for a in self.coeffs), _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNum(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), _canonical=True)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, r) -> "CycNum":
        r = Fraction(r)
        return CycNum(self.order, tuple(a * r for a in self.coeffs), _canonical=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_rational():
            return other.scale(self.coeffs[0])
        if other.is_rational():
            return self.scale(other.coeffs[0])
        return CycNum(self.order, _reduce(_poly_mul(list(self.coeffs), list(other.coeffs)), self.order),
                      _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse by the extended Euclidean algorithm against Phi_M."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_rational():
            return CycNum.from_rational(1 / self.coeffs[0], self.order)
        # maintain s_i with s_i * a = r_i (mod Phi)
        r0 = [Fraction(c) for c in _cyclotomic_coeffs(self.order)]
        r1 = _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant since Phi_M is irreducible
        c = r1[0]
        return CycNum(self.order, _reduce([x / c for x in s1], self.order), _canonical=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNum.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def embed(self, new_order: int) -> "CycNum":
        return cyc_embed(self, new_order)

    def to_complex(self) -> complex:
        """Floating-point value; for diagnostics and tests only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z ** i for i, c in enumerate(self.coeffs))


def cyc_normalize(raw: Iterable, order: int) -> CycNum:
    """Canonical residue of sum(raw[i] * zeta_order**i); raw may have any length."""
    _check_order(order)
    return CycNum(order, [as_rat(c) if not isinstance(c, Fraction) else c for c in raw])


def cyc_embed(a: CycNum, new_order: int) -> CycNum:
    """Image of ``a`` under zeta_M -> zeta_{M'}^(M'/M)."""
    if new_order % a.order:
        raise InputError(f"incompatible orders: {a.order} does not divide {new_order}")
    if new_order == a.order:
        return a
    _check_order(new_order)
    step = new_order // a.order
    if a.is_rational():
        return CycNum.from_rational(a.coeffs[0], new_order)
    raw = [Fraction(0)] * (step * (len(a.coeffs) - 1) + 1)
    for i, c in enumerate(a.coeffs):
        raw[i * step] = c
    return CycNum(new_order, raw)


def common_order(values: Iterable[CycNum]) -> int:
    return lcm(*(v.order for v in values))


def cyc_sum(values: Iterable[CycNum], order: int | None = None) -> CycNum:
    """Sum of cyclotomic numbers of possibly different orders, in Q(zeta_lcm)."""
    values = list(values)
    L = order if order is not None else common_order(values)
    total = CycNum.zero(L)
    for v in values:
        total = total + cyc_embed(v, L)
    return total


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s**2 * k with k squarefree; returns (s, k)."""
    s, k = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            k *= p
    return s, k


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> CycNum:
    # Gauss sums: g_p = sqrt(p) for p = 1 mod 4 and i*sqrt(p) for p = 3 mod 4
    if p == 2:
        return CycNum.zeta(8, 1) + CycNum.zeta(8, 7)
    g = CycNum.from_exponents({a: _legendre(a, p) for a in range(1, p)}, p)
    if p % 4 == 1:
        return g
    return cyc_embed(g, 4 * p) * cyc_embed(CycNum.zeta(4, 3), 4 * p)


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sqrt_rational(r) -> CycNum:
    """The positive square root of a positive rational as an exact cyclotomic number."""
    r = Fraction(r)
    if r <= 0:
        raise InputError(f"sqrt_rational needs a positive rational, got {r}")
    s, k = _squarefree_split(r.numerator * r.denominator)
    out = CycNum.from_rational(Fraction(s, r.denominator))
    for p in factorint(k):
        f = _sqrt_prime(p)
        L = lcm(out.order, f.order)
        out = cyc_embed(out, L) * cyc_embed(f, L)
    return out
