import itertools
import math
from fractions import Fraction as F

import pytest

from helpers import constraints_hold, cyc_to_mp
from polyexp import DZParams, dz_feasible, dz_order_bound, enumerate_vanishing_sums, system, system_order_bound
from polyexp.errors import InputError
from polyexp.roots_of_unity import VanishingSum, is_minimal


def test_feasibility_examples():
    ok = dz_feasible(12, DZParams(2, 1))
    assert ok and ok.prime_sum == 1
    bad = dz_feasible(8, 2, 1)
    assert not bad and not bad.divisibility_ok
    five = dz_feasible(5, 2, 1)
    assert not five and five.divisibility_ok and five.prime_sum == 3


def test_order_bound_examples():
    T, feasible = dz_order_bound(DZParams(2, 1))
    assert T == 12 and feasible == [1, 2, 3, 4, 6, 12]
    assert dz_order_bound(1, 1) == (4, [1, 2, 4])
    assert dz_order_bound(2, 1)[0] <= dz_order_bound(3, 1)[0]


def test_system_order_bound():
    def with_terms(s):
        return system([], [(1, [(F(j, s + 1), [])]) for j in range(s)])
    assert system_order_bound(with_terms(3), 1) == 12
    assert system_order_bound(with_terms(2), 1) == 4
    assert system_order_bound(with_terms(1), 1) == 1


def test_params_validation():
    with pytest.raises(InputError):
        DZParams(0, 1)
    with pytest.raises(InputError):
        DZParams(1, 0)


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("delta", [1, 2, 3, 4, 6, 8, 12])
def test_feasible_list_matches_direct_enumeration(k, delta):
    T, feasible = dz_order_bound(k, delta)
    assert T == max(feasible) and feasible == sorted(set(feasible))
    assert all(constraints_hold(Q, k, delta) for Q in feasible)
    if T <= 20000:
        oracle = [Q for Q in range(1, 4 * T + 100) if constraints_hold(Q, k, delta)]
        assert feasible == oracle
    listed = set(feasible)
    for Q in range(1, 3000):
        assert (Q in listed) == constraints_hold(Q, k, delta) == bool(dz_feasible(Q, k, delta))


def test_bound_monotone_in_k_and_along_divisibility_of_delta():
    table = {(k, d): dz_order_bound(k, d)[0] for k in range(1, 7) for d in range(1, 13)}
    for (k, d), T in table.items():
        if k > 1:
            assert table[(k - 1, d)] <= T
        for d2 in range(2 * d, 13, d):
            assert T <= table[(k, d2)]


def test_bound_is_not_monotone_in_delta_in_general():
    # 2*delta = 10 admits 4 and 25 only; 2*delta = 8 admits 16 with 3 and 5 free
    assert dz_order_bound(1, 4)[0] == 240
    assert dz_order_bound(1, 5)[0] == 100


def test_vanishing_sum_examples():
    small = enumerate_vanishing_sums(3, 10, [1])
    assert [(v.order, v.exponents) for v in small] == [(2, (0, 1)), (3, (0, 1, 2))]
    bigger = enumerate_vanishing_sums(5, 10, [1])
    assert (5, (0, 1, 2, 3, 4)) in [(v.order, v.exponents) for v in bigger]
    assert (6, (0, 2, 4)) not in [(v.order, v.exponents) for v in bigger]
    with pytest.raises(InputError):
        enumerate_vanishing_sums(1, 10)


def _direct_enumeration(max_terms, max_order, coeffs):
    """Plain loops, cyclotomic zero test by the package, minimality by numerics."""
    out = []
    for Q in range(2, max_order + 1):
        for k in range(1, max_terms):
            for rest in itertools.combinations(range(1, Q), k):
                if math.gcd(Q, *rest) != 1:
                    continue
                exps = (0,) + rest
                for cs in itertools.product(coeffs, repeat=k + 1):
                    vs = VanishingSum(Q, exps, tuple(F(c) for c in cs))
                    if not vs.value().is_zero():
                        continue
                    z = [cyc_to_mp(vs.value().zeta(Q, e)) for e in exps]
                    proper = any(abs(sum(cs[i] * z[i] for i in sub)) < 1e-9
                                 for r in range(1, k + 1) for sub in itertools.combinations(range(k + 1), r))
                    if not proper:
                        out.append(vs)
    return sorted(out)


@pytest.mark.parametrize("coeffs", [(1,), (1, -1), (1, 2, -1)])
def test_enumerator_matches_direct_loops(coeffs):
    fast = enumerate_vanishing_sums(4, 14, coeffs)
    assert fast == _direct_enumeration(4, 14, coeffs)


def test_emitted_sums_are_minimal_and_sound():
    for vs in enumerate_vanishing_sums(5, 30, (1, -1)):
        assert vs.value().is_zero()
        assert is_minimal(vs)
        assert math.gcd(vs.order, *vs.exponents) == 1 and vs.exponents[0] == 0
        assert dz_feasible(vs.order, vs.k, 1)


def test_galois_dedupe():
    full = enumerate_vanishing_sums(4, 12, (1, -1))
    dedup = enumerate_vanishing_sums(4, 12, (1, -1), dedupe_galois=True)
    assert 0 < len(dedup) < len(full)
    assert all(v.value().is_zero() for v in dedup)
