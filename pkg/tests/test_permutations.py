import random
from fractions import Fraction
from itertools import permutations
from math import comb, factorial, isqrt

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from upset.errors import DuplicateCoordinate, TooLarge, UpsetError
from upset.geometry import Point
from upset.permutations import (
    BoundParams,
    Permutation,
    exact_monotone_probability,
    lds,
    lis,
    perm_of,
    stirling_chain,
    theorem_threshold,
    union_bound,
)

from oracles import lds_subsets, lis_dp, lis_subsets

P = Point


def test_perm_of_examples():
    assert perm_of([P(1, 5), P(2, 1), P(3, 9)]) == (2, 1, 3)
    assert perm_of([P(i, i) for i in range(1, 8)]) == tuple(range(1, 8))
    m = 7
    assert perm_of([P(i, m + 1 - i) for i in range(1, m + 1)]) == tuple(range(m, 0, -1))


def test_perm_of_order_of_input_irrelevant():
    pts = [P(3, 9), P(1, 5), P(2, 1)]
    assert perm_of(pts) == (2, 1, 3)


def test_perm_of_rejects_duplicates():
    with pytest.raises(DuplicateCoordinate):
        perm_of([P(1, 1), P(1, 2)])
    with pytest.raises(DuplicateCoordinate):
        perm_of([P(1, 1), P(2, 1)])


@given(
    st.lists(st.tuples(st.integers(0, 10**6), st.integers(0, 10**6)), min_size=1, max_size=40),
    st.integers(1, 1000),
)
def test_perm_of_scale_invariant(raw, c):
    xs = list(dict.fromkeys(x for x, _ in raw))
    ys = list(dict.fromkeys(y for _, y in raw))
    pts = [P(x, y) for x, y in zip(xs, ys)]
    assert perm_of(pts) == perm_of([P(c * p.x, c * p.y) for p in pts])


def test_permutation_validates():
    with pytest.raises(UpsetError):
        Permutation([1, 1, 2])
    with pytest.raises(UpsetError):
        Permutation([0, 1])


@pytest.mark.parametrize(
    "perm, a, d",
    [([1, 2, 3, 4, 5], 5, 1), ([2, 4, 1, 3], 2, 2), ([5, 1, 4, 2, 3], 3, 3)],
)
def test_lis_lds_examples(perm, a, d):
    assert (lis(perm), lds(perm)) == (a, d)
    assert (lis_subsets(perm), lds_subsets(perm)) == (a, d)


def test_lis_exhaustive_small():
    for m in range(0, 8):
        for p in permutations(range(1, m + 1)):
            assert lis(p) == lis_subsets(p) == lis_dp(p)
            assert lds(p) == lds_subsets(p)
            assert lis(p[::-1]) == lds(p)
            if m:
                assert lis(p) * lds(p) >= m


def test_lis_matches_dp_random():
    rng = random.Random(8)
    for _ in range(300):
        m = rng.randint(1, 400)
        p = list(range(1, m + 1))
        rng.shuffle(p)
        assert lis(p) == lis_dp(p)
        assert lis(p[::-1]) == lds(p)
        assert lis(p) * lds(p) >= m


def test_erdos_szekeres_floor():
    rng = random.Random(9)
    for _ in range(2000):
        m = rng.choice([10, 37, 100, 1000])
        p = list(range(1, m + 1))
        rng.shuffle(p)
        r = isqrt(m - 1) + 1  # ceil(sqrt(m))
        assert max(lis(p), lds(p)) >= r


@pytest.mark.parametrize("m, ell, expected", [(3, 2, Fraction(1)), (4, 4, Fraction(1, 12)), (5, 1, Fraction(1))])
def test_exact_probability_examples(m, ell, expected):
    assert exact_monotone_probability(m, ell) == expected


def test_exact_probability_m4_by_hand():
    hits = sum(1 for p in permutations(range(4)) if max(lis_subsets(p), lds_subsets(p)) >= 3)
    assert exact_monotone_probability(4, 3) == Fraction(hits, 24)


def test_exact_probability_limits():
    with pytest.raises(TooLarge):
        exact_monotone_probability(10, 3)
    with pytest.raises(UpsetError):
        exact_monotone_probability(4, 5)


def test_union_bound_examples():
    assert union_bound(4, 4, capped=False) == Fraction(1, 12)
    assert union_bound(4, 3, capped=False) == Fraction(4, 3)
    assert union_bound(4, 3) == 1
    assert union_bound(2, 2, capped=False) == 1
    assert union_bound(3, 5, capped=False) == 0


def test_exact_below_union_bound():
    for m in range(2, 9):
        for ell in range(2, m + 1):
            assert exact_monotone_probability(m, ell) <= union_bound(m, ell)


def test_bound_params():
    assert BoundParams(36, 5).ell == 3
    with pytest.raises(UpsetError):
        BoundParams(6, 5)


def test_chain_m4_ell11():
    r = stirling_chain(4, 11)
    assert r.precondition_met and r.monotone
    union = r.steps[0].value
    assert all(s.value >= union for s in r.steps)


def test_chain_m100_ell55():
    r = stirling_chain(100, 55)
    assert r.precondition_met and r.monotone
    by_name = {s.name: s.value for s in r.steps}
    assert by_name["claim_bound"] == 2 * mpmath.power(4, -55)
    assert mpmath.almosteq(by_name["union_bound"], mpmath.mpf(2 * comb(100, 55)) / factorial(55), 1e-60)
    # falling-factorial form is an identity
    assert mpmath.almosteq(by_name["union_bound"], by_name["falling_factorial"], 1e-60)
    assert mpmath.almosteq(by_name["stirling"], by_name["rewritten"], 1e-60)


def test_chain_precondition_unmet():
    r = stirling_chain(100, 20)
    assert r.precondition_unmet
    assert not r.steps[-1].applies and not r.steps[-2].applies
    assert r.monotone


def test_chain_theorem_tail_slack():
    r = stirling_chain(100, 108, n=1305)
    by_name = {s.name: s.value for s in r.steps}
    assert by_name["claim_bound"] <= by_name["theorem_tail"]


@pytest.mark.parametrize("n, m_max", [(24, 0), (131, 1), (1305, 100)])
def test_threshold_examples(n, m_max):
    th = theorem_threshold(n)
    assert th.m_max == m_max and not th.boundary_flag


def test_threshold_tail():
    assert theorem_threshold(24).tail == mpmath.mpf("0.5")
    assert mpmath.almosteq(theorem_threshold(1305).tail, 8 * mpmath.power(4, -mpmath.mpf(1305) / 12), 1e-70)


def test_threshold_monotone_in_n():
    prev = 0
    for n in range(4, 3000, 7):
        th = theorem_threshold(n)
        assert th.m_max >= prev and not th.boundary_flag
        # cross-check with plain floats away from integer boundaries
        approx = (n / (48 * 2.718281828459045)) ** 2
        if abs(approx - round(approx)) > 1e-9:
            assert th.m_max == int(approx)
        prev = th.m_max
