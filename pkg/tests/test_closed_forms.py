import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from robustpd.closed_forms import (
    NotApplicable,
    ceiling_identities_check,
    k33_value,
    k3m_value,
    knm_bounds,
    knm_witness,
    knn_value,
    knn_witness,
    n_over_3_bound,
    qbound,
    qbound_placement,
)
from robustpd.engine import is_krpds
from robustpd.graph import complete_bipartite_graph


def test_k33_values():
    assert [k33_value(k) for k in range(8)] == [2, 3, 4, 5, 6, 8, 9, 10]
    assert k33_value(12) == 16


@given(st.integers(0, 200))
def test_k33_jumps_only_at_multiples_of_5(k):
    step = k33_value(k + 1) - k33_value(k)
    assert step == (2 if (k + 1) % 5 == 0 else 1)


def test_k3m_values():
    assert k3m_value(3, 4) == 6
    assert k3m_value(0, 5) == 2
    assert k3m_value(6, 5) == 10
    with pytest.raises(NotApplicable):
        k3m_value(6, 4)


def test_knm_bounds_examples():
    assert knm_bounds(4, 6, 4) == (7, 9)
    assert knm_bounds(4, 4, 1) == (4, 4)
    assert knm_bounds(5, 5, 2) == (6, 6)
    with pytest.raises(NotApplicable):
        knm_bounds(3, 5, 1)
    with pytest.raises(NotApplicable):
        knm_bounds(5, 4, 1)


def test_knn_values():
    assert knn_value(4, 1) == 4
    assert knn_value(4, 7) == 12
    assert knn_value(4, 3) == 6


@given(st.integers(4, 9), st.integers(1, 40))
def test_knn_value_is_the_collapsed_bracket(n, k):
    lo, hi = knm_bounds(n, n, k)
    assert lo == hi == knn_value(n, k)


def test_knn_witness_examples():
    assert knn_witness(4, 1).counts == {0: 1, 1: 1, 4: 1, 5: 1}
    w = knn_witness(4, 5)
    assert w.size == 8 and w.max_multiplicity == 1
    w = knn_witness(4, 6)
    assert w.size == 10 and sorted(w.counts.values()) == [1] * 6 + [2] * 2


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("k", range(1, 9))
def test_knn_witness_is_robust_and_tight(n, k):
    w = knn_witness(n, k)
    assert w.size == knn_value(n, k)
    assert is_krpds(complete_bipartite_graph(n, n), w, k).ok


@pytest.mark.parametrize("n, m", [(4, 5), (4, 6), (5, 6)])
@pytest.mark.parametrize("k", range(1, 8))
def test_knm_witness_meets_upper_bound(n, m, k):
    w = knm_witness(n, m, k)
    assert w.size == knm_bounds(n, m, k)[1]
    assert is_krpds(complete_bipartite_graph(n, m), w, k).ok


def test_qbound_examples():
    assert qbound(6, 2, 5) == 8
    assert qbound(4, 2, 1) == 3
    assert qbound(3, 2, 1) == 3
    with pytest.raises(NotApplicable):
        qbound(2, 2, 1)


@pytest.mark.parametrize("k", range(1, 8))
def test_qbound_placement_on_k33(k):
    w = qbound_placement(range(6), 2, k)
    assert w.size == qbound(6, 2, k)
    assert is_krpds(complete_bipartite_graph(3, 3), w, k).ok


def test_n_over_3():
    assert n_over_3_bound(6, 1) == 4
    assert n_over_3_bound(9, 2) == 9


def test_ceiling_examples():
    assert ceiling_identities_check([(0, 1, 0, 1, 7, 3, 1)])
    assert ceiling_identities_check([(4, 3, 0, 1, 0, 1, 3)])
    assert ceiling_identities_check([(0, 5, 0, 7, m, n, a) for m in range(-5, 6) for n in (1, 2, 3) for a in (1, 2)])


def test_ceiling_identities_on_random_samples():
    rng = random.Random(2024)
    samples = [
        (rng.randint(-500, 500), rng.randint(1, 60), rng.randint(-500, 500), rng.randint(1, 60),
         rng.randint(-500, 500), rng.randint(1, 60), rng.randint(1, 60))
        for _ in range(10_000)
    ]
    assert ceiling_identities_check(samples)


def test_ceiling_check_rejects_bad_denominators():
    with pytest.raises(ValueError):
        ceiling_identities_check([(1, 0, 1, 1, 1, 1, 1)])
    with pytest.raises(ValueError):
        ceiling_identities_check([(1, 1, 1, 1, 1, 0, 1)])
