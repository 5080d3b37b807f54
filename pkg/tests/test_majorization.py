import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohdist.exceptions import InvalidDistribution
from cohdist.majorization import (
    as_prob_vector,
    curve,
    flatten_once,
    join,
    majorizes,
    meet,
    sort_desc,
)

from oracles import dominated, least_concave_majorant, prefix_curve


@st.composite
def distributions(draw, max_dim=8):
    dim = draw(st.integers(1, max_dim))
    w = draw(st.lists(st.floats(0, 1), min_size=dim, max_size=dim))
    w = np.array(w)
    if w.sum() == 0:
        w[0] = 1.0
    return w / w.sum()


@st.composite
def distribution_sets(draw):
    return draw(st.lists(distributions(), min_size=1, max_size=5))


@pytest.mark.parametrize(
    "p, expected",
    [((0.2, 0.8), (0.8, 0.2)), ((1, 0), (1, 0)), ((0.3, 0.4, 0.3), (0.4, 0.3, 0.3))],
)
def test_sort_desc(p, expected):
    np.testing.assert_array_equal(sort_desc(p), expected)


def test_majorizes_examples():
    assert majorizes((1, 0), (0.5, 0.5))
    assert not majorizes((0.5, 0.5), (1, 0))
    q, p = (0.5, 0.45, 0.05), (0.6, 0.25, 0.15)
    assert not majorizes(q, p) and not majorizes(p, q)
    assert majorizes(p, p)


def test_majorizes_pads_shorter_vector():
    assert majorizes((1.0,), (0.5, 0.5))
    assert majorizes((0.6, 0.4, 0.0), (0.5, 0.3, 0.2))
    assert majorizes((0.6, 0.4), (0.5, 0.3, 0.2))


def test_meet_examples():
    np.testing.assert_allclose(meet([(1, 0), (0.5, 0.5)]), (0.5, 0.5), atol=1e-12)
    np.testing.assert_allclose(meet([(0.6, 0.25, 0.15), (0.5, 0.45, 0.05)]), (0.5, 0.35, 0.15), atol=1e-12)
    p = (0.7, 0.2, 0.1)
    np.testing.assert_allclose(meet([p, p]), p, atol=1e-12)


def test_flatten_once_examples():
    a = (0.5, 0.2, 0.23, 0.07)
    np.testing.assert_allclose(flatten_once(a), (0.5, 0.215, 0.215, 0.07), atol=1e-15)
    # same answer from the hull of the cumulative points
    np.testing.assert_allclose(np.diff(least_concave_majorant(np.cumsum(a)), prepend=0), (0.5, 0.215, 0.215, 0.07), atol=1e-15)
    np.testing.assert_array_equal(flatten_once((0.6, 0.3, 0.1)), (0.6, 0.3, 0.1))
    np.testing.assert_allclose(flatten_once((0.4, 0.6)), (0.5, 0.5), atol=1e-15)


def test_flatten_once_picks_greatest_admissible_left_end():
    # j = 2 (0-based); i = 1 fails since 0.3 < mean(0.1, 0.6), so i = 0
    np.testing.assert_allclose(flatten_once((0.3, 0.1, 0.6)), (1 / 3, 1 / 3, 1 / 3), atol=1e-15)


def test_join_examples():
    got = join([(0.5, 0.2, 0.2, 0.1), (0.31, 0.31, 0.31, 0.07)])
    np.testing.assert_allclose(got, (0.5, 0.215, 0.215, 0.07), atol=1e-12)
    np.testing.assert_allclose(join([(1, 0), (0.5, 0.5)]), (1, 0), atol=1e-12)
    p = (0.4, 0.35, 0.25)
    np.testing.assert_allclose(join([p, p]), p, atol=1e-12)


def test_join_of_unequal_lengths_pads():
    np.testing.assert_allclose(join([(0.8, 0.2), (0.5, 0.3, 0.2)]), (0.8, 0.2, 0.0), atol=1e-12)


def test_invalid_distribution():
    with pytest.raises(InvalidDistribution):
        as_prob_vector((0.5, 0.6))
    with pytest.raises(InvalidDistribution):
        as_prob_vector((1.2, -0.2))
    with pytest.raises(InvalidDistribution):
        as_prob_vector(())


@settings(max_examples=200, deadline=None)
@given(distributions(), distributions(), distributions())
def test_majorizes_is_a_preorder(p, q, r):
    assert majorizes(p, p)
    if majorizes(q, p) and majorizes(r, q):
        assert majorizes(r, p)
    assert majorizes(q, p) == dominated(q, p, 1e-9)


@settings(max_examples=200, deadline=None)
@given(distribution_sets())
def test_join_curve_is_least_concave_majorant(S):
    dim = max(len(s) for s in S)
    upper = np.max([prefix_curve(s, dim) for s in S], axis=0)
    np.testing.assert_allclose(curve(join(S)), least_concave_majorant(upper), atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(distribution_sets())
def test_meet_and_join_bound_every_member(S):
    lo, hi = meet(S), join(S)
    for s in S:
        assert majorizes(s, lo)
        assert majorizes(hi, s)
    assert np.all(np.diff(lo) <= 1e-12) and np.all(np.diff(hi) <= 1e-12)
    assert abs(lo.sum() - 1) < 1e-12 and abs(hi.sum() - 1) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=8))
def test_flatten_once_sum_prefix_and_fixed_points(w):
    a = np.array(w)
    if a.sum() == 0:
        a[0] = 1.0
    a = a / a.sum()
    q = flatten_once(a)
    assert abs(q.sum() - a.sum()) < 1e-12
    assert np.all(np.cumsum(q) >= np.cumsum(a) - 1e-12)
    nonincreasing = bool(np.all(a[1:] <= a[:-1]))
    assert np.array_equal(q, a) == nonincreasing


@settings(max_examples=200, deadline=None)
@given(distributions(), distributions())
def test_absorption(p, q):
    dim = max(len(p), len(q))
    target = curve(p, dim)
    np.testing.assert_allclose(curve(join([p, meet([p, q])]), dim), target, atol=1e-9)
    np.testing.assert_allclose(curve(meet([p, join([p, q])]), dim), target, atol=1e-9)


def test_extremality_against_random_comparators(rng):
    from cohdist.random import rand_prob

    for _ in range(20):
        dim = int(rng.integers(2, 6))
        S = [rand_prob(rng, dim) for _ in range(3)]
        lo, hi = meet(S), join(S)
        for _ in range(300):
            t = rand_prob(rng, dim, sparsity=0.3)
            if all(majorizes(t, s) for s in S):
                assert majorizes(t, hi)
            if all(majorizes(s, t) for s in S):
                assert majorizes(lo, t)


def test_join_saturated_tail_is_exactly_zero(rng):
    # the join is supported on at most as many levels as its sparsest member
    for _ in range(200):
        S = [np.pad(rng.dirichlet(np.ones(k)), (0, 5 - k)) for k in rng.integers(2, 5, size=3)]
        j = join(S)
        short = min(np.count_nonzero(s) for s in S)
        assert np.all(j[short:] == 0.0)
