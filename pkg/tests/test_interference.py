import math

import pytest
from hypothesis import given, strategies as st

from meshcast import (ChannelAssignment, InterferenceParams, MissingSIError, interference_range,
                      links_conflict, pairwise_objective, total_interference)


@pytest.mark.parametrize("i_u, i_v, R, delta, expected", [
    (0, 0, 250, 0.5, 250.0),
    (0, 2, 250, 0.5, 62.5),
    (3, 1, 100, 0.8, 64.0),
])
def test_interference_range_values(i_u, i_v, R, delta, expected):
    assert interference_range(i_u, i_v, InterferenceParams(R, delta)) == pytest.approx(expected, rel=1e-9)


@given(a=st.integers(0, 10), b=st.integers(0, 10), delta=st.floats(0.01, 1.0))
def test_interference_range_symmetric(a, b, delta):
    p = InterferenceParams(100.0, delta)
    assert interference_range(a, b, p) == interference_range(b, a, p)


@pytest.mark.parametrize("delta", [0.1, 0.5, 0.9, 1.0])
def test_interference_range_monotone(delta):
    p = InterferenceParams(250.0, delta)
    ranges = [interference_range(0, k, p) for k in range(11)]
    for near, far in zip(ranges, ranges[1:]):
        if delta < 1:
            assert far < near
        else:
            assert far == near


@pytest.mark.parametrize("bad", [dict(R=0, delta=0.5), dict(R=1, delta=0), dict(R=1, delta=1.5)])
def test_params_validated(bad):
    with pytest.raises(ValueError):
        InterferenceParams(**bad)


def test_objective_empty_neighbors():
    assert pairwise_objective("u", {"u": 1}, [], InterferenceParams(250, 0.5)) == 0


def test_objective_same_channel():
    assert pairwise_objective(0, {0: 2, 1: 2}, [1], InterferenceParams(250, 0.5)) == pytest.approx(62500)


def test_objective_two_neighbors():
    si = {0: 2, 1: 1, 2: 0}
    assert pairwise_objective(0, si, [1, 2], InterferenceParams(100, 0.5)) == pytest.approx(3125, rel=1e-12)


@given(chs=st.lists(st.integers(0, 10), min_size=1, max_size=12), delta=st.floats(0.05, 1.0),
       R=st.floats(1.0, 1000.0))
def test_objective_matches_naive_sum(chs, delta, R):
    si = {i: c for i, c in enumerate(chs)}
    u = 0
    naive = 0.0
    for v in range(1, len(chs)):
        naive += (R * delta ** abs(chs[0] - chs[v])) ** 2
    got = pairwise_objective(u, si, range(1, len(chs)), InterferenceParams(R, delta))
    assert got == pytest.approx(naive, rel=1e-9, abs=1e-300)


def test_objective_missing_si():
    with pytest.raises(MissingSIError):
        pairwise_objective(0, {0: 1}, [5], InterferenceParams(10, 0.5))


def test_objective_accepts_assignment():
    a = ChannelAssignment({1: 0}, {0: 0, 1: 1}, 2)
    assert pairwise_objective(1, a, [0], InterferenceParams(10, 0.5)) == pytest.approx(25)


R = 100.0


def test_conflict_colocated_same_channel():
    assert links_conflict(0, 1, {0: 0, 1: 0}, {0: (0, 0), 1: (0, 0)}, InterferenceParams(R, 0.5))


def test_no_conflict_far_apart():
    p = InterferenceParams(R, 1.0)
    assert not links_conflict(0, 1, {0: 0, 1: 0}, {0: (0, 0), 1: (10 * R, 0)}, p)


def test_separated_channels_at_1_4R():
    p = InterferenceParams(R, 0.5)
    assert not links_conflict(0, 1, {0: 0, 1: 2}, {0: (0, 0), 1: (1.4 * R, 0)}, p)
    assert links_conflict(0, 1, {0: 0, 1: 0}, {0: (0, 0), 1: (1.4 * R, 0)}, p)


@given(x=st.floats(0, 300), y=st.floats(0, 300), a=st.integers(0, 5), b=st.integers(0, 5))
def test_conflict_symmetric(x, y, a, b):
    pos = {0: (0.0, 0.0), 1: (x, y)}
    p = InterferenceParams(R, 0.5)
    assert links_conflict(0, 1, {0: a, 1: b}, pos, p) == links_conflict(1, 0, {0: a, 1: b}, pos, p)


def test_conflict_missing_si():
    with pytest.raises(MissingSIError):
        links_conflict(0, 1, {0: 0}, {0: (0, 0), 1: (1, 1)}, InterferenceParams(R, 0.5))


def test_total_interference_pairs_within_radius():
    pos = {0: (0, 0), 1: (150, 0), 2: (1000, 0)}
    si = {0: 0, 1: 1, 2: 0}
    p = InterferenceParams(R, 0.5)
    expected = (R * 0.5) ** 2
    assert total_interference(si, [0, 1, 2], pos, p, 2 * R) == pytest.approx(expected)
    assert math.isclose(total_interference(si, [0, 2], pos, p, 2 * R), 0.0)
