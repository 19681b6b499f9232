"""Values frozen from the stand-alone reference in ``oracle.py``."""

import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from helpers import random_bounded_network, random_open_network
from ttmetric import SearchPolicy, Waiting, best_travel_time, regularize
from ttmetric.io import boundary_example, minmin_counterexample

# (a, b, t, waiting) -> T, from oracle.best_time on the minmin example
PE1_FROZEN = {
    ("a", "b", 1015, True): 15,
    ("a", "b", 1015, False): 60,
    ("a", "b", 1020, False): 10,
    ("a", "b", 1079, False): 10,
    ("a", "b", 1080, False): 60,
    ("b", "c", 600, False): 10,
    ("b", "c", 590, True): 20,
    ("a", "c", 1020, False): 45,
    ("a", "c", 540, True): 45,
    ("c", "a", 0, False): 45,
    ("b", "a", 700, False): 60,
}

# regularized boundary example, no waiting
PE2_FROZEN = {
    ("a", "c", 0): 60,
    ("a", "c", 420): 60,
    ("a", "c", 455): 45,
    ("a", "c", 480): 45,
    ("a", "b", 480): 30,
    ("b", "c", 460): 30,
    ("b", "c", 451): 30,
}


def test_frozen_values_match_reference():
    segs, period = oracle.describe(minmin_counterexample())
    for (a, b, t, wait), value in PE1_FROZEN.items():
        assert oracle.best_time(segs, period, a, b, t, wait) == value
    segs, period = oracle.describe(regularize(boundary_example()))
    for (a, b, t), value in PE2_FROZEN.items():
        assert oracle.best_time(segs, period, a, b, t, False) == value


@pytest.mark.parametrize("key, value", PE1_FROZEN.items())
def test_engine_on_minmin_example(key, value):
    a, b, t, wait = key
    policy = SearchPolicy(waiting=Waiting.ALLOWED if wait else Waiting.NONE)
    assert best_travel_time(minmin_counterexample(), a, b, t, policy) == value


@pytest.mark.parametrize("key, value", PE2_FROZEN.items())
def test_engine_on_regularized_boundary_example(key, value):
    assert best_travel_time(regularize(boundary_example()), *key) == value


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["bounded", "regularized", "open"]))
def test_engine_matches_reference(seed, kind):
    rng = random.Random(seed)
    if kind == "open":
        net = random_open_network(rng, max_locations=4)
    else:
        net = random_bounded_network(rng)
        if kind == "regularized":
            net = regularize(net)
    segs, period = oracle.describe(net)
    wait = net.waiting is Waiting.ALLOWED
    lo, hi = (int(x) for x in period)
    for t in range(lo, hi + 1, 3):
        for a in net.ids:
            for b in net.ids:
                assert best_travel_time(net, a, b, t) == oracle.best_time(
                    segs, period, a, b, t, wait, net.bounded)
