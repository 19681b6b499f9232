"""Seeded random network generators shared by the property and acceptance tests."""

from __future__ import annotations

import itertools
import random

from ttmetric import Waiting, make_network

MAX_SEGMENTS = 12
MAX_PIECES = 5
MAX_PERIOD = 50


def random_profile(rng: random.Random, start: int, end: int) -> list[tuple[int, int]]:
    k = rng.randint(1, MAX_PIECES)
    later = sorted(rng.sample(range(start + 1, end + 12), k - 1))
    return [(b, rng.randint(1, 15)) for b in [start] + later]


def _period(rng: random.Random) -> tuple[int, int]:
    start = rng.randint(0, 10)
    return start, start + rng.randint(1, MAX_PERIOD)


def random_bounded_network(rng: random.Random, waiting=None):
    """A valid closed-boundary network: every ordered pair has a direct segment.

    Once the period ends no real segment can be boarded, so a departure at the
    last tick reaches only direct neighbours.  Existence therefore forces a
    complete digraph, which caps the size at four locations under the
    twelve-segment budget.
    """
    n = rng.randint(2, 4)
    ids = [f"m{i}" for i in range(n)]
    start, end = _period(rng)
    pairs = list(itertools.permutations(ids, 2))
    pairs += [rng.choice(pairs) for _ in range(rng.randint(0, MAX_SEGMENTS - len(pairs)))]
    segs = [(f"s{i}", a, b, random_profile(rng, start, end)) for i, (a, b) in enumerate(pairs)]
    waiting = waiting or rng.choice(list(Waiting))
    return make_network(ids, segs, (start, end), waiting)


def random_open_network(rng: random.Random, max_locations: int = 5, waiting=None):
    """An open-boundary network on a directed cycle plus random extra segments."""
    n = rng.randint(2, max_locations)
    ids = [f"m{i}" for i in range(n)]
    start, end = _period(rng)
    pairs = [(ids[i], ids[(i + 1) % n]) for i in range(n)]
    others = [p for p in itertools.permutations(ids, 2)]
    pairs += [rng.choice(others) for _ in range(rng.randint(0, MAX_SEGMENTS - n))]
    segs = [(f"s{i}", a, b, random_profile(rng, start, end)) for i, (a, b) in enumerate(pairs)]
    waiting = waiting or rng.choice(list(Waiting))
    return make_network(ids, segs, (start, end), waiting, bounded=False)
