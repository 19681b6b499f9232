"""Earliest-arrival search for the best travel time ``T(a, b, t)``.

Three interchangeable searches share one walk semantics: label setting
(Dijkstra over arrival times, exact whenever arrival functions are
non-decreasing), a time-expanded exploration of (location, time) states
that is exact in every case, and a brute-force walk enumeration used as the
independent oracle.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .model import (
    DomainError, Network, Number, Segment, Waiting, is_fifo, to_half, to_ticks,
)

INF = math.inf
UNREACHABLE = np.iinfo(np.int64).max


class Algorithm(str, Enum):
    AUTO = "Auto"
    LABEL_SETTING = "LabelSetting"
    TIME_EXPANDED = "TimeExpanded"
    BRUTE_FORCE = "BruteForce"


@dataclass(frozen=True)
class SearchPolicy:
    """How routes are searched.  ``waiting=None`` defers to the network."""

    waiting: Optional[Waiting] = None
    algorithm: Algorithm = Algorithm.AUTO
    max_walk_edges: int = 8

    def waiting_for(self, net: Network) -> Waiting:
        return Waiting(self.waiting or net.waiting)

    def resolve(self, net: Network) -> Algorithm:
        if self.algorithm is not Algorithm.AUTO:
            return Algorithm(self.algorithm)
        if self.waiting_for(net) is Waiting.ALLOWED:
            return Algorithm.LABEL_SETTING
        # synthetic segments open up after the boundary, which breaks FIFO
        # for a traveller who cannot wait
        if any(s.synthetic for s in net.segments):
            return Algorithm.TIME_EXPANDED
        end = net.horizon(net.period.end)
        if all(is_fifo(s.profile, net.period.start, end) for s in net.segments):
            return Algorithm.LABEL_SETTING
        return Algorithm.TIME_EXPANDED


NO_WAIT = SearchPolicy(waiting=Waiting.NONE)
WAIT = SearchPolicy(waiting=Waiting.ALLOWED)


@dataclass(frozen=True)
class Leg:
    segment: str
    board: Fraction
    arrive: Fraction


@dataclass(frozen=True)
class ArrivalLabels:
    """Earliest arrivals from one origin and departure time.

    Times are stored in half-ticks; the accessors return ticks.  ``walks``
    holds one optimal walk per reachable destination (empty for the
    brute-force search, which only reports times).
    """

    origin: str
    departure_h: int
    arrivals_h: dict[str, Union[int, float]]
    walks: dict[str, tuple[Leg, ...]] = field(default_factory=dict)

    @property
    def departure(self) -> Fraction:
        return to_ticks(self.departure_h)

    @property
    def predecessors(self) -> dict[str, tuple[str, Fraction]]:
        """Last leg into each destination as ``(segment id, board time)``."""
        return {loc: (w[-1].segment, w[-1].board) for loc, w in self.walks.items() if w}

    def arrival(self, loc: str) -> Union[Fraction, float]:
        return to_ticks(self.arrivals_h[loc])

    def travel_time(self, loc: str) -> Union[Fraction, float]:
        return to_ticks(self.arrivals_h[loc] - self.departure_h)

    def path(self, loc: str) -> list[Leg]:
        if self.arrivals_h[loc] == INF:
            raise DomainError(f"{loc!r} is unreachable")
        return list(self.walks.get(loc, ()))


def _boardings(seg: Segment, s: int, lo: int, hi: Optional[int], waiting: Waiting) -> list[int]:
    """Boarding times worth trying for a traveller ready at ``s``."""
    if waiting is Waiting.NONE:
        return [s] if s >= lo and (hi is None or s <= hi) else []
    first = max(s, lo)
    if hi is not None and first > hi:
        return []
    return [first] + [b for b in seg.profile.decreasing_breakpoints
                      if b > first and (hi is None or b <= hi)]


def _edge_arrival(seg: Segment, s: int, lo: int, hi: Optional[int], waiting: Waiting):
    best, best_board = INF, None
    for b in _boardings(seg, s, lo, hi, waiting):
        a = b + seg.profile.at(b)
        if a < best:
            best, best_board = a, b
    return best, best_board


def _check_departure(net: Network, t_h: int) -> None:
    if t_h < net.period.start:
        raise DomainError("departure precedes the period")
    if net.bounded and not net.regularized and t_h > net.period.end:
        raise DomainError("departure after the period on a network with an unregularized boundary")


def _label_setting(net: Network, origin: int, t_h: int, waiting: Waiting, trace: bool = False):
    n = len(net.locations)
    ids = net.ids
    arr = [INF] * n
    pred: dict[int, tuple[int, Segment, int]] = {}
    arr[origin] = t_h
    done = [False] * n
    heap = [(t_h, ids[origin], origin)]
    last = t_h
    while heap:
        s, _, u = heapq.heappop(heap)
        if done[u] or s > arr[u]:
            continue
        assert s >= last, "label-setting finalized labels out of order"
        last = s
        done[u] = True
        for seg, v, lo, hi in net.adjacency[u]:
            if done[v]:
                continue
            a, board = _edge_arrival(seg, s, lo, hi, waiting)
            if a < arr[v]:
                arr[v] = a
                pred[v] = (u, seg, board)
                heapq.heappush(heap, (a, ids[v], v))
    if not trace:
        return arr, {}
    chains = {}
    for v in pred:
        legs, node = [], v
        while node != origin:
            u, seg, board = pred[node]
            legs.append((seg, board))
            node = u
        chains[v] = legs[::-1]
    return arr, chains


def _time_expanded(net: Network, origin: int, t_h: int, waiting: Waiting, trace: bool = False):
    n = len(net.locations)
    ids = net.ids
    cap = net.horizon(t_h)
    arr = [INF] * n
    # state (node, time) -> (previous state, segment, board time) of its first discovery
    parent: dict[tuple[int, int], tuple[tuple[int, int], Segment, int]] = {}
    seen: set[tuple[int, int]] = set()
    heap = [(t_h, ids[origin], origin)]
    remaining = n
    while heap and remaining:
        s, _, u = heapq.heappop(heap)
        if (u, s) in seen:
            continue
        seen.add((u, s))
        if arr[u] == INF:
            arr[u] = s
            remaining -= 1
        for seg, v, lo, hi in net.adjacency[u]:
            for b in _boardings(seg, s, lo, hi, waiting):
                a = b + seg.profile.at(b)
                if a <= cap and (v, a) not in seen:
                    parent.setdefault((v, a), ((u, s), seg, b))
                    heapq.heappush(heap, (a, ids[v], v))
    if not trace:
        return arr, {}
    chains = {}
    for v, a in enumerate(arr):
        if v == origin or a == INF:
            continue
        legs, state = [], (v, a)
        while state != (origin, t_h):
            state, seg, board = parent[state]
            legs.append((seg, board))
        chains[v] = legs[::-1]
    return arr, chains


def _brute_force(net: Network, origin: int, t_h: int, waiting: Waiting, max_edges: int):
    arr = [INF] * len(net.locations)
    for v in range(len(net.locations)):
        tt = _oracle_h(net, origin, v, t_h, max_edges, waiting)
        arr[v] = t_h + tt
    return arr, {}


def _search(net: Network, origin: int, t_h: int, policy: SearchPolicy, trace: bool = False):
    waiting = policy.waiting_for(net)
    algo = policy.resolve(net)
    if algo is Algorithm.LABEL_SETTING:
        return _label_setting(net, origin, t_h, waiting, trace)
    if algo is Algorithm.TIME_EXPANDED:
        return _time_expanded(net, origin, t_h, waiting, trace)
    return _brute_force(net, origin, t_h, waiting, policy.max_walk_edges)


def earliest_arrival(net: Network, origin: str, t: Number,
                     policy: Optional[SearchPolicy] = None) -> ArrivalLabels:
    """Earliest arrival at every location from ``origin`` departing at tick ``t``."""
    t_h = to_half(t)
    _check_departure(net, t_h)
    arr, chains = _search(net, net.index[origin], t_h, policy or SearchPolicy(), trace=True)
    walks = {
        net.ids[v]: tuple(Leg(seg.id, to_ticks(b), to_ticks(b + seg.profile.at(b))) for seg, b in legs)
        for v, legs in chains.items()
    }
    return ArrivalLabels(origin, t_h, {net.ids[i]: a for i, a in enumerate(arr)}, walks)


def best_travel_time(net: Network, a: str, b: str, t: Number,
                     policy: Optional[SearchPolicy] = None) -> Union[Fraction, float]:
    """``T(a, b, t)``: the minimum time over all walks from ``a`` departing at ``t``."""
    t_h = to_half(t)
    _check_departure(net, t_h)
    if a == b:
        return Fraction(0)
    arr = _search(net, net.index[a], t_h, policy or SearchPolicy())[0]
    return to_ticks(arr[net.index[b]] - t_h)


def _oracle_h(net: Network, a: int, b: int, t_h: int, max_edges: int, waiting: Waiting):
    if a == b:
        return 0
    best = INF
    # (node, time) -> most edges still available when last expanded there
    expanded: dict[tuple[int, int], int] = {}

    def dfs(u: int, s: int, left: int) -> None:
        nonlocal best
        if u == b:
            best = min(best, s - t_h)
            return
        if left == 0 or s - t_h >= best or expanded.get((u, s), -1) >= left:
            return
        expanded[(u, s)] = left
        for seg, v, lo, hi in net.adjacency[u]:
            if waiting is Waiting.NONE:
                boards = [s]
            else:
                # every later piece start, not just the drops
                first = max(s, lo)
                boards = [first] + [bp for bp in seg.profile.breakpoints if bp > first]
            for board in boards:
                if board < lo or (hi is not None and board > hi):
                    continue
                dfs(v, board + seg.profile.at(board), left - 1)

    dfs(a, t_h, max_edges)
    return best


def oracle_best_travel_time(net: Network, a: str, b: str, t: Number, max_walk_edges: int = 8,
                            waiting: Optional[Waiting] = None) -> Union[Fraction, float]:
    """Minimum over every walk of at most ``max_walk_edges`` legs, by enumeration."""
    waiting = Waiting(waiting or net.waiting)
    tt = _oracle_h(net, net.index[a], net.index[b], to_half(t), max_walk_edges, waiting)
    return to_ticks(tt)


class PremiseViolated(DomainError):
    """The second leg of a time-dependent triangle departs outside the domain."""


def check_td_triangle(net: Network, a: str, b: str, c: str, t: Number,
                      policy: Optional[SearchPolicy] = None) -> bool:
    """``T(a,c,t) <= T(a,b,t) + T(b,c, t + T(a,b,t))``."""
    policy = policy or SearchPolicy()
    t_h = to_half(t)
    if not net.period.start <= t_h <= net.period.end:
        raise DomainError("departure outside the period")
    t_ab = best_travel_time(net, a, b, t, policy)
    if t_ab == INF:
        raise PremiseViolated(f"no walk from {a} to {b} departing at {t}")
    second = t_h + to_half(t_ab)
    if b != c and net.bounded and not net.regularized and second > net.period.end:
        raise PremiseViolated(f"second leg departs {b} at {to_ticks(second)}, after the period")
    t_bc = best_travel_time(net, b, c, to_ticks(second), policy)
    t_ac = best_travel_time(net, a, c, t, policy)
    return t_ac <= t_ab + t_bc


def td_triangle_violations(net: Network, policy: Optional[SearchPolicy] = None) -> list[tuple]:
    """Every ``(a, b, c, t)`` on the period grid where the triangle check fails.

    Searches are shared across triples; departures whose second leg falls
    outside the domain are skipped, as the inequality makes no claim there.
    """
    policy = policy or SearchPolicy()
    n = len(net.locations)
    cache: dict[tuple[int, int], list] = {}

    def arrivals(o: int, s: int) -> list:
        key = (o, s)
        if key not in cache:
            cache[key] = _search(net, o, s, policy)[0]
        return cache[key]

    bad = []
    open_after = net.regularized or not net.bounded
    for t_h in net.period.grid():
        for a in range(n):
            from_a = arrivals(a, t_h)
            for b in range(n):
                s = from_a[b]
                if s == INF or (not open_after and s > net.period.end):
                    continue
                from_b = arrivals(b, s)
                for c in range(n):
                    lhs = from_a[c] - t_h
                    rhs = (s - t_h) + (from_b[c] - s)
                    if lhs > rhs:
                        bad.append((net.ids[a], net.ids[b], net.ids[c], to_ticks(t_h),
                                    to_ticks(lhs), to_ticks(rhs)))
    return bad


@dataclass(frozen=True)
class BestTimeTable:
    """``T(a, b, t)`` for every origin, destination and grid departure in the period.

    ``values[a, b, k]`` is in half-ticks; ``UNREACHABLE`` marks no walk.
    """

    locations: tuple[str, ...]
    departures_h: np.ndarray
    values: np.ndarray

    def value(self, a: str, b: str, t: Number) -> Union[Fraction, float]:
        k = int(np.searchsorted(self.departures_h, to_half(t)))
        v = self.values[self.locations.index(a), self.locations.index(b), k]
        return INF if v == UNREACHABLE else to_ticks(v)


def _table_rows(net: Network, origins: list[int], policy: SearchPolicy) -> np.ndarray:
    grid = list(net.period.grid())
    n = len(net.locations)
    out = np.full((len(origins), n, len(grid)), UNREACHABLE, dtype=np.int64)
    for i, o in enumerate(origins):
        for k, t_h in enumerate(grid):
            arr, _ = _search(net, o, t_h, policy)
            for v, a in enumerate(arr):
                if a != INF:
                    out[i, v, k] = a - t_h
    return out


def travel_time_table(net: Network, policy: Optional[SearchPolicy] = None,
                      jobs: int = 1) -> BestTimeTable:
    """Run one search per (origin, grid departure); ``jobs > 1`` splits origins over processes."""
    policy = policy or SearchPolicy()
    n = len(net.locations)
    if jobs > 1 and n > 1:
        chunks = [list(range(i, n, jobs)) for i in range(min(jobs, n))]
        values = np.empty((n, n, len(net.period.grid())), dtype=np.int64)
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            for chunk, rows in zip(chunks, pool.map(_table_rows, [net] * len(chunks), chunks,
                                                    [policy] * len(chunks))):
                values[chunk] = rows
    else:
        values = _table_rows(net, list(range(n)), policy)
    departures = np.array(list(net.period.grid()), dtype=np.int64)
    return BestTimeTable(net.ids, departures, values)
