"""Aggregating ``T(a, b, t)`` over departure times into pairwise matrices.

The max-min matrix maximizes the best travel time over the period and then
over both directions; it is a metric on any valid network whose boundary has
been regularized.  The min-min and uniform-integral aggregates are kept as
comparison baselines: both can break the triangle inequality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .engine import INF, UNREACHABLE, BestTimeTable, SearchPolicy, _search, travel_time_table
from .model import (
    STEP, Network, Profile, Rule, Segment, ValidationFailed, ValidationReport, Violation,
    Waiting, _structural_violations, format_ticks, to_ticks,
)

Value = Union[Fraction, float]


class Aggregator(str, Enum):
    MAX_MIN = "MaxMin"
    MIN_MIN = "MinMin"
    INTEGRAL = "IntegralUniform"


@dataclass(frozen=True)
class MetricMatrix:
    """Pairwise aggregated travel times in ticks; ``inf`` where no walk exists."""

    locations: tuple[str, ...]
    values: tuple[tuple[Value, ...], ...]
    aggregator: Aggregator
    symmetrized: bool
    regularized: bool
    period: tuple[Value, Value]
    unit: str = "minute"

    def __getitem__(self, pair: tuple[str, str]) -> Value:
        a, b = pair
        return self.values[self.locations.index(a)][self.locations.index(b)]

    def to_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.values])

    def scaled(self, k) -> "MetricMatrix":
        return replace(self, values=tuple(tuple(v * k for v in row) for row in self.values))


@dataclass(frozen=True)
class EpsilonChoice:
    """Half the shortest real duration in force during the period."""

    value_h: int
    segment: str
    piece_start: Value
    shortest: Value

    @property
    def value(self) -> Fraction:
        return to_ticks(self.value_h)


def compute_epsilon(net: Network) -> EpsilonChoice:
    best = None
    for seg in net.real_segments():
        bps, durs = seg.profile.breakpoints, seg.profile.durations
        for i, (b, d) in enumerate(zip(bps, durs)):
            piece_end = bps[i + 1] if i + 1 < len(bps) else None
            if b > net.period.end or (piece_end is not None and piece_end <= net.period.start):
                continue
            if best is None or d < best[0]:
                best = (d, seg.id, b)
    if best is None:
        raise ValueError("network has no route segments to derive epsilon from")
    d, sid, b = best
    # duration is an even number of half-ticks, so half of it is exact
    return EpsilonChoice(d // 2, sid, to_ticks(b), to_ticks(d))


def regularize(net: Network, eps: Optional[EpsilonChoice] = None) -> Network:
    """Add an epsilon route for every ordered pair, boardable only after the period.

    The period's last tick is ``t1``; the added routes start one grid step
    later so they never shortcut a departure inside the period.
    """
    if net.regularized:
        raise ValueError("network is already regularized")
    if not net.bounded:
        raise ValueError("an unbounded network has no boundary to regularize")
    safe = compute_epsilon(net)
    eps = eps or safe
    shortest = 2 * safe.value_h
    if not 0 < eps.value_h < shortest:
        raise ValueError(f"epsilon {format_ticks(eps.value)} must lie strictly between 0 and "
                         f"the shortest duration {format_ticks(to_ticks(shortest))}")
    taken = {s.id for s in net.segments}
    profile = Profile((net.period.end + STEP,), (eps.value_h,))
    extra = []
    for a, b in itertools.permutations(net.ids, 2):
        sid = f"eps:{a}->{b}"
        while sid in taken:
            sid += "'"
        extra.append(Segment(sid, a, b, profile, synthetic=True))
    return replace(net, segments=net.segments + tuple(extra), regularized=True)


def _matrix(net: Network, values_h: np.ndarray, aggregator: Aggregator,
            symmetrized: bool) -> MetricMatrix:
    rows = []
    for row in values_h:
        rows.append(tuple(INF if v == UNREACHABLE else to_ticks(v) for v in row))
    return MetricMatrix(net.ids, tuple(rows), aggregator, symmetrized,
                        net.regularized, net.period.as_ticks(), net.unit)


def _existence_from_table(net: Network, table: BestTimeTable) -> None:
    violations = _structural_violations(net)
    miss = np.argwhere(table.values == UNREACHABLE)
    seen = set()
    for a, b, k in miss:
        if (a, b) in seen:
            continue
        seen.add((a, b))
        violations.append(Violation(Rule.EXISTENCE, {
            "from": net.ids[a], "to": net.ids[b],
            "depart": format_ticks(to_ticks(table.departures_h[k])),
            "failingTicks": int(np.count_nonzero(table.values[a, b] == UNREACHABLE)),
        }))
    if violations:
        raise ValidationFailed(ValidationReport(tuple(violations)))


def worst_best_matrix(net: Network, policy: Optional[SearchPolicy] = None, jobs: int = 1,
                      table: Optional[BestTimeTable] = None) -> MetricMatrix:
    """``T_U``: the worst best travel time over the period, per direction."""
    table = table if table is not None else travel_time_table(net, policy, jobs)
    return _matrix(net, table.values.max(axis=2), Aggregator.MAX_MIN, False)


def directed_worst_best(net: Network, a: str, b: str, policy: Optional[SearchPolicy] = None) -> Value:
    if a == b:
        return Fraction(0)
    policy = policy or SearchPolicy()
    o, d = net.index[a], net.index[b]
    worst = 0
    for t_h in net.period.grid():
        arrival = _search(net, o, t_h, policy)[0][d]
        worst = max(worst, arrival - t_h)
    return to_ticks(worst)


def maxmin_metric(net: Network, policy: Optional[SearchPolicy] = None, jobs: int = 1,
                  table: Optional[BestTimeTable] = None) -> MetricMatrix:
    """Max over period and direction of the best travel time.

    Raises :class:`ValidationFailed` if the network breaks positivity or
    some pair has no walk at some departure in the period.
    """
    table = table if table is not None else travel_time_table(net, policy, jobs)
    _existence_from_table(net, table)
    directed = table.values.max(axis=2)
    return _matrix(net, np.maximum(directed, directed.T), Aggregator.MAX_MIN, True)


def minmin_aggregate(net: Network, policy: Optional[SearchPolicy] = None, jobs: int = 1,
                     table: Optional[BestTimeTable] = None) -> MetricMatrix:
    table = table if table is not None else travel_time_table(net, policy, jobs)
    return _matrix(net, table.values.min(axis=2), Aggregator.MIN_MIN, False)


def integral_aggregate(net: Network, policy: Optional[SearchPolicy] = None, jobs: int = 1,
                       table: Optional[BestTimeTable] = None) -> MetricMatrix:
    """Uniform-weight mean of ``T(a, b, t)`` over the grid ticks of the period (exact)."""
    table = table if table is not None else travel_time_table(net, policy, jobs)
    n, _, count = table.values.shape
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            cell = table.values[i, j]
            if (cell == UNREACHABLE).any():
                row.append(INF)
            else:
                row.append(Fraction(sum(int(v) for v in cell), 2 * count))
        rows.append(tuple(row))
    return MetricMatrix(net.ids, tuple(rows), Aggregator.INTEGRAL, False,
                        net.regularized, net.period.as_ticks(), net.unit)


def compare_aggregators(net: Network, policy: Optional[SearchPolicy] = None,
                        jobs: int = 1) -> dict[Aggregator, MetricMatrix]:
    """All three aggregates from one shared sweep of searches."""
    table = travel_time_table(net, policy, jobs)
    return {
        Aggregator.MAX_MIN: maxmin_metric(net, table=table),
        Aggregator.MIN_MIN: minmin_aggregate(net, table=table),
        Aggregator.INTEGRAL: integral_aggregate(net, table=table),
    }


def construct_integral_violation() -> Network:
    """Three locations where averaging over departures breaks the triangle inequality.

    ``a -> b`` always takes 10 ticks; ``b -> c`` takes ``10 + s`` when
    boarded at ``s``, so arriving later always costs more.  The period is
    ``[0, 100]`` and the network is unbounded: departures past the period
    run on the same data, and the ``b -> c`` profile is held constant only
    once no departure from the period can still reach it (``s > 110``).
    """
    from .model import make_network

    ramp = [(s, 10 + s) for s in range(0, 111)]
    return make_network(
        ["a", "b", "c"],
        [
            ("g", "a", "b", 10),
            ("f", "b", "c", ramp),
            ("g-rev", "b", "a", 10),
            ("f-rev", "c", "b", 10),
        ],
        period=(0, 100),
        waiting=Waiting.ALLOWED,
        bounded=False,
    )


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    witnesses: tuple[tuple, ...] = ()


@dataclass(frozen=True)
class AxiomReport:
    non_negativity: AxiomResult
    identity_of_indiscernibles: AxiomResult
    symmetry: AxiomResult
    triangle: AxiomResult

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results().values())

    def results(self) -> dict[str, AxiomResult]:
        return {
            "nonNegativity": self.non_negativity,
            "identityOfIndiscernibles": self.identity_of_indiscernibles,
            "symmetry": self.symmetry,
            "triangle": self.triangle,
        }

    def to_dict(self) -> dict:
        return {
            name: {"pass": r.passed,
                   "witnesses": [[w if isinstance(w, str) else format_ticks(w) for w in wit]
                                 for wit in r.witnesses]}
            for name, r in self.results().items()
        }


def verify_metric_axioms(m: MetricMatrix) -> AxiomReport:
    """Check the four metric axioms over every pair and triple.

    Witnesses: ``(a, b, value)`` for the first two axioms,
    ``(a, b, T(a,b), T(b,a))`` for symmetry and ``(a, b, c, T(a,c), T(a,b) + T(b,c))``
    for the triangle inequality.
    """
    ids, v = m.locations, m.values
    n = len(ids)
    negative, identity, asym, triangle = [], [], [], []
    for i in range(n):
        for j in range(n):
            x = v[i][j]
            if x < 0:
                negative.append((ids[i], ids[j], x))
            if (i == j) != (x == 0):
                identity.append((ids[i], ids[j], x))
            if i < j and x != v[j][i]:
                asym.append((ids[i], ids[j], x, v[j][i]))
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs, rhs = v[i][k], v[i][j] + v[j][k]
        if lhs > rhs:
            triangle.append((ids[i], ids[j], ids[k], lhs, rhs))
    return AxiomReport(
        AxiomResult(not negative, tuple(negative)),
        AxiomResult(not identity, tuple(identity)),
        AxiomResult(not asym, tuple(asym)),
        AxiomResult(not triangle, tuple(triangle)),
    )
