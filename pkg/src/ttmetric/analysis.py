"""Stability, capacity and rolling-period studies built on the max-min metric."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .engine import INF, NO_WAIT, SearchPolicy
from .metric import MetricMatrix, maxmin_metric, regularize
from .model import (
    DomainError, Network, Number, Period, ValidationFailed, to_half, to_ticks,
    validate_network,
)


def prepare(net: Network) -> Network:
    """Regularize a bounded network; unbounded networks have no boundary to remove."""
    if net.regularized or not net.bounded:
        return net
    return regularize(net)


@dataclass(frozen=True)
class StabilityReport:
    baseline: MetricMatrix
    excluded: MetricMatrix
    delta: tuple[tuple, ...]
    flagged: tuple[tuple[str, str, Fraction], ...] = ()


def _two_fastest(net: Network, origin: int, t_h: int, budget: int) -> list[list[tuple]]:
    """Per destination, the two fastest walks ranked by (time, segment ids).

    Bounded enumeration without waiting.  A branch is cut once its elapsed
    time exceeds every destination's current runner-up, which leaves the
    ranking exact because durations are positive.
    """
    n = len(net.locations)
    best: list[list[tuple]] = [[] for _ in range(n)]

    def bound() -> float:
        worst = 0
        for v in range(n):
            if v == origin:
                continue
            if len(best[v]) < 2:
                return INF
            worst = max(worst, best[v][1][0])
        return worst

    def offer(v: int, elapsed: int, seq: tuple) -> None:
        ranked = best[v]
        ranked.append((elapsed, seq))
        ranked.sort()
        del ranked[2:]

    def dfs(u: int, s: int, seq: tuple) -> None:
        if len(seq) == budget:
            return
        for seg, v, lo, hi in net.adjacency[u]:
            if s < lo or (hi is not None and s > hi):
                continue
            a = s + seg.profile.at(s)
            if a - t_h > bound():
                continue
            walk = seq + (seg.id,)
            if v != origin:
                offer(v, a - t_h, walk)
            dfs(v, a, walk)

    dfs(origin, t_h, ())
    return best


def stability_metric(net: Network, budget: Optional[int] = None) -> StabilityReport:
    """Compare the metric with the one obtained after excluding each fastest walk.

    For every ordered pair and departure the single fastest walk (ties broken
    by segment-id sequence) is removed and the runner-up taken instead; the
    per-tick values are then aggregated exactly like the metric.  Waiting is
    disabled: with it, the fastest route always has near-identical twins.
    Departures where no runner-up exists within ``budget`` legs are flagged
    and make the affected cell infinite.
    """
    net = prepare(net)
    budget = budget or 2 * len(net.locations)
    baseline = maxmin_metric(net, NO_WAIT)
    n = len(net.locations)
    worst = [[0] * n for _ in range(n)]
    flagged = []
    for t_h in net.period.grid():
        for a in range(n):
            ranked = _two_fastest(net, a, t_h, budget)
            for b in range(n):
                if a == b:
                    continue
                if len(ranked[b]) < 2:
                    flagged.append((net.ids[a], net.ids[b], to_ticks(t_h)))
                    worst[a][b] = INF
                else:
                    worst[a][b] = max(worst[a][b], ranked[b][1][0])
    rows = []
    for a in range(n):
        rows.append(tuple(to_ticks(max(worst[a][b], worst[b][a])) for b in range(n)))
    excluded = replace(baseline, values=tuple(rows))
    delta = tuple(
        tuple(x - y for x, y in zip(row_ex, row_base))
        for row_ex, row_base in zip(excluded.values, baseline.values)
    )
    return StabilityReport(baseline, excluded, delta, tuple(flagged))


@dataclass(frozen=True)
class CapacityScenario:
    """Assumed existing traffic per segment id."""

    name: str
    volumes: dict[str, int] = field(default_factory=dict)


class ExistenceError(ValidationFailed):
    """Removing saturated segments left some pair without a route."""


def saturated(net: Network, scenario: CapacityScenario) -> list[str]:
    unknown = set(scenario.volumes) - {s.id for s in net.segments}
    if unknown:
        raise ValueError(f"scenario references unknown segments: {sorted(unknown)}")
    return [
        s.id for s in net.segments
        if s.capacity is not None and scenario.volumes.get(s.id, 0) >= s.capacity
    ]


def capacity_scenario(net: Network, scenario: CapacityScenario,
                      policy: Optional[SearchPolicy] = None, jobs: int = 1) -> MetricMatrix:
    """Max-min metric for a marginal traveller once at-capacity segments are denied."""
    if net.regularized:
        raise ValueError("apply capacity scenarios to the unregularized network")
    removed = set(saturated(net, scenario))
    reduced = replace(net, segments=tuple(s for s in net.segments if s.id not in removed))
    report = validate_network(reduced)
    if not report.ok:
        raise ExistenceError(report, f"scenario {scenario.name!r} breaks route existence")
    return maxmin_metric(prepare(reduced), policy, jobs)


@dataclass(frozen=True)
class RollingSpec:
    """Windows ``[end - window, end]`` stepped by ``stride``, in ticks."""

    window: Number
    stride: Number

    def __post_init__(self):
        if to_half(self.window) <= 0 or to_half(self.stride) <= 0:
            raise ValueError("window and stride must be positive")

    def evaluation_times(self, period: Period) -> list[int]:
        """Window end times on the internal scale."""
        w, s = to_half(self.window), to_half(self.stride)
        if period.start + w > period.end:
            raise DomainError("window longer than the data period")
        return list(range(period.start + w, period.end + 1, s))


def rolling_metrics(net: Network, spec: RollingSpec, policy: Optional[SearchPolicy] = None,
                    jobs: int = 1) -> list[tuple[Fraction, MetricMatrix]]:
    """One max-min metric per window, each regularized against its own window."""
    if net.regularized:
        raise ValueError("roll over the unregularized network")
    w = to_half(spec.window)
    out = []
    for end in spec.evaluation_times(net.period):
        window = replace(net, period=Period(end - w, end))
        out.append((to_ticks(end), maxmin_metric(prepare(window), policy, jobs)))
    return out
