"""Locations, time-dependent route segments, networks and their validation.

All times and durations are stored as integers on a half-tick scale: an
input value of ``t`` ticks is held as ``2 * t``.  This keeps the boundary
epsilon (half the shortest duration) exactly representable.  Public
functions take and return values in ticks; helpers ending in ``_h`` or
taking ``*_h`` arguments work on the internal scale.
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_right
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

SCALE = 2
STEP = SCALE  # one input tick on the internal scale

Number = Union[int, Fraction, float, str]


class DomainError(ValueError):
    """A time lies outside the domain on which a quantity is defined."""


def to_half(value: Number) -> int:
    """Convert a tick value to the internal half-tick scale."""
    frac = Fraction(value) * SCALE
    if frac.denominator != 1:
        raise ValueError(f"{value!r} is not a multiple of half a tick")
    return int(frac)


def to_ticks(value_h) -> Union[Fraction, float]:
    """Convert a half-tick value back to ticks; infinity passes through."""
    if value_h == math.inf:
        return math.inf
    return Fraction(int(value_h), SCALE)


def format_ticks(value) -> str:
    """Render a tick quantity: ``60``, ``7.5``, ``6975/101`` or ``inf``."""
    if value == math.inf:
        return "inf"
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    if frac.denominator == 2:
        whole = (abs(frac.numerator) - 1) // 2
        sign = "-" if frac < 0 else ""
        return f"{sign}{whole}.5"
    return f"{frac.numerator}/{frac.denominator}"


class Waiting(str, Enum):
    ALLOWED = "WaitingAllowed"
    NONE = "NoWaiting"


@dataclass(frozen=True)
class Location:
    id: str
    name: Optional[str] = None


@dataclass(frozen=True)
class Period:
    """Closed interval ``[start, end]`` of departure times (half-ticks)."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid period [{self.start}, {self.end}]")
        if self.start % STEP or self.end % STEP:
            raise ValueError("period endpoints must lie on the tick grid")

    @classmethod
    def from_ticks(cls, start: Number, end: Number) -> "Period":
        return cls(to_half(start), to_half(end))

    def grid(self) -> range:
        """Departure ticks of the period, half-tick scale."""
        return range(self.start, self.end + 1, STEP)

    def as_ticks(self) -> tuple[Union[Fraction, float], Union[Fraction, float]]:
        return to_ticks(self.start), to_ticks(self.end)


@dataclass(frozen=True)
class Profile:
    """Piecewise-constant duration as a function of departure time.

    ``durations[i]`` applies on ``[breakpoints[i], breakpoints[i+1])``;
    the last piece extends to infinity.  Half-tick scale.
    """

    breakpoints: tuple[int, ...]
    durations: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(int(b) for b in self.breakpoints))
        object.__setattr__(self, "durations", tuple(int(d) for d in self.durations))
        if not self.breakpoints:
            raise ValueError("empty profile")
        if len(self.breakpoints) != len(self.durations):
            raise ValueError("breakpoints and durations differ in length")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("unsorted profile")

    @classmethod
    def from_ticks(cls, pieces: Iterable[Sequence[Number]]) -> "Profile":
        pieces = list(pieces)
        return cls(tuple(to_half(b) for b, _ in pieces), tuple(to_half(d) for _, d in pieces))

    @classmethod
    def constant(cls, duration: Number, start: Number = 0) -> "Profile":
        return cls.from_ticks([(start, duration)])

    def at(self, t_h: int) -> int:
        i = bisect_right(self.breakpoints, t_h) - 1
        if i < 0:
            raise DomainError(f"time {t_h} precedes the first breakpoint {self.breakpoints[0]}")
        return self.durations[i]

    def pieces_ticks(self) -> list[tuple[Union[Fraction, float], Union[Fraction, float]]]:
        return [(to_ticks(b), to_ticks(d)) for b, d in zip(self.breakpoints, self.durations)]

    def scaled(self, k: int) -> "Profile":
        return Profile(tuple(k * b for b in self.breakpoints), tuple(k * d for d in self.durations))

    @cached_property
    def decreasing_breakpoints(self) -> tuple[int, ...]:
        """Breakpoints at which the duration drops; the only waits worth taking."""
        return tuple(
            b for i, b in enumerate(self.breakpoints)
            if i > 0 and self.durations[i] < self.durations[i - 1]
        )


@dataclass(frozen=True)
class Segment:
    id: str
    source: str
    target: str
    profile: Profile
    mode: Optional[str] = None
    capacity: Optional[int] = None
    synthetic: bool = False

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError(f"segment {self.id!r}: identity routes are implicit, not stored")
        if self.capacity is not None and self.capacity <= 0:
            raise ValueError(f"segment {self.id!r}: capacity must be positive")


@dataclass(frozen=True)
class Network:
    """Locations joined by a directed multigraph of time-dependent segments.

    ``bounded`` networks admit boarding of real segments only at departure
    times inside ``period``.  An unbounded network has no boundary: its
    profiles are the data for every departure time after ``period.start``
    and ``period`` is only the aggregation window.
    """

    locations: tuple[Location, ...]
    segments: tuple[Segment, ...]
    period: Period
    waiting: Waiting = Waiting.ALLOWED
    regularized: bool = False
    bounded: bool = True
    unit: str = "minute"

    def __post_init__(self):
        object.__setattr__(self, "locations", tuple(self.locations))
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "waiting", Waiting(self.waiting))
        ids = [loc.id for loc in self.locations]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate location id")
        seg_ids = [s.id for s in self.segments]
        if len(set(seg_ids)) != len(seg_ids):
            raise ValueError("duplicate segment id")
        known = set(ids)
        for s in self.segments:
            if s.source not in known or s.target not in known:
                raise ValueError(f"segment {s.id!r} references an unknown location")

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(loc.id for loc in self.locations)

    @cached_property
    def index(self) -> dict[str, int]:
        return {lid: i for i, lid in enumerate(self.ids)}

    def boarding_window(self, seg: Segment) -> tuple[int, Optional[int]]:
        """Earliest and latest (``None`` = unbounded) boarding time of ``seg``."""
        if seg.synthetic:
            return seg.profile.breakpoints[0], None
        return self.period.start, (self.period.end if self.bounded else None)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[Segment, int, int, Optional[int]], ...], ...]:
        """Per origin index: ``(segment, target index, board_from, board_until)``."""
        out: list[list] = [[] for _ in self.locations]
        for seg in self.segments:
            lo, hi = self.boarding_window(seg)
            out[self.index[seg.source]].append((seg, self.index[seg.target], lo, hi))
        return tuple(tuple(edges) for edges in out)

    @cached_property
    def max_duration(self) -> int:
        return max((d for s in self.segments for d in s.profile.durations), default=0)

    def horizon(self, t_h: int) -> int:
        """Arrival-time cap for exhaustive searches departing at ``t_h``.

        Past the last breakpoint or boarding-window edge the network is
        static, so anything still reachable is reached within ``|M|``
        further legs of at most ``max_duration`` each.
        """
        changes = [t_h, self.period.start]
        for s in self.segments:
            changes.append(s.profile.breakpoints[-1])
        if self.bounded:
            changes.append(self.period.end + STEP)
        return max(changes) + len(self.locations) * max(self.max_duration, 1)

    def real_segments(self) -> tuple[Segment, ...]:
        return tuple(s for s in self.segments if not s.synthetic)

    def scaled(self, k: int) -> "Network":
        """Every duration, breakpoint and period endpoint multiplied by ``k``."""
        if self.regularized:
            raise ValueError("scale the network before regularizing it")
        segs = tuple(
            Segment(s.id, s.source, s.target, s.profile.scaled(k), s.mode, s.capacity)
            for s in self.segments
        )
        return replace(self, segments=segs, period=Period(k * self.period.start, k * self.period.end))


def make_network(
    locations: Iterable[Union[str, Location]],
    segments: Iterable[tuple],
    period: tuple[Number, Number],
    waiting: Union[Waiting, str] = Waiting.ALLOWED,
    bounded: bool = True,
    unit: str = "minute",
) -> Network:
    """Build a network from tick-valued tuples.

    Each segment is ``(id, source, target, profile)`` where ``profile`` is
    either a constant duration or a list of ``(from_tick, duration)``
    pairs; an optional fifth item is the capacity.
    """
    locs = tuple(loc if isinstance(loc, Location) else Location(loc) for loc in locations)
    segs = []
    for item in segments:
        sid, src, dst, prof = item[:4]
        capacity = item[4] if len(item) > 4 else None
        if isinstance(prof, (int, Fraction, float, str)):
            prof = Profile.constant(prof, start=period[0])
        elif not isinstance(prof, Profile):
            prof = Profile.from_ticks(prof)
        segs.append(Segment(sid, src, dst, prof, capacity=capacity))
    return Network(locs, tuple(segs), Period.from_ticks(*period), Waiting(waiting), bounded=bounded, unit=unit)


def profile_duration(profile: Profile, t: Number) -> Fraction:
    """Duration of the piece containing departure tick ``t``."""
    return to_ticks(profile.at(to_half(t)))


def fifo_check(profile: Profile, period: Period) -> list[int]:
    """Grid ticks ``t`` whose arrival overtakes that of ``t + 1``.

    An empty result means ``t -> t + duration(t)`` is non-decreasing on the
    grid of ``period``.
    """
    bad = []
    for t_h in range(period.start, period.end, STEP):
        if t_h + profile.at(t_h) > t_h + STEP + profile.at(t_h + STEP):
            bad.append(t_h // SCALE)
    return bad


def is_fifo(profile: Profile, start_h: int, end_h: int) -> bool:
    """FIFO over ``[start_h, end_h]``, checking only where the duration drops."""
    for i, b in enumerate(profile.breakpoints):
        if i == 0 or not start_h < b <= end_h:
            continue
        drop = profile.durations[i - 1] - profile.durations[i]
        if drop > STEP:
            return False
    return True


class Rule(str, Enum):
    IDENTITY = "Identity"
    POSITIVITY = "Positivity"
    EXISTENCE = "Existence"
    COMPOSITION = "Composition"
    PROFILE = "Profile"


@dataclass(frozen=True)
class Violation:
    rule: Rule
    witness: dict


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    structural: tuple[Rule, ...] = (Rule.IDENTITY, Rule.COMPOSITION)

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_rule(self, rule: Rule) -> list[Violation]:
        return [v for v in self.violations if v.rule == rule]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "structurallySatisfied": [r.value for r in self.structural],
            "violations": [{"rule": v.rule.value, "witness": v.witness} for v in self.violations],
        }


class ValidationFailed(Exception):
    """Raised where an operation requires a valid network and gets an invalid one."""

    def __init__(self, report: ValidationReport, message: str = "network failed validation"):
        super().__init__(message)
        self.report = report


def reachable(net: Network, origin: int, t_h: int, waiting: Optional[Waiting] = None) -> set[int]:
    """Location indices reachable from ``origin`` departing at ``t_h``.

    Time-ordered exploration of (location, time) states capped at
    ``net.horizon``.  With waiting, the first visit to a location dominates
    every later one.
    """
    waiting = Waiting(waiting or net.waiting)
    cap = net.horizon(t_h)
    seen: set = set()
    found = {origin}
    heap = [(t_h, origin)]
    while heap:
        s, u = heapq.heappop(heap)
        key = u if waiting is Waiting.ALLOWED else (u, s)
        if key in seen:
            continue
        seen.add(key)
        found.add(u)
        for seg, v, lo, hi in net.adjacency[u]:
            if waiting is Waiting.ALLOWED:
                boards = [max(s, lo)] + [b for b in seg.profile.breakpoints if b > max(s, lo)]
            else:
                boards = [s]
            for b in boards:
                if b < lo or (hi is not None and b > hi):
                    continue
                arrival = b + seg.profile.at(b)
                if arrival <= cap:
                    heapq.heappush(heap, (arrival, v))
    return found


def _structural_violations(net: Network) -> list[Violation]:
    out = []
    for seg in net.segments:
        bad = [to_ticks(d) for d in seg.profile.durations if d <= 0]
        if bad:
            out.append(Violation(Rule.POSITIVITY, {"segment": seg.id, "from": seg.source,
                                                   "to": seg.target, "duration": str(bad[0])}))
        if not seg.synthetic and seg.profile.breakpoints[0] > net.period.start:
            out.append(Violation(Rule.PROFILE, {
                "segment": seg.id,
                "problem": "first breakpoint after period start",
                "firstBreakpoint": format_ticks(to_ticks(seg.profile.breakpoints[0])),
            }))
        if seg.synthetic and not net.regularized:
            out.append(Violation(Rule.PROFILE, {"segment": seg.id,
                                                "problem": "synthetic segment on an unregularized network"}))
    if net.regularized:
        covered = {(s.source, s.target) for s in net.segments if s.synthetic}
        for a in net.ids:
            for b in net.ids:
                if a != b and (a, b) not in covered:
                    out.append(Violation(Rule.PROFILE, {"from": a, "to": b,
                                                        "problem": "regularized network lacks a synthetic segment"}))
    return out


def validate_network(net: Network) -> ValidationReport:
    """Check positivity, profile well-formedness and per-tick existence.

    Existence is reported once per ordered pair, witnessed by the first
    failing departure tick together with the number of failing ticks.
    """
    violations = _structural_violations(net)
    # searches need positive durations defined from the period start onwards
    if not any(v.rule in (Rule.POSITIVITY, Rule.PROFILE) for v in violations):
        n = len(net.locations)
        first_fail: dict[tuple[int, int], tuple[int, int]] = {}
        for a in range(n):
            for t_h in net.period.grid():
                found = reachable(net, a, t_h)
                for b in range(n):
                    if b not in found:
                        tick, count = first_fail.get((a, b), (t_h, 0))
                        first_fail[(a, b)] = (tick, count + 1)
        for (a, b), (t_h, count) in sorted(first_fail.items()):
            violations.append(Violation(Rule.EXISTENCE, {
                "from": net.ids[a], "to": net.ids[b],
                "depart": format_ticks(to_ticks(t_h)), "failingTicks": count,
            }))
    return ValidationReport(tuple(violations))


__all__ = [
    "SCALE", "STEP", "DomainError", "to_half", "to_ticks", "format_ticks", "Waiting",
    "Location", "Period", "Profile", "Segment", "Network", "make_network",
    "profile_duration", "fifo_check", "is_fifo", "Rule", "Violation", "ValidationReport",
    "ValidationFailed", "reachable", "validate_network",
]
