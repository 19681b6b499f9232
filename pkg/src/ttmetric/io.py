"""Network documents, matrix export and the built-in example networks."""

from __future__ import annotations

import csv
import io as _io
import json
import math
from enum import Enum
from fractions import Fraction
from typing import Any, Union

from .model import (
    Location, Network, Period, Profile, Segment, Waiting, format_ticks, make_network, to_half,
)
from .metric import Aggregator, MetricMatrix, construct_integral_violation

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed input document; the message starts with the offending path."""

    def __init__(self, path: str, problem: str):
        super().__init__(f"{path}: {problem}")
        self.path = path
        self.problem = problem


def _number(value: Fraction) -> Union[int, float]:
    """JSON form of a half-tick-exact tick value."""
    return int(value) if value.denominator == 1 else float(value)


def network_to_dict(net: Network) -> dict:
    doc: dict[str, Any] = {
        "schemaVersion": SCHEMA_VERSION,
        "unit": net.unit,
        "period": [_number(x) for x in net.period.as_ticks()],
        "waitingPolicy": net.waiting.value,
        "locations": [],
        "segments": [],
    }
    if not net.bounded:
        doc["boundary"] = "open"
    if net.regularized:
        doc["regularized"] = True
    for loc in net.locations:
        entry = {"id": loc.id}
        if loc.name is not None:
            entry["name"] = loc.name
        doc["locations"].append(entry)
    for seg in net.segments:
        entry: dict[str, Any] = {"id": seg.id, "from": seg.source, "to": seg.target}
        if seg.mode is not None:
            entry["mode"] = seg.mode
        if seg.capacity is not None:
            entry["capacity"] = seg.capacity
        if seg.synthetic:
            entry["synthetic"] = True
        entry["profile"] = [[_number(b), _number(d)] for b, d in seg.profile.pieces_ticks()]
        doc["segments"].append(entry)
    return doc


def dump_network(net: Network) -> str:
    return json.dumps(network_to_dict(net), indent=2) + "\n"


def _tick(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(path, "expected a number")
    try:
        return to_half(value)
    except ValueError:
        raise DocumentError(path, "not a multiple of half a tick") from None


def _require(obj: dict, key: str, kind, path: str):
    if key not in obj:
        raise DocumentError(f"{path}.{key}" if path else key, "missing")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise DocumentError(f"{path}.{key}" if path else key, f"expected {getattr(kind, '__name__', kind)}")
    return value


def network_from_dict(doc: Any) -> Network:
    if not isinstance(doc, dict):
        raise DocumentError("$", "expected an object")
    version = _require(doc, "schemaVersion", int, "")
    if version != SCHEMA_VERSION:
        raise DocumentError("schemaVersion", f"unsupported version {version}")
    unit = _require(doc, "unit", str, "")
    period = _require(doc, "period", list, "")
    if len(period) != 2:
        raise DocumentError("period", "expected [start, end]")
    start, end = _tick(period[0], "period[0]"), _tick(period[1], "period[1]")
    try:
        per = Period(start, end)
    except ValueError as exc:
        raise DocumentError("period", str(exc)) from None
    try:
        waiting = Waiting(doc.get("waitingPolicy", Waiting.ALLOWED.value))
    except ValueError:
        raise DocumentError("waitingPolicy", f"unknown policy {doc.get('waitingPolicy')!r}") from None
    boundary = doc.get("boundary", "closed")
    if boundary not in ("closed", "open"):
        raise DocumentError("boundary", "expected 'closed' or 'open'")

    locations = []
    seen = set()
    for i, item in enumerate(_require(doc, "locations", list, "")):
        path = f"locations[{i}]"
        if not isinstance(item, dict):
            raise DocumentError(path, "expected an object")
        lid = _require(item, "id", str, path)
        if lid in seen:
            raise DocumentError(f"{path}.id", f"duplicate location id {lid!r}")
        seen.add(lid)
        name = item.get("name")
        if name is not None and not isinstance(name, str):
            raise DocumentError(f"{path}.name", "expected str")
        locations.append(Location(lid, name))

    segments = []
    seg_ids = set()
    for i, item in enumerate(_require(doc, "segments", list, "")):
        path = f"segments[{i}]"
        if not isinstance(item, dict):
            raise DocumentError(path, "expected an object")
        sid = _require(item, "id", str, path)
        if sid in seg_ids:
            raise DocumentError(f"{path}.id", f"duplicate segment id {sid!r}")
        seg_ids.add(sid)
        src = _require(item, "from", str, path)
        dst = _require(item, "to", str, path)
        for key, lid in (("from", src), ("to", dst)):
            if lid not in seen:
                raise DocumentError(f"{path}.{key}", f"unknown location {lid!r}")
        if src == dst:
            raise DocumentError(path, "segment from a location to itself")
        raw = _require(item, "profile", list, path)
        if not raw:
            raise DocumentError(f"{path}.profile", "empty profile")
        bps, durs = [], []
        for k, piece in enumerate(raw):
            ppath = f"{path}.profile[{k}]"
            if not isinstance(piece, list) or len(piece) != 2:
                raise DocumentError(ppath, "expected [fromTick, duration]")
            bps.append(_tick(piece[0], f"{ppath}[0]"))
            durs.append(_tick(piece[1], f"{ppath}[1]"))
        if any(x >= y for x, y in zip(bps, bps[1:])):
            raise DocumentError(f"{path}.profile", "unsorted profile")
        capacity = item.get("capacity")
        if capacity is not None and (isinstance(capacity, bool) or not isinstance(capacity, int)
                                     or capacity <= 0):
            raise DocumentError(f"{path}.capacity", "expected a positive integer")
        mode = item.get("mode")
        if mode is not None and not isinstance(mode, str):
            raise DocumentError(f"{path}.mode", "expected str")
        segments.append(Segment(sid, src, dst, Profile(tuple(bps), tuple(durs)), mode, capacity,
                                bool(item.get("synthetic", False))))

    return Network(tuple(locations), tuple(segments), per, waiting,
                   regularized=bool(doc.get("regularized", False)),
                   bounded=boundary == "closed", unit=unit)


def load_network(text: Union[str, bytes]) -> Network:
    """Parse a network document.  Structure only; see ``validate_network`` for semantics."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return network_from_dict(doc)


class Example(str, Enum):
    MIN_MIN = "MinMinCounterexample"
    BOUNDARY = "BoundaryExample"
    INTEGRAL = "IntegralViolation"


def minmin_counterexample() -> Network:
    """One day in minutes; ``a -> b`` is quick from 17:00, ``b -> c`` from 10:00, each for an hour."""
    return make_network(
        ["a", "b", "c"],
        [
            ("r1", "a", "b", [(0, 60), (1020, 10), (1080, 60)]),
            ("r2", "b", "c", [(0, 60), (600, 10), (660, 60)]),
            ("r3", "a", "c", 45),
            ("r1-rev", "b", "a", 60),
            ("r2-rev", "c", "b", 60),
            ("r3-rev", "c", "a", 45),
        ],
        period=(0, 1439),
        waiting=Waiting.NONE,
    )


def boundary_example() -> Network:
    """Stationary eight hours: ``a -> c`` 2h direct, or two half-hour legs via ``b``."""
    return make_network(
        ["a", "b", "c"],
        [
            ("r1", "a", "c", 120),
            ("r2", "a", "b", 30),
            ("r3", "b", "c", 30),
            ("r1-rev", "c", "a", 120),
            ("r2-rev", "b", "a", 30),
            ("r3-rev", "c", "b", 30),
        ],
        period=(0, 480),
        waiting=Waiting.NONE,
    )


def builtin_example(name: Union[Example, str]) -> Network:
    name = Example(name)
    if name is Example.MIN_MIN:
        return minmin_counterexample()
    if name is Example.BOUNDARY:
        return boundary_example()
    return construct_integral_violation()


def _cell(value) -> Union[int, float, str]:
    if value == math.inf:
        return "inf"
    frac = Fraction(value)
    if frac.denominator in (1, 2):
        return _number(frac)
    return format_ticks(frac)


def matrix_to_dict(m: MetricMatrix) -> dict:
    return {
        "aggregator": m.aggregator.value,
        "symmetrized": m.symmetrized,
        "regularized": m.regularized,
        "unit": m.unit,
        "period": [_cell(x) for x in m.period],
        "locations": list(m.locations),
        "values": [[_cell(v) for v in row] for row in m.values],
    }


def _parse_cell(value, path: str):
    if value == "inf":
        return math.inf
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            raise DocumentError(path, f"bad value {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(path, "expected a number")
    return Fraction(value)


def matrix_from_dict(doc: dict) -> MetricMatrix:
    try:
        locations = tuple(doc["locations"])
        values = tuple(
            tuple(_parse_cell(v, f"values[{i}][{j}]") for j, v in enumerate(row))
            for i, row in enumerate(doc["values"])
        )
        return MetricMatrix(
            locations, values, Aggregator(doc["aggregator"]), bool(doc["symmetrized"]),
            bool(doc["regularized"]),
            tuple(_parse_cell(x, "period") for x in doc["period"]), doc.get("unit", "minute"),
        )
    except KeyError as exc:
        raise DocumentError(str(exc.args[0]), "missing") from None


def write_matrix(m: MetricMatrix, fmt: str = "csv") -> str:
    """Render ``m`` as CSV (header of ids, one row per origin) or a JSON document."""
    if fmt == "json":
        return json.dumps(matrix_to_dict(m), indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown matrix format {fmt!r}")
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(m.locations)
    for row in m.values:
        writer.writerow([format_ticks(v) for v in row])
    return buf.getvalue()


def read_matrix(text: str) -> MetricMatrix:
    return matrix_from_dict(json.loads(text))


def scenario_from_dict(doc: Any, net: Network):
    from .analysis import CapacityScenario

    if not isinstance(doc, dict):
        raise DocumentError("$", "expected an object")
    volumes = doc.get("volumes", {})
    if not isinstance(volumes, dict):
        raise DocumentError("volumes", "expected an object")
    known = {s.id for s in net.segments}
    for sid, vol in volumes.items():
        if sid not in known:
            raise DocumentError(f"volumes.{sid}", "unknown segment id")
        if isinstance(vol, bool) or not isinstance(vol, int) or vol < 0:
            raise DocumentError(f"volumes.{sid}", "expected a non-negative integer")
    return CapacityScenario(str(doc.get("name", "scenario")), dict(volumes))


def load_scenario(text: str, net: Network):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return scenario_from_dict(doc, net)


__all__ = [
    "SCHEMA_VERSION", "DocumentError", "network_to_dict", "network_from_dict", "dump_network",
    "load_network", "Example", "minmin_counterexample", "boundary_example", "builtin_example",
    "matrix_to_dict", "matrix_from_dict", "write_matrix", "read_matrix", "load_scenario",
    "scenario_from_dict",
]
