"""Command-line front end.

Exit codes: 0 success, 1 parse/IO/argument error, 2 validation failure,
3 metric-axiom violation, 4 route existence lost under a capacity scenario.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import demos
from .analysis import (
    ExistenceError, RollingSpec, capacity_scenario, prepare, rolling_metrics, saturated,
    stability_metric,
)
from .engine import SearchPolicy, earliest_arrival
from .io import (
    DocumentError, load_network, load_scenario, matrix_to_dict, write_matrix,
)
from .metric import (
    compare_aggregators, integral_aggregate, maxmin_metric, minmin_aggregate,
    verify_metric_axioms,
)
from .model import DomainError, ValidationFailed, Waiting, format_ticks, validate_network

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_AXIOM, EXIT_EXISTENCE = 0, 1, 2, 3, 4

AGGREGATORS = {
    "maxmin": maxmin_metric,
    "minmin": minmin_aggregate,
    "integral": integral_aggregate,
}


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load(path: str):
    return load_network(Path(path).read_text(encoding="utf-8"))


def _cmd_validate(args) -> tuple[str, int]:
    report = validate_network(_load(args.network))
    return _dumps(report.to_dict()), EXIT_OK if report.ok else EXIT_INVALID


def _cmd_tt(args) -> tuple[str, int]:
    net = _load(args.network)
    if args.regularize:
        net = prepare(net)
    policy = SearchPolicy(waiting=Waiting.NONE if args.no_wait else None)
    labels = earliest_arrival(net, args.origin, args.depart, policy)
    tt = labels.travel_time(args.target)
    out = {
        "from": args.origin,
        "to": args.target,
        "depart": format_ticks(labels.departure),
        "travelTime": format_ticks(tt),
        "walk": [
            {"segment": leg.segment, "board": format_ticks(leg.board), "arrive": format_ticks(leg.arrive)}
            for leg in (labels.path(args.target) if tt != float("inf") else [])
        ],
    }
    return _dumps(out), EXIT_OK


def _axiom_block(report, fmt: str) -> str:
    if fmt == "json":
        return ""
    lines = []
    for name, result in report.results().items():
        status = "pass" if result.passed else "FAIL"
        lines.append(f"# {name}: {status}")
        for wit in result.witnesses:
            lines.append("#   " + " ".join(w if isinstance(w, str) else format_ticks(w) for w in wit))
    return "\n".join(lines) + "\n"


def _cmd_metric(args) -> tuple[str, int]:
    net = _load(args.network)
    if not args.no_regularize:
        net = prepare(net)
    m = AGGREGATORS[args.aggregator](net, jobs=args.jobs)
    report = verify_metric_axioms(m)
    if args.out == "json":
        text = _dumps({"matrix": matrix_to_dict(m), "axioms": report.to_dict()})
    else:
        text = write_matrix(m, "csv") + _axiom_block(report, "csv")
    return text, EXIT_OK if report.ok else EXIT_AXIOM


def _cmd_compare(args) -> tuple[str, int]:
    net = _load(args.network)
    if not args.no_regularize:
        net = prepare(net)
    out = {}
    for agg, m in compare_aggregators(net, jobs=args.jobs).items():
        report = verify_metric_axioms(m)
        out[agg.value] = {
            "matrix": matrix_to_dict(m),
            "axioms": {name: r.passed for name, r in report.results().items()},
        }
    return _dumps(out), EXIT_OK


def _cmd_stability(args) -> tuple[str, int]:
    report = stability_metric(_load(args.network))
    out = {
        "baseline": matrix_to_dict(report.baseline),
        "excluded": matrix_to_dict(report.excluded),
        "delta": [[format_ticks(v) for v in row] for row in report.delta],
        "flagged": [[a, b, format_ticks(t)] for a, b, t in report.flagged],
    }
    return _dumps(out), EXIT_OK


def _cmd_capacity(args) -> tuple[str, int]:
    net = _load(args.network)
    scenario = load_scenario(Path(args.scenario).read_text(encoding="utf-8"), net)
    removed = saturated(net, scenario)
    try:
        m = capacity_scenario(net, scenario, jobs=args.jobs)
    except ExistenceError as exc:
        out = {"scenario": scenario.name, "removed": removed, "error": str(exc),
               "validation": exc.report.to_dict()}
        return _dumps(out), EXIT_EXISTENCE
    out = {"scenario": scenario.name, "removed": removed, "matrix": matrix_to_dict(m)}
    return _dumps(out), EXIT_OK


def _cmd_rolling(args) -> tuple[str, int]:
    net = _load(args.network)
    series = rolling_metrics(net, RollingSpec(args.window, args.stride), jobs=args.jobs)
    out = []
    code = EXIT_OK
    for end, m in series:
        ok = verify_metric_axioms(m).ok
        code = code if ok else EXIT_AXIOM
        out.append({"windowEnd": format_ticks(end), "axiomsOk": ok, "matrix": matrix_to_dict(m)})
    return _dumps(out), code


def _show(value) -> str:
    if isinstance(value, bool) or isinstance(value, str):
        return str(value)
    return format_ticks(value)


def _cmd_demo(args) -> tuple[str, int]:
    rows = demos.DEMOS[args.name]()
    width = max(len(label) for label, _, _ in rows)
    lines = [f"{'check':<{width}}  {'expected':>10}  {'computed':>10}  ok"]
    all_ok = True
    for label, expected, computed in rows:
        ok = expected == computed
        all_ok &= ok
        lines.append(f"{label:<{width}}  {_show(expected):>10}  {_show(computed):>10}  {'yes' if ok else 'NO'}")
    return "\n".join(lines) + "\n", EXIT_OK if all_ok else EXIT_AXIOM


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ttmetric", description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for per-tick searches")
    ap.add_argument("--out-file", default=None, help="write output here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the network's consistency requirements")
    p.add_argument("network")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("tt", help="best travel time and walk for one departure")
    p.add_argument("network")
    p.add_argument("--from", dest="origin", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--depart", required=True)
    p.add_argument("--no-wait", action="store_true")
    p.add_argument("--regularize", action="store_true", help="regularize before searching")
    p.set_defaults(func=_cmd_tt)

    p = sub.add_parser("metric", help="aggregated matrix and metric-axiom report")
    p.add_argument("network")
    p.add_argument("--no-regularize", action="store_true")
    p.add_argument("--aggregator", choices=sorted(AGGREGATORS), default="maxmin")
    p.add_argument("--out", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_metric)

    p = sub.add_parser("compare-aggregators", help="max-min, min-min and integral side by side")
    p.add_argument("network")
    p.add_argument("--no-regularize", action="store_true")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("stability", help="metric after excluding each fastest walk")
    p.add_argument("network")
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("capacity", help="metric with at-capacity segments removed")
    p.add_argument("network")
    p.add_argument("--scenario", required=True)
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("rolling", help="metric per rolling window")
    p.add_argument("network")
    p.add_argument("--window", required=True)
    p.add_argument("--stride", required=True)
    p.set_defaults(func=_cmd_rolling)

    p = sub.add_parser("demo", help="run a built-in example end to end")
    p.add_argument("name", choices=sorted(demos.DEMOS))
    p.set_defaults(func=_cmd_demo)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        text, code = args.func(args)
    except ValidationFailed as exc:
        text, code = _dumps({"error": str(exc), "validation": exc.report.to_dict()}), EXIT_INVALID
    except (DocumentError, DomainError, OSError, ValueError, KeyError) as exc:
        print(f"ttmetric: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out_file:
        Path(args.out_file).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
