"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` for the gate alone; the lines are
echoed in the terminal summary.  ``python tests/test_acceptance.py`` prints
them directly.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from helpers import random_bounded_network, random_open_network  # noqa: E402
from ttmetric import (  # noqa: E402
    CapacityScenario, RollingSpec, best_travel_time, capacity_scenario, check_td_triangle,
    compute_epsilon, construct_integral_violation, integral_aggregate, maxmin_metric,
    minmin_aggregate, oracle_best_travel_time, regularize, rolling_metrics, stability_metric,
    td_triangle_violations, verify_metric_axioms, worst_best_matrix,
)
from ttmetric.analysis import prepare  # noqa: E402
from ttmetric.io import boundary_example, minmin_counterexample  # noqa: E402

RESULTS: list[str] = []

PROPERTY_NETWORKS = 240
ORACLE_NETWORKS = 120


def record(number: int, title: str, ok: bool, detail: str, elapsed: float) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail} [{elapsed:.2f}s]"
    RESULTS.append(line)
    print(line)


def _triple(m, a="a", b="b", c="c"):
    return m[a, b], m[b, c], m[a, c]


def _has_triangle_witness(m, a="a", b="b", c="c") -> bool:
    return any(w[:3] == (a, b, c) for w in verify_metric_axioms(m).triangle.witnesses)


def _property_networks():
    rng = random.Random(20240601)
    return [regularize(random_bounded_network(rng)) for _ in range(PROPERTY_NETWORKS)]


def test_criterion_1_minmin_counterexample():
    start = time.perf_counter()
    net = regularize(minmin_counterexample())
    t_u = _triple(worst_best_matrix(net))
    mm_matrix = minmin_aggregate(net)
    mm = _triple(mm_matrix)
    witness = _has_triangle_witness(mm_matrix)
    elapsed = time.perf_counter() - start
    ok = t_u == (60, 60, 45) and mm == (10, 10, 45) and witness and elapsed < 5
    record(1, "min-min counterexample", ok,
           f"T_U={tuple(map(str, t_u))} min-min={tuple(map(str, mm))} witness(a,b,c)={witness}", elapsed)
    assert ok


def test_criterion_2_boundary_example():
    start = time.perf_counter()
    raw = boundary_example()
    t_u = worst_best_matrix(raw)
    unreg_witness = _has_triangle_witness(t_u)
    eps = compute_epsilon(raw)
    metric = maxmin_metric(regularize(raw, eps))
    values = _triple(metric)
    axioms = verify_metric_axioms(metric).ok
    elapsed = time.perf_counter() - start
    ok = (t_u["a", "c"] == 120 and unreg_witness and eps.value == 15
          and values == (30, 30, 60) and axioms and elapsed < 5)
    record(2, "boundary regularization", ok,
           f"T_U(a,c)={t_u['a', 'c']} witness={unreg_witness} eps={eps.value} "
           f"T=(ab {values[0]}, bc {values[1]}, ac {values[2]}) axioms={axioms}", elapsed)
    assert ok


def test_criterion_3_integral_violation():
    start = time.perf_counter()
    ti = integral_aggregate(construct_integral_violation())
    values = _triple(ti)
    witness = _has_triangle_witness(ti)
    elapsed = time.perf_counter() - start
    ok = values == (10, 60, 80) and witness and elapsed < 10
    record(3, "integral aggregate violation", ok,
           f"T_I={tuple(map(str, values))} witness(a,b,c)={witness}", elapsed)
    assert ok


def test_criterion_4_metric_axioms_on_random_networks():
    start = time.perf_counter()
    failures = []
    for i, net in enumerate(_property_networks()):
        report = verify_metric_axioms(maxmin_metric(net))
        if not report.ok:
            failures.append((i, report))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    record(4, "metric axioms", ok, f"{PROPERTY_NETWORKS} networks, {len(failures)} failing", elapsed)
    assert ok, failures[:3]


def test_criterion_5_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(77)
    mismatches, queries = [], 0
    for i in range(ORACLE_NETWORKS):
        if i % 2:
            net = random_bounded_network(rng)
            if i % 4 == 1:
                net = regularize(net)
        else:
            net = random_open_network(rng, max_locations=5)
        lo, hi = (int(x) for x in net.period.as_ticks())
        for t in range(lo, hi + 1):
            for a in net.ids:
                for b in net.ids:
                    queries += 1
                    got = best_travel_time(net, a, b, t)
                    want = oracle_best_travel_time(net, a, b, t, max_walk_edges=8)
                    if got != want:
                        mismatches.append((i, a, b, t, got, want))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 300
    record(5, "oracle equivalence", ok,
           f"{ORACLE_NETWORKS} networks, {queries} queries, {len(mismatches)} mismatches", elapsed)
    assert ok, mismatches[:5]


def test_criterion_6_time_dependent_triangle():
    start = time.perf_counter()
    nets = _property_networks()
    bad = []
    for i, net in enumerate(nets):
        bad.extend((i,) + v for v in td_triangle_violations(net))
    # the batched sweep is cross-checked against the per-triple check on a sample
    direct = 0
    for net in nets[:20]:
        lo, hi = (int(x) for x in net.period.as_ticks())
        for t in range(lo, hi + 1):
            for a in net.ids:
                for b in net.ids:
                    for c in net.ids:
                        direct += 1
                        if not check_td_triangle(net, a, b, c, t):
                            bad.append(("direct", a, b, c, t))
    elapsed = time.perf_counter() - start
    ok = not bad
    record(6, "time-dependent triangle", ok,
           f"{len(nets)} networks swept, {direct} direct checks, {len(bad)} violations", elapsed)
    assert ok, bad[:5]


def test_criterion_7_scaling_invariance():
    start = time.perf_counter()
    fixtures = {
        "minmin": minmin_counterexample(),
        "boundary": boundary_example(),
        "integral": construct_integral_violation(),
    }
    wrong = []
    for name, net in fixtures.items():
        base = maxmin_metric(prepare(net))
        for k in (2, 5):
            scaled = maxmin_metric(prepare(net.scaled(k)))
            if scaled.values != base.scaled(k).values:
                wrong.append((name, k))
    elapsed = time.perf_counter() - start
    ok = not wrong
    record(7, "scaling invariance", ok, f"{len(fixtures)} fixtures x k in (2, 5), mismatches {wrong}", elapsed)
    assert ok


def test_criterion_8_analysis_sanity():
    start = time.perf_counter()
    fixtures = {
        "minmin": minmin_counterexample(),
        "boundary": boundary_example(),
        "integral": construct_integral_violation(),
    }
    problems = []
    for name, net in fixtures.items():
        report = stability_metric(net)
        if any(d < 0 for row in report.delta for d in row):
            problems.append(f"{name}: negative stability delta")
        baseline = maxmin_metric(prepare(net))
        empty = capacity_scenario(net, CapacityScenario("empty"))
        if empty != baseline or empty.to_array().tobytes() != baseline.to_array().tobytes():
            problems.append(f"{name}: empty scenario differs from baseline")
    windows = 0
    for name, net, spec in (("minmin", fixtures["minmin"], RollingSpec(180, 120)),
                            ("boundary", fixtures["boundary"], RollingSpec(120, 60))):
        for end, m in rolling_metrics(net, spec):
            windows += 1
            if not verify_metric_axioms(m).ok:
                problems.append(f"{name}: window ending {end} fails the axioms")
    elapsed = time.perf_counter() - start
    ok = not problems
    record(8, "analysis sanity", ok,
           f"stability/capacity on {len(fixtures)} fixtures, {windows} rolling windows; {problems or 'no problems'}",
           elapsed)
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    raise SystemExit(1 if failed else 0)
