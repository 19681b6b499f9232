"""End-to-end runs of the three built-in example networks.

Each demo returns ``(label, expected, computed)`` rows; the expected values
are the hand-derived ones for the example.
"""

from __future__ import annotations

from .io import boundary_example, minmin_counterexample
from .metric import (
    compute_epsilon, construct_integral_violation, integral_aggregate, maxmin_metric,
    minmin_aggregate, regularize, verify_metric_axioms, worst_best_matrix,
)


def _triangle(m, a="a", b="b", c="c"):
    for wit in verify_metric_axioms(m).triangle.witnesses:
        if wit[:3] == (a, b, c):
            return f"{wit[3]} > {wit[4]}"
    return "holds"


def minmin_demo() -> list[tuple[str, object, object]]:
    net = regularize(minmin_counterexample())
    t_u = worst_best_matrix(net)
    mm = minmin_aggregate(net)
    metric = maxmin_metric(net)
    return [
        ("worst-best T_U(a,b)", 60, t_u["a", "b"]),
        ("worst-best T_U(b,c)", 60, t_u["b", "c"]),
        ("worst-best T_U(a,c)", 45, t_u["a", "c"]),
        ("min-min (a,b)", 10, mm["a", "b"]),
        ("min-min (b,c)", 10, mm["b", "c"]),
        ("min-min (a,c)", 45, mm["a", "c"]),
        ("min-min triangle a-b-c", "45 > 20", _triangle(mm)),
        ("max-min is a metric", True, verify_metric_axioms(metric).ok),
    ]


def boundary_demo() -> list[tuple[str, object, object]]:
    raw = boundary_example()
    t_u = worst_best_matrix(raw)
    eps = compute_epsilon(raw)
    metric = maxmin_metric(regularize(raw, eps))
    return [
        ("unregularized T_U(a,c)", 120, t_u["a", "c"]),
        ("unregularized triangle a-b-c", "120 > 60", _triangle(t_u)),
        ("epsilon", 15, eps.value),
        ("regularized T(a,b)", 30, metric["a", "b"]),
        ("regularized T(b,c)", 30, metric["b", "c"]),
        ("regularized T(a,c)", 60, metric["a", "c"]),
        ("regularized max-min is a metric", True, verify_metric_axioms(metric).ok),
    ]


def integral_demo() -> list[tuple[str, object, object]]:
    net = construct_integral_violation()
    ti = integral_aggregate(net)
    metric = maxmin_metric(net)
    return [
        ("T_I(a,b)", 10, ti["a", "b"]),
        ("T_I(b,c)", 60, ti["b", "c"]),
        ("T_I(a,c)", 80, ti["a", "c"]),
        ("integral triangle a-b-c", "80 > 70", _triangle(ti)),
        # the open network has no regularized boundary, so even max-min fails here
        ("max-min triangle a-b-c, open boundary", "130 > 120", _triangle(metric)),
    ]


DEMOS = {"minmin": minmin_demo, "boundary": boundary_demo, "integral": integral_demo}

