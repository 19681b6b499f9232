"""Travel-time metrics from time-dependent route data."""

from .model import (
    DomainError, Location, Network, Period, Profile, Segment, ValidationFailed,
    ValidationReport, Waiting, fifo_check, make_network, profile_duration, validate_network,
)
from .engine import (
    Algorithm, ArrivalLabels, BestTimeTable, PremiseViolated, SearchPolicy, best_travel_time,
    check_td_triangle, earliest_arrival, oracle_best_travel_time, td_triangle_violations,
    travel_time_table,
)
from .metric import (
    Aggregator, AxiomReport, EpsilonChoice, MetricMatrix, compare_aggregators, compute_epsilon,
    construct_integral_violation, directed_worst_best, integral_aggregate, maxmin_metric,
    minmin_aggregate, regularize, verify_metric_axioms, worst_best_matrix,
)
from .analysis import (
    CapacityScenario, ExistenceError, RollingSpec, StabilityReport, capacity_scenario,
    rolling_metrics, stability_metric,
)
from .io import (
    DocumentError, Example, builtin_example, dump_network, load_network, read_matrix,
    write_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "Location", "Network", "Period", "Profile", "Segment", "ValidationFailed",
    "ValidationReport", "Waiting", "fifo_check", "make_network", "profile_duration",
    "validate_network",
    "Algorithm", "ArrivalLabels", "BestTimeTable", "PremiseViolated", "SearchPolicy",
    "best_travel_time", "check_td_triangle", "earliest_arrival", "oracle_best_travel_time",
    "td_triangle_violations", "travel_time_table",
    "Aggregator", "AxiomReport", "EpsilonChoice", "MetricMatrix", "compare_aggregators",
    "compute_epsilon", "construct_integral_violation", "directed_worst_best",
    "integral_aggregate", "maxmin_metric", "minmin_aggregate", "regularize",
    "verify_metric_axioms", "worst_best_matrix",
    "CapacityScenario", "ExistenceError", "RollingSpec", "StabilityReport",
    "capacity_scenario", "rolling_metrics", "stability_metric",
    "DocumentError", "Example", "builtin_example", "dump_network", "load_network",
    "read_matrix", "write_matrix",
]
