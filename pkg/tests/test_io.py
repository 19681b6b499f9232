import json
import math
from fractions import Fraction

import pytest

from ttmetric import (
    Aggregator, DocumentError, Example, MetricMatrix, builtin_example, dump_network, load_network,
    maxmin_metric, read_matrix, regularize, validate_network, worst_best_matrix, write_matrix,
)
from ttmetric.io import (
    boundary_example, load_scenario, matrix_from_dict, matrix_to_dict, minmin_counterexample,
    network_to_dict,
)
from ttmetric.model import Rule


def _doc(**overrides):
    doc = {
        "schemaVersion": 1,
        "unit": "minute",
        "period": [0, 10],
        "waitingPolicy": "NoWaiting",
        "locations": [{"id": "a"}, {"id": "b"}],
        "segments": [
            {"id": "ab", "from": "a", "to": "b", "profile": [[0, 5]]},
            {"id": "ba", "from": "b", "to": "a", "profile": [[0, 5]]},
        ],
    }
    doc.update(overrides)
    return json.dumps(doc)


@pytest.mark.parametrize("make", [minmin_counterexample, boundary_example])
def test_network_round_trip(make):
    net = make()
    assert load_network(dump_network(net)) == net


def test_regularized_and_open_networks_round_trip():
    reg = regularize(boundary_example())
    assert load_network(dump_network(reg)) == reg
    open_net = builtin_example(Example.INTEGRAL)
    assert network_to_dict(open_net)["boundary"] == "open"
    assert load_network(dump_network(open_net)) == open_net


def test_half_tick_values_survive_serialization():
    reg = regularize(minmin_counterexample())
    doc = network_to_dict(reg)
    assert doc["segments"][-1]["profile"] == [[1440, 5]]


def test_zero_duration_loads_then_fails_validation():
    text = _doc(segments=[
        {"id": "ab", "from": "a", "to": "b", "profile": [[0, 0]]},
        {"id": "ba", "from": "b", "to": "a", "profile": [[0, 5]]},
    ])
    report = validate_network(load_network(text))
    assert report.by_rule(Rule.POSITIVITY)


def test_unsorted_profile_is_a_parse_error():
    text = _doc(segments=[{"id": "ab", "from": "a", "to": "b", "profile": [[10, 1], [5, 1]]}])
    with pytest.raises(DocumentError, match=r"segments\[0\]\.profile: unsorted profile"):
        load_network(text)


@pytest.mark.parametrize("overrides, path", [
    ({"schemaVersion": 2}, "schemaVersion"),
    ({"period": [0]}, "period"),
    ({"waitingPolicy": "Sometimes"}, "waitingPolicy"),
    ({"locations": [{"id": "a"}, {"id": "a"}]}, "locations[1].id"),
    ({"segments": [{"id": "ab", "from": "a", "to": "z", "profile": [[0, 1]]}]}, "segments[0].to"),
    ({"segments": [{"id": "ab", "from": "a", "to": "b", "profile": [[0, 0.3]]}]}, "segments[0].profile[0][1]"),
    ({"segments": [{"id": "ab", "from": "a", "to": "b"}]}, "segments[0].profile"),
])
def test_document_errors_name_their_path(overrides, path):
    with pytest.raises(DocumentError) as info:
        load_network(_doc(**overrides))
    assert info.value.path == path


def test_invalid_json():
    with pytest.raises(DocumentError):
        load_network("{")


def test_builtin_examples():
    m = maxmin_metric(regularize(builtin_example("MinMinCounterexample")))
    assert (m["a", "b"], m["b", "c"], m["a", "c"]) == (60, 60, 45)
    pe2 = builtin_example(Example.BOUNDARY)
    assert worst_best_matrix(pe2)["a", "c"] == 120
    assert maxmin_metric(regularize(pe2))["a", "c"] == 60


def test_csv_single_location():
    m = MetricMatrix(("a",), ((Fraction(0),),), Aggregator.MAX_MIN, True, True, (0, 1))
    assert write_matrix(m, "csv") == "a\n0\n"


def test_csv_boundary_example():
    m = maxmin_metric(regularize(boundary_example()))
    assert write_matrix(m, "csv") == "a,b,c\n0,30,60\n30,0,30\n60,30,0\n"


def test_matrix_json_round_trip():
    m = MetricMatrix(("a", "b"), ((Fraction(0), Fraction(15, 2)), (Fraction(1, 3), math.inf)),
                     Aggregator.INTEGRAL, False, True, (Fraction(0), Fraction(10)))
    assert read_matrix(write_matrix(m, "json")) == m
    assert matrix_to_dict(m)["values"] == [[0, 7.5], ["1/3", "inf"]]
    assert matrix_from_dict(matrix_to_dict(m)) == m


def test_scenario_loading():
    net = boundary_example()
    sc = load_scenario('{"name": "peak", "volumes": {"r2": 3}}', net)
    assert sc.volumes == {"r2": 3}
    with pytest.raises(DocumentError):
        load_scenario('{"volumes": {"zz": 1}}', net)
    with pytest.raises(DocumentError):
        load_scenario('{"volumes": {"r2": -1}}', net)
