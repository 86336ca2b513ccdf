import math

import numpy as np
import pytest

from beesvrp.bench import data_path
from beesvrp.instance import (
    Customer,
    Instance,
    InstanceError,
    Metric,
    convert_cmt,
    distance,
    format_instance,
    parse_instance,
)

from builders import make_instance, random_instance

MINIMAL = """NAME: mini
CAPACITY: 10
DEPOT: 0 0
CUSTOMERS:
1 3 4 5
"""


def test_parse_minimal():
    inst = parse_instance(MINIMAL)
    assert inst.n == 1
    assert inst.capacity == 10
    assert inst.max_duration is None
    assert inst.customers[0].demand == 5


def test_parse_cmt_p01_golden():
    inst = parse_instance((data_path() / "P01E51K05.txt").read_text())
    assert inst.name == "P01E51K05"
    assert inst.n == 50
    assert inst.capacity == 160
    assert inst.max_duration is None
    assert inst.total_demand() == 777


def test_parse_cmt_p06_duration():
    inst = parse_instance((data_path() / "P06D51K06.txt").read_text())
    assert inst.max_duration == 200
    assert inst.customers[0].service_time == 10


def test_demand_exceeding_capacity_names_line():
    bad = MINIMAL.replace("1 3 4 5", "1 3 4 50")
    with pytest.raises(InstanceError, match="line 5.*demand"):
        parse_instance(bad)


def test_duplicate_customer_id_rejected():
    bad = MINIMAL + "1 5 5 2\n"
    with pytest.raises(InstanceError, match="duplicate"):
        parse_instance(bad)


def test_negative_demand_rejected():
    bad = MINIMAL.replace("1 3 4 5", "1 3 4 -1")
    with pytest.raises(InstanceError, match="negative demand"):
        parse_instance(bad)


def test_malformed_header_rejected():
    with pytest.raises(InstanceError, match="line 1"):
        parse_instance("WHAT: 3\n" + MINIMAL)


def test_missing_sections_rejected():
    with pytest.raises(InstanceError, match="CAPACITY"):
        parse_instance("NAME: x\nDEPOT: 0 0\nCUSTOMERS:\n1 1 1 1\n")
    with pytest.raises(InstanceError, match="DEPOT"):
        parse_instance("NAME: x\nCAPACITY: 5\nCUSTOMERS:\n1 1 1 1\n")


def test_distance_examples():
    assert distance(0, 0, 3, 4, Metric.EUCLIDEAN) == 5.0
    assert distance(0, 0, 3, 4, Metric.MANHATTAN) == 7.0
    assert distance(2, 7, 2, 7, Metric.EUCLIDEAN) == 0.0
    # the taxicab metric must not depend on direction
    assert distance(3, 4, 0, 0, Metric.MANHATTAN) == 7.0


def test_matrix_matches_metric():
    inst = make_instance([(3, 4), (6, 0)], [1, 1], 10, metric=Metric.MANHATTAN)
    assert inst.distance_between(0, 1) == 7.0
    assert inst.distance_between(1, 2) == abs(6 - 3) + abs(0 - 4)
    assert inst.distance_between(1, 1) == 0.0


def test_candidate_list_collinear():
    # customers on a line at x = 0, 1, 3: nearest to the first is the second
    inst = make_instance([(0, 0), (1, 0), (3, 0)], [1, 1, 1], 10, depot=(10, 10))
    assert inst.candidate_lists[1].tolist() == [2, 3]
    assert inst.candidate_lists[2].tolist() == [1, 3]
    assert inst.candidate_lists[3].tolist() == [2, 1]


def test_candidate_list_tie_breaks_by_id():
    inst = make_instance([(0, 0), (0, 2), (2, 0)], [1, 1, 1], 10, depot=(5, 5))
    # customers 2 and 3 are equidistant from customer 1
    assert inst.candidate_lists[1].tolist() == [2, 3]


def test_candidate_lists_are_permutations():
    for seed in range(5):
        inst = random_instance(seed)
        for v in range(1, inst.n + 1):
            lv = inst.candidate_lists[v].tolist()
            assert len(lv) == inst.n - 1
            assert sorted(lv) == [c for c in range(1, inst.n + 1) if c != v]


def test_candidate_lists_consistent_with_matrix():
    for seed in range(5):
        inst = random_instance(seed)
        for v in range(inst.n + 1):
            lv = inst.candidate_lists[v]
            dists = inst.dist[v, lv]
            assert np.all(np.diff(dists) >= -1e-12)


def test_triangle_inequality_sampled():
    rng = np.random.default_rng(7)
    inst = random_instance(3)
    m = inst.n + 1
    for _ in range(200):
        a, b, c = rng.integers(0, m, size=3)
        assert inst.dist[a, c] <= inst.dist[a, b] + inst.dist[b, c] + 1e-9


def test_format_parse_round_trip():
    for seed in (0, 3):
        inst = random_instance(seed)
        again = parse_instance(format_instance(inst), inst.metric)
        assert again.name == inst.name
        assert again.n == inst.n
        assert again.capacity == inst.capacity
        assert again.max_duration == inst.max_duration
        for a, b in zip(inst.customers, again.customers):
            assert (a.id, a.x, a.y, a.demand, a.service_time) == (
                b.id,
                b.x,
                b.y,
                b.demand,
                b.service_time,
            )
        # third generation must be byte-identical
        assert format_instance(again) == format_instance(inst)


def test_convert_cmt_layout():
    raw = "3 50 999999 0\n10 10\n0 0 5\n20 0 7\n20 20 9\n"
    text = convert_cmt(raw, "tiny")
    inst = parse_instance(text)
    assert inst.n == 3
    assert inst.capacity == 50
    assert inst.max_duration is None  # sentinel duration means unconstrained
    assert inst.depot == (10.0, 10.0)


def test_convert_cmt_with_duration():
    raw = "2 50 120 8\n0 0\n3 4 5\n6 8 7\n"
    inst = parse_instance(convert_cmt(raw, "t"))
    assert inst.max_duration == 120
    assert all(c.service_time == 8 for c in inst.customers)


def test_convert_cmt_short_file_rejected():
    with pytest.raises(InstanceError):
        convert_cmt("5 10 0 0\n0 0\n1 1 1\n")


def test_instance_invariants():
    with pytest.raises(InstanceError):
        Instance("x", (0, 0), [], 10)
    with pytest.raises(InstanceError):
        make_instance([(1, 1)], [5], 0)
    with pytest.raises(InstanceError):
        make_instance([(1, 1)], [5], 10, max_duration=0)
    with pytest.raises(InstanceError):
        Customer(1, 0, 0, -3)


def test_mean_edge_cost():
    inst = make_instance([(3, 4)], [1], 10)
    # single edge depot-customer of length 5
    assert math.isclose(inst.mean_edge_cost, 5.0)
