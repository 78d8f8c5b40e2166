import csv
import io
import json
from fractions import Fraction as F
from math import gcd

import pytest

from oracles import naive_mld
from mld_lab.acc import (
    CoefficientFamily,
    check_stabilization,
    check_system_stabilization,
    default_workers,
    enumerate_system_mlds,
    enumerate_toric_mlds,
    normal_form_cones,
)


def oracle_values(max_index, family):
    out = set()
    for n in range(1, max_index + 1):
        for q in range(n):
            if gcd(q, n) == 1:
                for b1 in family:
                    for b2 in family:
                        out.add(naive_mld((1, 0), (q, n), b1, b2)[0])
    return sorted(out)


def test_family():
    fam = CoefficientFamily.parse("1,0,1/2")
    assert fam.values == (0, F(1, 2), 1)
    assert fam.label == "0,1/2,1"
    with pytest.raises(ValueError):
        CoefficientFamily((0, 0))
    with pytest.raises(ValueError):
        CoefficientFamily(("3/2",))
    with pytest.raises(ValueError):
        CoefficientFamily(())


def test_normal_forms_one_per_unit():
    for n in range(1, 40):
        assert len(normal_form_cones(n)) == sum(1 for q in range(n) if gcd(q, n) == 1)
        assert all(c.index == n for c in normal_form_cones(n))


def test_toric_enumeration_examples():
    zero = CoefficientFamily((0,))
    assert enumerate_toric_mlds(zero, 1) == [2]
    assert enumerate_toric_mlds(zero, 2) == [1, 2]
    assert enumerate_toric_mlds(CoefficientFamily((0, 1)), 1) == [0, 1, 2]


@pytest.mark.parametrize("family, max_index", [((0,), 12), ((0, F(1, 2), 1), 8), ((-1, F(2, 3)), 7)])
def test_toric_enumeration_matches_oracle(family, max_index):
    assert enumerate_toric_mlds(CoefficientFamily(family), max_index) == oracle_values(max_index, family)


def test_sharded_enumeration_is_deterministic():
    fam = CoefficientFamily((0, F(1, 2)))
    assert enumerate_toric_mlds(fam, 15, workers=3) == enumerate_toric_mlds(fam, 15, workers=1)


def test_workers_env(monkeypatch):
    monkeypatch.delenv("MLD_LAB_THREADS", raising=False)
    assert default_workers() == 1
    monkeypatch.setenv("MLD_LAB_THREADS", "4")
    assert default_workers() == 4
    for bad in ("0", "two"):
        monkeypatch.setenv("MLD_LAB_THREADS", bad)
        with pytest.raises(ValueError):
            default_workers()


def test_system_enumeration_examples():
    assert enumerate_system_mlds("circle", 2, 1, [0]) == [1]
    assert enumerate_system_mlds("circle", 2, 2, [0]) == [1]
    assert enumerate_system_mlds("circle", 3, 1, [0]) == [F(2, 3), 1]


def test_system_enumeration_skips_singular():
    # weight 1 circles of length two are singular and must not abort the scan
    assert enumerate_system_mlds("circle", 2, 2, [0, F(1, 2)])
    assert enumerate_system_mlds("interval-no-anchor", 2, 2, [], betas=[1])
    assert enumerate_system_mlds("interval-two-anchors", 3, 2, [0, F(1, 2)])


def test_counts_match_oracle():
    # family {0}: the window (1/4, 1/2) keeps filling up as the index grows
    report = check_stabilization(CoefficientFamily((0,)), 2, (10, 20), [F(1, 4)])
    for bound, count in zip((10, 20), report.counts_above[F(1, 4)]):
        expected = [v for v in oracle_values(bound, (0,)) if F(1, 4) < v < F(1, 2)]
        assert count == len(expected)
    assert report.counts_above[F(1, 4)] == [4, 15]
    assert report.stabilized == {F(1, 4): False}


def test_refinement_is_monotone():
    report = check_stabilization(CoefficientFamily((0, F(1, 2))), 2, (5, 10, 20), [F(1, 8), F(1, 4)])
    steps = report.values_by_step
    for small, large in zip(steps, steps[1:]):
        assert set(small) <= set(large)
    for counts in report.counts_above.values():
        assert counts == sorted(counts)


def test_empty_window_is_stable():
    report = check_stabilization(CoefficientFamily((1,)), 2, (3, 6), [F(1, 4)])
    assert report.counts_above[F(1, 4)] == [0, 0]
    assert report.all_stabilized
    assert report.distinct_values == []


@pytest.mark.parametrize("N, schedule, thresholds", [
    (2, (10, 20), [F(3, 4)]),
    (2, (10, 20), [F(1, 2)]),
    (2, (10,), [F(1, 4)]),
    (2, (20, 10), [F(1, 4)]),
    (0, (10, 20), [F(1, 4)]),
    (2, (10, 20), []),
])
def test_window_errors(N, schedule, thresholds):
    with pytest.raises(ValueError):
        check_stabilization(CoefficientFamily((0,)), N, schedule, thresholds)


def test_report_formats():
    report = check_stabilization(CoefficientFamily((0,)), 2, (4, 8), [F(1, 8), F(1, 4)])
    data = json.loads(report.to_json())
    assert data["thresholds"] == ["1/8", "1/4"]
    assert data["window"] == ["0", "1/2"]
    assert all(isinstance(v, str) and "." not in v for v in data["distinct_values"])
    assert "finite surrogate" in data["note"]
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert list(rows[0]) == ["epsilon", "schedule_index", "max_index", "count", "stabilized"]
    assert len(rows) == 4
    assert "N=2" in report.summary()


def test_system_scan():
    report = check_system_stabilization("circle", [0, F(1, 2)], 2, (2, 3, 4), [F(1, 4)])
    assert report.mode == "system:circle"
    assert all(0 < v < F(1, 2) for v in report.distinct_values)
    above = [v for v in report.distinct_values if v > F(1, 4)]
    assert len(above) == report.counts_above[F(1, 4)][-1]
