import math

import pytest

import banach_ortho as bo


def test_version_and_kinds():
    assert bo.__version__
    kinds = bo.known_kinds()
    for k in ["bj_orthogonal", "range_scan", "numerical_index", "blaschke_orthogonal"]:
        assert k in kinds


def test_euclidean_orthogonality():
    space = bo.Space.lp("real", 2, 2.0)
    verdict = bo.bj_orthogonal(space, [1.0, 0.0], [0.0, 1.0])
    assert verdict["decision"]
    assert abs(verdict["margin"]) < 1e-9

    verdict = bo.bj_orthogonal(space, [1.0, 0.0], [1.0, 0.0])
    assert not verdict["decision"]
    assert verdict["margin"] == pytest.approx(-1.0, abs=1e-6)


def test_sup_norm_witness():
    space = bo.Space.lp("real", 2, float("inf"))
    phi = bo.james_witness(space, [1.0, 1.0], [1.0, -1.0])
    assert phi is not None
    assert phi[0] == pytest.approx(0.5)
    assert phi[1] == pytest.approx(0.5)


def test_l1_smoothness():
    space = bo.Space.lp("real", 2, 1.0)
    smooth, diameter, exhaustive = space.is_smooth_point([1.0, 0.0])
    assert not smooth
    assert diameter == pytest.approx(2.0)
    assert exhaustive


def test_blaschke_is_inner():
    val = bo.blaschke_eval(1, [0.5 + 0.0j], 1j)
    assert abs(abs(val) - 1.0) < 1e-12


def test_numerical_radius_interval():
    space = bo.Space.lp("real", 2, 1.0)
    lower, upper, exhaustive = bo.numerical_radius(space, [1.0, 0.0], [0.0, 1.0])
    assert lower == pytest.approx(1.0)
    assert upper == pytest.approx(1.0)
    assert exhaustive


def test_problem_roundtrip():
    report = bo.run_problem(
        {
            "kind": "bj_orthogonal",
            "space": {"field": "real", "dim": 2, "kind": {"p": 2}},
            "x": [1, 0],
            "y": [0, 1],
        }
    )
    assert report["payload"]["result"]["decision"]


def test_capability_error_maps_to_python():
    with pytest.raises(bo.CapabilityError):
        bo.run_problem(
            {
                "kind": "dual_extreme_points",
                "space": {"field": "real", "dim": 2, "kind": {"p": 3}},
            }
        )


def test_suite_repeatable():
    a = bo.run_suite("invariants", 3)
    b = bo.run_suite("invariants", 3)
    assert a["payload"] == b["payload"]
    assert a["payload"]["all_pass"]
