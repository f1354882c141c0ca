import json
import math

import pytest

import mcdline


def test_instance_roundtrip():
    inst = mcdline.Instance(8, 3, [(1, 0), (6, 2)])
    assert inst.n == 8
    assert inst.origin == 3
    assert inst.requests == [(1, 0), (6, 2)]
    parsed = mcdline.parse_instance(inst.to_json())
    assert parsed.requests == inst.requests
    assert json.loads(inst.to_json())["n"] == 8


def test_instance_validation():
    with pytest.raises(ValueError):
        mcdline.Instance(4, 9)


def test_triangle_and_exact():
    inst = mcdline.Instance(8, 1, [(4, 2)])
    tri = mcdline.run_triangle(inst)
    opt = mcdline.exact_opt(inst)
    assert tri["feasible"] and opt["feasible"]
    assert opt["total_cost"] == 5
    assert tri["total_cost"] <= 3 * opt["total_cost"]
    assert tri["sum_radii"] <= opt["total_cost"]


def test_lineon_and_report():
    inst = mcdline.generate("uniform", n=128, requests=12, seed=7)
    res = mcdline.run_lineon(inst, assert_level="full")
    assert res["feasible"]
    rep = mcdline.competitive_report(inst)
    assert rep["bound_satisfied"]
    assert rep["cost_lineon"] == res["total_cost"]
    assert rep["bound_rhs"] == pytest.approx(
        8 + math.sqrt(10 * math.log2(rep["padded_n"]))
    )


def test_check_solution_accepts_own_edges():
    inst = mcdline.generate("clustered", n=64, requests=8, seed=3)
    res = mcdline.run_lineon(inst)
    again = mcdline.check_solution(inst, res["edges"])
    assert again["feasible"]
    assert again["total_cost"] == res["total_cost"]


def test_lineonp_never_worse():
    inst = mcdline.generate("staircase", n=1 << 14, requests=6, t_max=40, seed=1)
    few = mcdline.run_lineonp(inst)
    plain = mcdline.run_lineon(inst)
    assert few["feasible"]
    assert few["total_cost"] <= plain["total_cost"]


def test_onrsa_feasible_and_ratio_sane():
    pts = [(1.5, 0.5), (0.5, 1.0), (2.5, 2.0)]
    res = mcdline.run_onrsa(pts, assert_level="full")
    assert res["feasible"]
    opt = mcdline.srsa_exact(pts)
    assert 0 < opt <= res["cost"]


def test_dict_instance_accepted():
    res = mcdline.run_triangle({"n": 4, "origin": 2, "requests": [[1, 1], [3, 1]]})
    assert res["feasible"]
    assert res["total_cost"] >= 3
