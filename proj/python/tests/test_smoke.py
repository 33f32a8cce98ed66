import json

import pytest

import hcount


def test_field_invariants():
    K = hcount.build_field("x^2 - 2")
    assert (K.d, K.r, K.s, K.disc) == (2, 2, 0, "8")
    gauss = hcount.build_field("x^2 + 1")
    assert (gauss.r, gauss.s, gauss.disc) == (0, 1, "-4")


def test_heightball_counts():
    K = hcount.build_field("x^2 - 2")
    O = hcount.maximal_order(K)
    pts = hcount.heightball(K, O, 1, "3/2")
    assert len(pts) == 5  # 0, +-1, +-sqrt2
    Q = hcount.build_field("x - 1")
    assert len(hcount.heightball(Q, hcount.maximal_order(Q), 2, "5/2")) == 25


def test_census_and_classification():
    K = hcount.build_field("x^2 - 2")
    ctx = hcount.extension_context(K, hcount.build_field("x - 1"))
    assert ctx.e == 2 and ctx.m == 1
    res = hcount.run_census(ctx, hcount.maximal_order(K), 1, "3/2")
    assert res["total"] == 5
    assert res["zero_count"] == 1
    assert res["partition_ok"]


def test_pisot_and_volumes():
    K = hcount.build_field("x^2 - 2")
    assert hcount.count_pisot(K, "2") == 4
    assert hcount.vol_Z(1, 0, 1, 3.0) == pytest.approx(2 * 3.0)
    est, sigma = hcount.mc_volume_Z(2, 0, 1, 2.0, 200000, 7)
    assert abs(est - hcount.vol_Z(2, 0, 1, 2.0)) < 4 * sigma


def test_predict_series():
    Q = hcount.build_field("x - 1")
    s = hcount.build_series(Q, 2, 2, hcount.quadratic_census(200))
    assert s.t == 1 and len(s.D) == 2
    assert hcount.main_term_series(s, 1.0) == pytest.approx(s.D[0])
    assert hcount.condition_check(2, 1, 12)["verdict"]


def test_experiment_report_is_json():
    rep = json.loads(hcount.run_experiment("x - 1", 1, ["5/2", "21/2"]))
    assert rep["schema"] == 1
    assert [r["observed"] for r in rep["rows"]] == [5, 21]
