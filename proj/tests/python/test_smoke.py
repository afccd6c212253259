import math

import pytest

import swipt_ddf as sd


def test_special_functions():
    assert sd.q_function(0.0) == 0.5
    assert abs(sd.bessel_k1(1.0) - 0.6019072301972346) < 1e-12
    assert sd.exp_integral_e1(1.0) == pytest.approx(0.21938393439552029, rel=1e-12)


def test_closed_form_and_numeric():
    c = sd.avg_ser_closed("ps", 0.8, M=2, snr_db=30.0)
    assert c["P_e"] == pytest.approx(c["P_C"] + c["P_E"])
    assert 0.0 < c["epsilon"] < 0.5
    assert c["eta"] == pytest.approx(math.log((1 - c["epsilon"]) / c["epsilon"]))
    n = sd.avg_ser_numeric("ps", 0.8, M=2, snr_db=30.0)
    assert 1 / 3 < c["P_e"] / n < 3


def test_optimal_ratio():
    assert sd.optimal_ratio("ps", "root", M=2, snr_db=30.0) == pytest.approx(0.78, abs=0.03)
    assert 0.0 < sd.optimal_ratio("ts", "closed-min", M=2, snr_db=30.0) < 1.0
    with pytest.raises(sd.NoInteriorOptimum):
        sd.optimal_ratio("ps", "root", snr_db=-20.0)
    with pytest.raises(ValueError):
        sd.optimal_ratio("ts", "root")


def test_simulation_is_deterministic():
    a = sd.simulate_ser(snr_db=15.0, detector="all", trials=20000, seed=3)
    b = sd.simulate_ser(snr_db=15.0, detector="all", trials=20000, seed=3, threads=2)
    assert a == b
    assert [r["detector"] for r in a] == ["exact-mld", "proposed", "sd-only"]
    for r in a:
        assert r["ci_low"] <= r["ser"] <= r["ci_high"]


def test_invalid_input():
    with pytest.raises(ValueError):
        sd.simulate_ser(ratio=1.5)


def test_operation_counts():
    assert sd.count_operations("proposed", 8) == (64, 112, 0, 1)
    assert sd.count_operations("approx-mld", 2) == (82, 156, 8, 26)
    assert sd.count_operations("mld", 2, 1) == (56, 156, 4, 22)
