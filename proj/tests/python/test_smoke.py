import math

import pytest

import hdnet


def test_network_round_trip():
    net = hdnet.Network([0.5, math.inf], [math.inf, 0.5], name="ht2")
    assert net.n == 2
    assert net.l[1] == math.inf
    back = hdnet.Network.from_json(net.to_json())
    assert back == net
    assert back.name == "ht2"


def test_invalid_network_raises_value_error():
    with pytest.raises(ValueError):
        hdnet.Network([1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        hdnet.Network([-1.0], [1.0])


def test_single_relay_capacity_and_schedule():
    res = hdnet.hd_capacity(hdnet.Network([1.0], [0.5]))
    assert res["value"] == pytest.approx(1 / 3, abs=1e-12)
    assert res["schedule"]["0"] == pytest.approx(1 / 3, abs=1e-12)
    assert res["schedule"]["1"] == pytest.approx(2 / 3, abs=1e-12)
    assert hdnet.single_relay_capacity(1.0, 0.5) == pytest.approx(1 / 3)


def test_worst_case_family():
    for n in range(2, 7):
        net = hdnet.worst_case(n)
        assert hdnet.hd_capacity(net)["value"] == pytest.approx(1.0, abs=1e-9)
        rep = hdnet.select(net, k=n - 1, strategy="exhaustive")
        assert rep["fraction"] == pytest.approx((n - 1) / n, abs=1e-9)


def test_exact_mode():
    res = hdnet.hd_capacity(hdnet.worst_case(4), exact=True)
    assert res["exact"] == "1"


def test_two_phase_schedule_rate():
    net = hdnet.worst_case(6)
    sched = hdnet.two_phase_schedule(6)
    assert hdnet.fixed_schedule_rate(net, sched) == pytest.approx(1.0, abs=1e-12)
    assert hdnet.fd_capacity(net) == pytest.approx(1.0, abs=1e-12)


def test_half_tight_adversarial_removal():
    rep = hdnet.select(hdnet.half_tight(4), k=3, strategy="worst-drop", force_remove=[4])
    assert rep["fraction"] == pytest.approx(0.5, abs=1e-9)
    assert rep["meets_bound"]


def test_dual_matches_primal():
    for seed in range(20):
        net = hdnet.random_network(4, seed)
        assert hdnet.dual_capacity(net) == pytest.approx(hdnet.hd_capacity(net)["value"], abs=1e-6)


def test_worked_example_thresholds():
    # {1,2,5,7}, {4,5}, {2,4,5,6} over [1:7] as bitmasks; f = max element.
    sets = [0b1010011, 0b0011000, 0b0111010]
    lhs, rhs, holds = hdnet.check_lemma2([1, 2, 3, 4, 5, 6, 7], sets)
    assert (lhs, rhs, holds) == (18.0, 17.0, True)
    assert hdnet.threshold_sets(7, sets) == [0b1111011, 0b0011010, 0b0010000]


def test_guarantee_bound():
    assert hdnet.guarantee_bound(10, 1, "exhaustive") == 0.25
    assert hdnet.guarantee_bound(10, 7, "exhaustive") == 0.7


def test_guard_exceeded():
    with pytest.raises(hdnet.GuardExceeded):
        hdnet.select(hdnet.random_network(11, 1), k=5, strategy="exhaustive")


def test_verify_and_sweep():
    assert "fig2" in hdnet.verify_suites()
    rep = hdnet.verify("guarantees", trials=5)
    assert rep["ok"] and rep["instances"] > 0
    rows = hdnet.sweep("worst-case", 2, 5)
    assert [r["N"] for r in rows] == [2, 3, 4, 5]
    for r in rows:
        assert r["fraction"] == pytest.approx((r["N"] - 1) / r["N"], abs=1e-9)
