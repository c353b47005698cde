import math

import pytest

import blindmon


def test_design():
    assert blindmon.compute_v(0.025, 0.2, 1.0) == pytest.approx(15.697759, rel=1e-6)
    assert blindmon.n_req(10.0, 2.0) == 40.0
    with pytest.raises(ValueError):
        blindmon.compute_v(0.0, 0.2, 1.0)


def test_distributions():
    assert blindmon.normal_quantile(0.975) == pytest.approx(1.959963984540054, abs=1e-12)
    assert blindmon.normal_cdf(0.0) == 0.5
    assert blindmon.noncentral_chisq_cdf(5, 0.0, 3.0) == pytest.approx(
        blindmon.central_chisq_cdf(5, 3.0), abs=1e-15
    )
    with pytest.raises(ValueError):
        blindmon.noncentral_chisq_cdf(0, 1.0, 1.0)


def test_accumulator():
    acc = blindmon.PairAccumulator()
    with pytest.raises(RuntimeError):
        acc.blinded_variance()
    for x, y in [(1.0, 2.0), (3.0, 5.0), (4.0, 4.0)]:
        acc.push_pair(x, y)
    assert acc.n == 3
    values = [1.0, 2.0, 3.0, 5.0, 4.0, 4.0]
    mean = sum(values) / 6
    assert acc.blinded_variance() == pytest.approx(sum((v - mean) ** 2 for v in values) / 5)
    delta = acc.mean_x - acc.mean_y
    assert acc.m2_z == pytest.approx(acc.m2_x + acc.m2_y + 3 * delta * delta / 2)
    with pytest.raises(ValueError):
        acc.push_pair(math.nan, 0.0)


def test_run_on_stream():
    pairs = [(-1.0, 1.0)] * 20
    result = blindmon.run_on_stream(pairs, v=10.0, n1=5, mode="unblinded")
    assert result["stopped"]
    assert result["n_stop"] == 5
    assert len(result["trace"]) == 1
    with pytest.raises(blindmon.InsufficientDataError):
        blindmon.run_on_stream(pairs[:6], v=1000.0, n1=5, max_n=50)


def test_run_scenario_is_reproducible():
    kwargs = dict(v=10.0, sigma=1.0, mu1=2.0, replications=300, seed=5)
    a = blindmon.run_scenario(**kwargs, workers=1)
    b = blindmon.run_scenario(**kwargs, workers=3)
    assert a["blinded"]["n_stop"] == b["blinded"]["n_stop"]
    assert a["unblinded"]["mean_n"] == b["unblinded"]["mean_n"]
    assert set(a) == {"blinded", "unblinded"}
    assert a["blinded"]["bound_table"] == pytest.approx(21.5)


def test_theory():
    assert blindmon.mean_bound(10, 1.0, math.sqrt(10.0), 1.0, variant="table") == pytest.approx(11.75)
    assert blindmon.second_moment_bound(10, 1.0, math.sqrt(10.0), 1.0) == pytest.approx(410.0625)
    assert blindmon.tail_bound_chisq(10, 100.0, 0.5, 1.0, 10.0) == pytest.approx(
        0.03221588520424603, rel=1e-10
    )
    assert blindmon.tail_bound_sum(10, 100.0, 0.5) == pytest.approx(0.22909800280161322, rel=1e-12)
    with pytest.raises(ValueError, match="epsilon < q"):
        blindmon.tail_bound_sum(10, 100.0, 0.8, 0.75)
    t = blindmon.asymptotic_targets(1000.0, 1.0, 2.0)
    assert t["clt_var_v"] == pytest.approx(1.5)
    assert t["ratio_limit_v"] == pytest.approx(2.0)


def test_invariance():
    sets = [(100.0, 1.0, 0.0, 0.0), (25.0, 2.0, 5.0, 0.0), (4.0, 5.0, 1.0, 0.0)]
    u = blindmon.invariance_harness(100.0, sets, "unblinded", replications=200)
    assert u["identical"]
    b = blindmon.invariance_harness(100.0, sets, "blinded", replications=200)
    assert b["divergent_replications"] > 0
    assert len(b["first_divergent_n_stop"]) == 3


def test_table_csv():
    text = blindmon.table_csv(2, replications=20, workers=1)
    lines = text.strip().split("\n")
    assert lines[0].startswith("mu1,n_req,sigma,v,")
    assert len(lines) == 16


def test_verify_identity():
    checks = blindmon.verify("identity")
    assert checks and all(passed for _, passed, _, _ in checks)
