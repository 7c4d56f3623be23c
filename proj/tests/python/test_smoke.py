import json
import math
import pathlib

import pytest

import practrel as pr

CONFIGS = pathlib.Path(__file__).resolve().parents[2] / "configs"


def coin_pair():
    space = pr.ParameterSpace(-0.5, 0.5)
    h0 = pr.RegionSet([pr.Interval(-0.106, 0.106)])
    h1 = pr.RegionSet([pr.Interval(-0.5, -0.106, hi_open=True), pr.Interval(0.106, 0.5, lo_open=True)])
    return pr.HypothesisPair(space, h0, h1)


def test_coin_partition():
    part = pr.partition(pr.LossSpec.coin_demo())
    assert part.crossings == pytest.approx([-0.106, 0.106], abs=1e-6)
    assert len(part.relevant) == 2
    assert 0.0 in part.negligible
    assert 0.106 not in part.relevant


def test_loss_values():
    demo = pr.LossSpec.coin_demo()
    assert demo.evaluate(0.0, "a1") == pytest.approx(0.106 / 0.394 * 0.5, rel=1e-14)
    assert demo.difference(0.3) < 0
    with pytest.raises(ValueError):
        demo.evaluate(0.7, "a0")


def test_hypothesis_checks():
    demo = pr.LossSpec.coin_demo()
    assert pr.check_complete(coin_pair(), demo)["holds"]
    space = pr.ParameterSpace(-0.5, 0.5)
    partial = pr.HypothesisPair(space, pr.RegionSet([pr.Interval(0, 0)]), pr.RegionSet([pr.Interval(0.3, 0.3)]))
    assert not pr.check_complete(partial, demo)["holds"]
    assert pr.check_partial(partial, demo)["holds"]


def test_decisions():
    post = pr.posterior_update(pr.BinomialModel(20, 20))
    assert post.params == (21.0, 1.0)
    assert pr.decide(post, coin_pair(), 1.0)["decision"] == "a1"
    mid = pr.posterior_update(pr.BinomialModel(10, 5))
    assert pr.decide(mid, coin_pair(), 1.0)["decision"] == "a0"
    assert pr.decide(mid, coin_pair(), 0.01, 100.0)["decision"] == "indeterminate"


def test_normal_posterior():
    post = pr.posterior_update(pr.NormalKnownVarModel(1, 2.0, 1.0, 0.0, 10.0))
    assert post.mean() == pytest.approx(2.0 / 1.01, rel=1e-12)
    assert post.sd() == pytest.approx(1.0 / math.sqrt(1.01), rel=1e-12)


def test_comparators():
    assert pr.nhst_point_null(pr.BinomialModel(10, 10))["p_value"] == pytest.approx(0.001953125)
    tost = pr.tost_equivalence(pr.NormalKnownVarModel(10000, 0.0, 1.0), (-0.106, 0.106))
    assert tost["verdict"] == "equivalent"
    bf = pr.interval_bayes_factor(pr.BinomialModel(10, 10), coin_pair())
    assert bf["bayes_factor"] > 1


def test_simulate_and_cli(tmp_path):
    rows = pr.simulate(str(CONFIGS / "aspirin_scenario.json"), threads=2)
    by_proc = {r["procedure"]: r["frequencies"] for r in rows}
    assert by_proc["nhst"]["reject"] >= 0.8
    assert by_proc["rope"]["accept_a0"] >= 0.95
    assert by_proc["hypothesis_ratio"]["a0"] >= 0.95

    code, out, _ = pr.run_cli(["decide", "--config", str(CONFIGS / "coin_decide.json")])
    assert code == 0
    assert json.loads(out)["decision"] == "a1"
    code, _, err = pr.run_cli(["partition", "--config", str(tmp_path / "missing.json")])
    assert code == 2
    assert "cannot read" in err
