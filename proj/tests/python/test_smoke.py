import json
import math

import pytest

import paddy_moisture as pm


def test_activation_and_gain():
    assert pm.sigmoid_gain(0.0, 0.7) == 0.5
    assert pm.adaptive_gain(0.5) == 1.0
    assert pm.adaptive_gain(0.8) == pytest.approx(1.0 / 1.6)


def test_hargreaves():
    assert pm.hargreaves_et0(30.0, 24.0, 20.0, 35.0) == pytest.approx(4.341425, abs=1e-6)
    assert pm.hargreaves_et0(25.0, 25.0, 25.0, 35.0) == 0.0
    assert pm.extraterrestrial_radiation(80.0, 355) == 0.0
    assert 30.0 < pm.extraterrestrial_radiation(pm.DEFAULT_LATITUDE_DEG, 300) < 40.0


def test_kc_curve():
    assert pm.kc_at(0) == pytest.approx(1.05)
    assert pm.kc_at(60) == pytest.approx(1.20)
    assert pm.kc_at(117) == pytest.approx(1.20 - 0.30 * 27 / 28)
    with pytest.raises(pm.PaddyError):
        pm.kc_at(118)


def test_metrics():
    obs = [1.0, 2.0, 3.0, 4.0]
    assert pm.r_squared(obs, [2.0, 4.0, 6.0, 8.0]) == pytest.approx(1.0)
    assert pm.rmse(obs, obs) == 0.0
    with pytest.raises(pm.PaddyError):
        pm.r_squared([1.0, 1.0], [1.0, 2.0])


def test_train_and_persist(tmp_path):
    season = pm.synthetic_season(3)
    assert len(season["theta"]) == 118
    model, loss = pm.train_et0(season["tmax"], season["tavg"], season["tmin"], season["date"][0], epochs=200)
    assert len(loss) == 200 and loss[-1] < loss[0]
    path = tmp_path / "et0.txt"
    model.save(path)
    again = pm.Et0Model.load(path)
    assert again.predict(31.0, 24.0, 19.0) == model.predict(31.0, 24.0, 19.0)

    mm, _ = pm.train_moisture(season["et0"], season["precip"], season["kc"], season["theta"], epochs=100)
    est = mm.simulate(season["et0"], season["precip"], season["kc"], season["theta"][:1])
    assert len(est) == 118 and est[0] == season["theta"][0]
    assert all(0.0 <= v <= 1.0 for v in est)


def test_run_experiment(tmp_path):
    cfg = json.loads(pm.default_config())
    cfg["et0_training"]["epochs"] = 50
    cfg["moisture_training"]["epochs"] = 50
    out = pm.run_experiment(json.dumps(cfg), tmp_path / "report")
    assert set(out["metrics"]) == {"et0/train", "et0/validation", "theta/train", "theta/validation"}
    assert all(0.0 <= m["r2"] <= 1.0 for m in out["metrics"].values())
    assert (tmp_path / "report" / "metrics.csv").exists()
    assert not math.isnan(out["et0_loss"][-1])

    cfg["surprise"] = 1
    with pytest.raises(pm.PaddyError, match="unknown key"):
        pm.run_experiment(json.dumps(cfg))
