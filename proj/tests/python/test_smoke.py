import json

import numpy as np
import pytest

import elastoloc as el


def test_solve_zero_amplitude_gives_zero_field():
    field = el.solve((0.15, 0.0, 0.025), amplitude=0.0)
    assert np.all(np.asarray(field.nodal) == 0.0)
    assert field.displacement((0.1, 0.01, 0.02)) == [0.0, 0.0, 0.0]


def test_solve_is_linear_in_amplitude():
    p = (0.2, -0.01, 0.03)
    a = np.asarray(el.solve(p).features())
    b = np.asarray(el.solve(p, amplitude=2.0).features())
    assert np.allclose(b, 2 * a, rtol=1e-9, atol=0)


def test_generate_shapes_and_label_bounds():
    x, y = el.generate(12, seed=3)
    assert x.shape == (12, 60)
    assert y.shape == (12, 3)
    assert len(el.feature_names("microphone")) == 60
    assert len(el.feature_names("accelerometer")) == 48
    assert np.all((y[:, 0] > 0) & (y[:, 0] < 0.3))
    assert np.all(np.abs(y[:, 1]) < 0.05)
    x2, _ = el.generate(12, seed=3)
    assert np.array_equal(x, x2)


def test_invalid_width_raises():
    with pytest.raises(el.InvalidArgument):
        el.solve((0.1, 0.0, 0.0), eps=0.0)


def test_pipeline_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    x = rng.uniform(-1, 1, (40, 5))
    y = np.column_stack([x[:, 0], 2 * x[:, 1], x[:, 2] - x[:, 3]])
    for family in el.FAMILIES:
        pipe = el.Pipeline.fit(family, x, y, {"n_estimators": 5} if family == "forest" else {})
        assert pipe.family == family
        path = tmp_path / f"{family}.model"
        pipe.save(path)
        again = el.Pipeline.load(path)
        assert np.array_equal(pipe.predict(x), again.predict(x))


def test_knn_single_neighbour_memorises():
    rng = np.random.default_rng(1)
    x = rng.uniform(size=(30, 4))
    y = rng.uniform(size=(30, 3))
    pipe = el.Pipeline.fit("knn", x, y, {"n_neighbors": 1, "weights": "uniform"})
    assert el.mse(y, pipe.predict(x)) == 0.0


def test_metrics_identity():
    rng = np.random.default_rng(2)
    t, p = rng.normal(size=(25, 3)), rng.normal(size=(25, 3))
    assert el.mse(t, p) == pytest.approx(np.mean((t - p) ** 2), rel=1e-12)
    assert el.mse(t, p) == pytest.approx(np.mean(el.per_coordinate_mse(t, p)), rel=1e-12)
    report = el.evaluate(t, p, "m")
    assert report["n_samples"] == 25
    assert report["mean_distance"] == pytest.approx(np.mean(np.linalg.norm(t - p, axis=1)))


def test_grid_search_reports_every_combination():
    rng = np.random.default_rng(3)
    x = rng.uniform(size=(40, 3))
    y = np.column_stack([x[:, 0], x[:, 1], x[:, 2]])
    result = el.grid_search("knn", {"n_neighbors": [1, 3], "weights": ["uniform", "distance"]}, x, y, folds=4)
    assert len(result["rows"]) == 4
    means = [r["mean_mse"] for r in result["rows"]]
    assert result["best"] == means.index(min(means))
    assert all(len(r["fold_mse"]) == 4 for r in result["rows"])


def test_run_generate_and_train(tmp_path):
    cfg = {"output_dir": str(tmp_path), "n_samples": 30, "seed": 5}
    outputs, manifest = el.run("generate", cfg)
    data = [str(p) for p in outputs if str(p).endswith(".csv")]
    assert len(data) == 1
    x, y = el.load_dataset(data[0])
    assert x.shape == (30, 60)
    cfg.update({"data": data, "models": ["linear", "knn"]})
    outputs, manifest = el.run("train", cfg)
    assert json.loads(manifest.read_text())["command"] == "train"
    with pytest.raises(ValueError):
        el.run("train", {"output_dir": str(tmp_path), "bogus_key": 1})
