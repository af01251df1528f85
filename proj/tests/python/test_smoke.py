"""Smoke tests for the python bindings; runnable standalone or under pytest."""

import sys

import numpy as np

import outliermbc as om


def test_version():
    assert om.__version__


def test_beta_cdf_closed_form():
    assert om.beta_cdf(0.0, 1.0, 5.0) == 0.0
    assert om.beta_cdf(1.0, 1.0, 5.0) == 1.0
    y = 0.01
    assert abs(om.beta_cdf(y, 1.0, 148.5) - (1 - (1 - y) ** 148.5)) < 1e-10


def test_chisq_quantile():
    assert abs(om.chisq_quantile(0.99, 2) - 9.21034) < 1e-5


def test_mahalanobis():
    cov = np.array([[2.0, 1.0], [1.0, 2.0]])
    assert abs(om.mahalanobis_sq([1.0, 0.0], [0.0, 0.0], cov) - 2.0 / 3.0) < 1e-12


def test_metrics():
    assert om.adjusted_rand_index([1, 1, 2, 2], [5, 5, 9, 9]) == 1.0
    r = om.outlier_f1([0, 1], [1, 2], 10)
    assert r["tp"] == 1 and r["fp"] == 1 and r["fn"] == 1


def test_simulate_shapes():
    data, labels = om.simulate_tclust(2, "equal", 1, 1)
    assert data.shape == (1000, 2)
    assert labels.count(0) == 100
    again, _ = om.simulate_tclust(2, "equal", 1, 1)
    assert np.array_equal(data, again)

    small, small_labels = om.simulate_illustrative("small", 3)
    assert small.shape == (1010, 2)
    assert small_labels.count(0) == 10


def test_knn_and_gross():
    pts = np.array([[0.0], [1.0], [3.0]])
    assert om.knn_distance(pts, 1) == [1.0, 1.0, 2.0]
    grid = np.array([[float(i % 5), float(i // 5)] for i in range(25)])
    assert om.detect_gross(grid, 8)["rows"] == []


def test_fit_pipeline():
    data, labels = om.simulate_illustrative("small", 1)
    result = om.fit(data, components=3, max_outliers=15, labels=labels)
    assert len(result["curve"]) == 16
    for rule in ("minimum", "backtrack"):
        sol = result[rule]
        assert 0 <= sol["o"] <= 15
        assert len(sol["assignments"]) == 1010
        assert sol["ari"] > 0.9
    assert result["backtrack"]["o"] <= result["minimum"]["o"]


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"ok   {name}")
            except AssertionError as err:
                failures += 1
                print(f"FAIL {name}: {err}")
    if failures:
        sys.exit(1)
    print("python smoke tests passed")
