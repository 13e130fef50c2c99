"""Tests for the two-task classification instances."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import fd_jacobian, fd_relative_error
from mograd import (
    Dataset,
    InputError,
    accuracy,
    as_problem,
    circle_label,
    from_csv,
    generate_dataset,
    loss_gradients,
    losses,
    quadrant_label,
    solve_direction,
    split_params,
    to_csv,
)
from mograd.multitask import _features


def _toy(kind="quadrants"):
    points = np.array([[0.0, 0.0], [1.5, 0.0], [0.0, 1.5], [0.5, 0.5]])
    labels1 = (
        quadrant_label(points)
        if kind == "quadrants"
        else (points[:, 0] * points[:, 1] >= 0).astype(int)
    )
    return Dataset(
        kind=kind,
        seed=0,
        points=points,
        features=_features(kind, points),
        labels_task1=labels1,
        labels_task2=circle_label(points),
        train_idx=np.arange(4),
        test_idx=np.arange(4),
    )


class TestGeometry:
    @pytest.mark.parametrize(
        "point, label",
        [
            ((1.0, 1.0), 1),
            ((-0.5, 0.3), 2),
            ((-1.0, -1.0), 3),
            ((0.5, -2.0), 4),
            ((0.0, 0.0), 1),   # axes count toward the positive side
            ((0.0, -1.0), 4),
            ((-0.1, 0.0), 2),
        ],
    )
    def test_quadrant_label(self, point, label):
        assert quadrant_label(np.array([point]))[0] == label

    @pytest.mark.parametrize(
        "point, label",
        [((0.0, 0.0), 1), ((1.0, 0.0), 0), ((0.5, 0.5), 1), ((0.8, 0.8), 0)],
    )
    def test_circle_label_is_strict(self, point, label):
        assert circle_label(np.array([point]))[0] == label

    def test_circle_fraction_matches_area(self):
        ds = generate_dataset("quadrants", N=100_000, seed=3)
        assert ds.labels_task2.mean() == pytest.approx(math.pi / 16.0, abs=0.01)

    def test_diagonal_labels(self):
        ds = generate_dataset("diagonals", N=1000, seed=0)
        expected = (ds.points[:, 0] * ds.points[:, 1] >= 0).astype(int)
        assert np.array_equal(ds.labels_task1, expected)


class TestDataset:
    def test_split_sizes_and_disjointness(self):
        ds = generate_dataset("quadrants", N=10_000, seed=0)
        assert ds.train_idx.size == 8000
        assert ds.test_idx.size == 2000
        assert np.intersect1d(ds.train_idx, ds.test_idx).size == 0
        union = np.union1d(ds.train_idx, ds.test_idx)
        assert np.array_equal(union, np.arange(10_000))

    def test_deterministic_per_seed(self):
        a = generate_dataset("diagonals", N=100, seed=5)
        b = generate_dataset("diagonals", N=100, seed=5)
        assert np.array_equal(a.points, b.points)
        assert np.array_equal(a.train_idx, b.train_idx)
        c = generate_dataset("diagonals", N=100, seed=6)
        assert not np.array_equal(a.points, c.points)

    def test_shapes(self):
        q = generate_dataset("quadrants", N=100, seed=0)
        assert (q.n_features, q.n_classes, q.n_params) == (5, 4, 25)
        d = generate_dataset("diagonals", N=100, seed=0)
        assert (d.n_features, d.n_classes, d.n_params) == (6, 2, 12)

    def test_bad_inputs(self):
        with pytest.raises(InputError):
            generate_dataset("spiral")
        with pytest.raises(InputError):
            generate_dataset("quadrants", N=5)

    def test_split_params_shapes(self):
        ds = generate_dataset("quadrants", N=100, seed=0)
        w1, w2 = split_params(ds, np.arange(25, dtype=float))
        assert w1.shape == (5, 4)
        assert w2.shape == (5,)
        assert_allclose(w2, np.arange(20, 25))
        with pytest.raises(InputError):
            split_params(ds, np.zeros(24))


class TestLosses:
    def test_zero_params_give_log_class_counts(self):
        q = generate_dataset("quadrants", N=1000, seed=1)
        j1, j2 = losses(q, "train", np.zeros(25))
        assert j1 == pytest.approx(math.log(4.0), rel=1e-12)
        assert j2 == pytest.approx(math.log(2.0), rel=1e-12)
        d = generate_dataset("diagonals", N=1000, seed=1)
        assert_allclose(losses(d, "train", np.zeros(12)), math.log(2.0), rtol=1e-12)

    @pytest.mark.parametrize("kind", ["quadrants", "diagonals"])
    def test_gradients_match_finite_differences(self, kind, rng):
        ds = generate_dataset(kind, N=200, seed=2)
        for _ in range(3):
            theta = rng.normal(scale=0.5, size=ds.n_params)
            analytic = loss_gradients(ds, "train", theta)
            numeric = fd_jacobian(
                lambda t: np.array(losses(ds, "train", t)), theta
            )
            assert fd_relative_error(analytic, numeric) < 1e-6

    @pytest.mark.parametrize("kind", ["quadrants", "diagonals"])
    def test_cross_task_blocks_exactly_zero(self, kind, rng):
        ds = generate_dataset(kind, N=100, seed=0)
        g = loss_gradients(ds, "train", rng.normal(size=ds.n_params))
        d = ds.n_features
        cut = ds.n_params - d
        assert np.array_equal(g[0, cut:], np.zeros(d))
        assert np.array_equal(g[1, :cut], np.zeros(cut))

    def test_direction_norm_bounded_by_single_task_gradients(self, rng):
        ds = generate_dataset("quadrants", N=500, seed=4)
        for _ in range(5):
            g = loss_gradients(ds, "train", rng.normal(size=25))
            sol = solve_direction(g)
            norms = np.sum(g * g, axis=1)
            assert sol.omega <= norms.min() + 1e-12

    def test_unknown_split_rejected(self):
        ds = generate_dataset("quadrants", N=100, seed=0)
        with pytest.raises(InputError):
            losses(ds, "validation", np.zeros(25))

    def test_empty_split_rejected(self):
        ds = _toy()
        ds.test_idx = np.array([], dtype=int)
        with pytest.raises(InputError):
            losses(ds, "test", np.zeros(25))


class TestAccuracy:
    def test_zero_params_predict_first_class(self):
        ds = generate_dataset("quadrants", N=2000, seed=0)
        acc1, acc2, lo = accuracy(ds, "test", np.zeros(25))
        idx = ds.test_idx
        assert acc1 == pytest.approx(np.mean(ds.labels_task1[idx] == 1))
        assert acc2 == pytest.approx(np.mean(ds.labels_task2[idx] == 0))
        assert lo == min(acc1, acc2)

    def test_separable_toy_reaches_perfect_accuracy(self):
        ds = _toy("quadrants")
        params = np.zeros(25)
        w1 = np.zeros((5, 4))
        w1[0, 0] = 1.0  # constant logit favors class 1, the label of all 4 points
        params[:20] = w1.ravel()
        params[20:] = [1.0, 0.0, 0.0, -1.0, -1.0]  # logit 1 - x1^2 - x2^2
        acc1, acc2, lo = accuracy(ds, "train", params)
        assert (acc1, acc2, lo) == (1.0, 1.0, 1.0)


class TestProblemView:
    def test_as_problem_shapes_and_counters(self):
        ds = generate_dataset("quadrants", N=100, seed=0)
        p = as_problem(ds)
        assert p.name == "multitask-quadrants"
        assert (p.n, p.m) == (25, 2)
        theta = np.zeros(25)
        f = p.evaluate(theta)
        assert_allclose(f, [math.log(4.0), math.log(2.0)], rtol=1e-12)
        g = p.jacobian(theta)
        assert g.shape == (2, 25)
        assert p.counters.objective_evals == 1
        assert p.counters.gradient_evals == 1

    def test_problem_uses_train_split(self):
        ds = generate_dataset("diagonals", N=100, seed=1)
        p = as_problem(ds)
        theta = np.full(12, 0.1)
        assert_allclose(p.evaluate(theta), losses(ds, "train", theta), rtol=1e-15)


class TestCsv:
    def test_round_trip(self, tmp_path):
        ds = generate_dataset("diagonals", N=50, seed=9)
        path = tmp_path / "points.csv"
        to_csv(ds, path)
        back = from_csv(path, "diagonals", seed=9)
        assert np.array_equal(back.points, ds.points)
        assert np.array_equal(back.labels_task1, ds.labels_task1)
        assert np.array_equal(back.labels_task2, ds.labels_task2)
        assert np.array_equal(back.train_idx, ds.train_idx)
        assert np.array_equal(back.test_idx, ds.test_idx)
        assert np.array_equal(back.features, ds.features)

    def test_header(self, tmp_path):
        ds = generate_dataset("quadrants", N=20, seed=0)
        path = tmp_path / "points.csv"
        to_csv(ds, path)
        header = path.read_text().splitlines()[0]
        assert header == "x1,x2,label1,label2,split"
