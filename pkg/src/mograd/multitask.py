"""Synthetic two-task classification instances.

Points are drawn uniformly in the square [-2, 2]^2.  Two example kinds
are provided, each defining two tasks over a shared feature vector:

* ``quadrants``: Task 1 assigns the quadrant (classes 1..4, softmax with
  categorical cross-entropy), Task 2 flags membership in the unit circle
  (logistic with binary cross-entropy).  Features [1, x1, x2, x1^2, x2^2].
* ``diagonals``: Task 1 flags the main-diagonal quadrant pair
  (x1*x2 >= 0), Task 2 the unit circle; both binary cross-entropy.
  Features [1, x1, x2, x1*x2, x1^2, x2^2].

The two losses share a parameter vector but touch disjoint blocks, so
the training problem is a clean bi-objective instance with block-sparse
gradients.  Parameters flatten as the Task 1 block (row-major) followed
by the Task 2 weight vector; the all-zero vector is the standard start.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .problems import InputError, MultiObjectiveProblem

KINDS = ("quadrants", "diagonals")

# Cross-entropy probability clamp.
_CLIP = 1e-12


@dataclass
class Dataset:
    kind: str
    seed: int
    points: np.ndarray        # N x 2
    features: np.ndarray      # N x d
    labels_task1: np.ndarray  # quadrant class 1..4, or binary 0/1
    labels_task2: np.ndarray  # binary 0/1
    train_idx: np.ndarray
    test_idx: np.ndarray

    @property
    def n_features(self):
        return self.features.shape[1]

    @property
    def n_classes(self):
        return 4 if self.kind == "quadrants" else 2

    @property
    def n_params(self):
        d = self.n_features
        return d * 4 + d if self.kind == "quadrants" else 2 * d


def quadrant_label(points):
    """Quadrants 1..4 counterclockwise from (+,+); x>=0 counts as positive."""
    right = points[:, 0] >= 0
    top = points[:, 1] >= 0
    labels = np.empty(len(points), dtype=int)
    labels[right & top] = 1
    labels[~right & top] = 2
    labels[~right & ~top] = 3
    labels[right & ~top] = 4
    return labels


def circle_label(points):
    """1 inside the open unit circle, 0 outside."""
    return (np.einsum("ij,ij->i", points, points) < 1.0).astype(int)


def _features(kind, points):
    x1, x2 = points[:, 0], points[:, 1]
    ones = np.ones(len(points))
    if kind == "quadrants":
        return np.column_stack([ones, x1, x2, x1**2, x2**2])
    return np.column_stack([ones, x1, x2, x1 * x2, x1**2, x2**2])


def generate_dataset(kind, N=10_000, seed=0):
    """Sample points, label them geometrically, and split 80/20.

    Deterministic from the seed: the generator first draws the N points,
    then the permutation defining the split.
    """
    if kind not in KINDS:
        raise InputError(f"kind must be one of {KINDS}, got {kind!r}")
    if N < 10:
        raise InputError(f"N must be at least 10, got {N}")
    rng = np.random.default_rng(seed)
    points = rng.uniform(-2.0, 2.0, size=(N, 2))
    perm = rng.permutation(N)
    n_train = int(round(0.8 * N))
    if kind == "quadrants":
        labels1 = quadrant_label(points)
    else:
        labels1 = (points[:, 0] * points[:, 1] >= 0).astype(int)
    return Dataset(
        kind=kind,
        seed=seed,
        points=points,
        features=_features(kind, points),
        labels_task1=labels1,
        labels_task2=circle_label(points),
        train_idx=np.sort(perm[:n_train]),
        test_idx=np.sort(perm[n_train:]),
    )


def split_params(dataset, params):
    """Unflatten the parameter vector into (task-1 weights, task-2 weights)."""
    params = np.asarray(params, dtype=float)
    if params.shape != (dataset.n_params,):
        raise InputError(
            f"params have shape {params.shape}, expected ({dataset.n_params},)"
        )
    d = dataset.n_features
    if dataset.kind == "quadrants":
        return params[: d * 4].reshape(d, 4), params[d * 4 :]
    return params[:d], params[d:]


def _split_indices(dataset, split):
    if split == "train":
        return dataset.train_idx
    if split == "test":
        return dataset.test_idx
    raise InputError(f"split must be 'train' or 'test', got {split!r}")


def _softmax(logits):
    z = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _binary_ce(p, y):
    p = np.clip(p, _CLIP, 1.0 - _CLIP)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def losses(dataset, split, params):
    """Mean cross-entropies (J1, J2) of the two tasks on one split."""
    idx = _split_indices(dataset, split)
    if idx.size == 0:
        raise InputError("empty split")
    X = dataset.features[idx]
    w1, w2 = split_params(dataset, params)
    if dataset.kind == "quadrants":
        probs = _softmax(X @ w1)
        picked = probs[np.arange(len(idx)), dataset.labels_task1[idx] - 1]
        j1 = float(-np.mean(np.log(np.clip(picked, _CLIP, 1.0 - _CLIP))))
    else:
        j1 = _binary_ce(_sigmoid(X @ w1), dataset.labels_task1[idx])
    j2 = _binary_ce(_sigmoid(X @ w2), dataset.labels_task2[idx])
    return j1, j2


def loss_gradients(dataset, split, params):
    """Analytic gradient rows, shape (2, P); cross-task blocks are zero."""
    idx = _split_indices(dataset, split)
    if idx.size == 0:
        raise InputError("empty split")
    X = dataset.features[idx]
    N = len(idx)
    w1, w2 = split_params(dataset, params)
    out = np.zeros((2, dataset.n_params))
    d = dataset.n_features
    if dataset.kind == "quadrants":
        probs = _softmax(X @ w1)
        onehot = np.zeros_like(probs)
        onehot[np.arange(N), dataset.labels_task1[idx] - 1] = 1.0
        out[0, : d * 4] = (X.T @ (probs - onehot)).ravel() / N
    else:
        p = _sigmoid(X @ w1)
        out[0, :d] = X.T @ (p - dataset.labels_task1[idx]) / N
    p2 = _sigmoid(X @ w2)
    out[1, dataset.n_params - d :] = X.T @ (p2 - dataset.labels_task2[idx]) / N
    return out


def accuracy(dataset, split, params):
    """(task-1 accuracy, task-2 accuracy, their minimum) on one split.

    Task 1 predicts the argmax class (ties to the lowest class), binary
    tasks predict 1 only on strictly positive logits, matching the
    two-class argmax convention.
    """
    idx = _split_indices(dataset, split)
    if idx.size == 0:
        raise InputError("empty split")
    X = dataset.features[idx]
    w1, w2 = split_params(dataset, params)
    if dataset.kind == "quadrants":
        pred1 = np.argmax(X @ w1, axis=1) + 1
    else:
        pred1 = (X @ w1 > 0).astype(int)
    pred2 = (X @ w2 > 0).astype(int)
    acc1 = float(np.mean(pred1 == dataset.labels_task1[idx]))
    acc2 = float(np.mean(pred2 == dataset.labels_task2[idx]))
    return acc1, acc2, min(acc1, acc2)


def as_problem(dataset):
    """The training task as a bi-objective problem over the flat parameters.

    Objectives and gradients are computed on the train split; evaluation
    counters behave exactly as for any other problem, so the
    objective-function-free property of a solver is observable here too.
    """
    name = f"multitask-{dataset.kind}"

    def objectives(theta):
        return np.array(losses(dataset, "train", theta))

    def jac(theta):
        return loss_gradients(dataset, "train", theta)

    return MultiObjectiveProblem(
        name, dataset.n_params, 2, np.zeros(dataset.n_params), objectives, jac
    )


def to_csv(dataset, path):
    """Write points, labels, and split membership for inspection."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x1", "x2", "label1", "label2", "split"])
        membership = np.full(len(dataset.points), "test", dtype=object)
        membership[dataset.train_idx] = "train"
        for (x1, x2), l1, l2, s in zip(
            dataset.points, dataset.labels_task1, dataset.labels_task2, membership
        ):
            writer.writerow([repr(float(x1)), repr(float(x2)), l1, l2, s])


def from_csv(path, kind, seed=0):
    """Rebuild a dataset from :func:`to_csv` output; features are recomputed."""
    if kind not in KINDS:
        raise InputError(f"kind must be one of {KINDS}, got {kind!r}")
    points, labels1, labels2, train, test = [], [], [], [], []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.DictReader(fh)):
            points.append((float(row["x1"]), float(row["x2"])))
            labels1.append(int(row["label1"]))
            labels2.append(int(row["label2"]))
            (train if row["split"] == "train" else test).append(i)
    points = np.asarray(points)
    return Dataset(
        kind=kind,
        seed=seed,
        points=points,
        features=_features(kind, points),
        labels_task1=np.asarray(labels1, dtype=int),
        labels_task2=np.asarray(labels2, dtype=int),
        train_idx=np.asarray(train, dtype=int),
        test_idx=np.asarray(test, dtype=int),
    )
