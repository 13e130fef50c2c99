"""Experiment instances: scalar test functions and bi-objective constructions.

Three instance families are provided.

* Regularized: a classical scalar test function paired with the squared
  l2 norm as a second objective.
* Paired: two scalar test functions of equal dimension, started from the
  average of their standard starts.
* Benchmarks: five bi-objective problems from the literature, each with
  a box for random starts.

Scalar functions are hardcoded from their published formulations
(Rosenbrock, Cube, Wayburn-Seader 1, Zangwill's quadratic, and the
ARWHEAD / VARDIM / BROWNAL family in dimension 10).  Sources for the
benchmark formulations are recorded in the docstrings below and in the
README, since several variants circulate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problems import InputError, MultiObjectiveProblem


@dataclass(frozen=True)
class ScalarProblem:
    """A single smooth objective with value and gradient oracles."""

    name: str
    n: int
    standard_start: tuple
    value: callable
    gradient: callable


def _rosenbrock(x):
    return 100.0 * (x[1] - x[0] ** 2) ** 2 + (1.0 - x[0]) ** 2


def _rosenbrock_grad(x):
    r = x[1] - x[0] ** 2
    return np.array([-400.0 * x[0] * r - 2.0 * (1.0 - x[0]), 200.0 * r])


def _cube(x):
    return (x[0] - 1.0) ** 2 + 100.0 * (x[1] - x[0] ** 3) ** 2


def _cube_grad(x):
    r = x[1] - x[0] ** 3
    return np.array([2.0 * (x[0] - 1.0) - 600.0 * x[0] ** 2 * r, 200.0 * r])


def _waysea1(x):
    # Wayburn and Seader problem 1.
    r1 = x[0] ** 6 + x[1] ** 4 - 17.0
    r2 = 2.0 * x[0] + x[1] - 4.0
    return r1**2 + r2**2


def _waysea1_grad(x):
    r1 = x[0] ** 6 + x[1] ** 4 - 17.0
    r2 = 2.0 * x[0] + x[1] - 4.0
    return np.array(
        [12.0 * x[0] ** 5 * r1 + 4.0 * r2, 8.0 * x[1] ** 3 * r1 + 2.0 * r2]
    )


def _zangwil2(x):
    # Zangwill's 2-variable quadratic; minimum -18.2 at (4, 9).
    return (
        16.0 * x[0] ** 2
        + 16.0 * x[1] ** 2
        - 8.0 * x[0] * x[1]
        - 56.0 * x[0]
        - 256.0 * x[1]
        + 991.0
    ) / 15.0


def _zangwil2_grad(x):
    return np.array(
        [
            (32.0 * x[0] - 8.0 * x[1] - 56.0) / 15.0,
            (32.0 * x[1] - 8.0 * x[0] - 256.0) / 15.0,
        ]
    )


def _arwhead(x):
    head = x[:-1] ** 2 + x[-1] ** 2
    return float(np.sum(head**2 - 4.0 * x[:-1] + 3.0))


def _arwhead_grad(x):
    head = x[:-1] ** 2 + x[-1] ** 2
    g = np.empty_like(x)
    g[:-1] = 4.0 * x[:-1] * head - 4.0
    g[-1] = 4.0 * x[-1] * np.sum(head)
    return g


def _vardim(x):
    n = x.size
    lin = float(np.arange(1, n + 1) @ x) - n * (n + 1) / 2.0
    return float(np.sum((x - 1.0) ** 2)) + lin**2 + lin**4


def _vardim_grad(x):
    n = x.size
    idx = np.arange(1, n + 1, dtype=float)
    lin = float(idx @ x) - n * (n + 1) / 2.0
    return 2.0 * (x - 1.0) + (2.0 * lin + 4.0 * lin**3) * idx


def _brownal(x):
    n = x.size
    lin = x + x.sum() - (n + 1.0)
    prod = float(np.prod(x))
    return float(np.sum(lin[:-1] ** 2)) + (prod - 1.0) ** 2


def _brownal_grad(x):
    n = x.size
    lin = x + x.sum() - (n + 1.0)
    g = 2.0 * (lin[:-1].sum() + lin[:-1])
    g = np.concatenate([g, [2.0 * lin[:-1].sum()]])
    prod = float(np.prod(x))
    # d(prod)/dx_k = product of the other entries; recompute directly so
    # zero entries stay exact.
    partials = np.array(
        [np.prod(np.delete(x, k)) for k in range(n)]
    )
    return g + 2.0 * (prod - 1.0) * partials


SCALAR_PROBLEMS = {
    "ROSENBR": ScalarProblem("ROSENBR", 2, (-1.2, 1.0), _rosenbrock, _rosenbrock_grad),
    "CUBE": ScalarProblem("CUBE", 2, (-1.2, 1.0), _cube, _cube_grad),
    "WAYSEA1": ScalarProblem("WAYSEA1", 2, (1.5, 1.5), _waysea1, _waysea1_grad),
    "ZANGWIL2": ScalarProblem("ZANGWIL2", 2, (3.0, 8.0), _zangwil2, _zangwil2_grad),
    "ARWHEAD": ScalarProblem("ARWHEAD", 10, (1.0,) * 10, _arwhead, _arwhead_grad),
    "VARDIM": ScalarProblem(
        "VARDIM", 10, tuple(1.0 - i / 10.0 for i in range(1, 11)), _vardim, _vardim_grad
    ),
    "BROWNAL": ScalarProblem("BROWNAL", 10, (0.5,) * 10, _brownal, _brownal_grad),
}

# Paired instances reported in the experiments; both members share n.
PAIR_NAMES = [
    ("BROWNAL", "ARWHEAD"),
    ("BROWNAL", "VARDIM"),
    ("ARWHEAD", "VARDIM"),
    ("ZANGWIL2", "ROSENBR"),
    ("ZANGWIL2", "CUBE"),
    ("ZANGWIL2", "WAYSEA1"),
    ("ROSENBR", "WAYSEA1"),
    ("ROSENBR", "CUBE"),
    ("WAYSEA1", "CUBE"),
]


def make_regularized(p):
    """Bi-objective instance f_1 = p, f_2 = ||x||^2, started at p's start."""

    def objectives(x):
        return np.array([p.value(x), float(x @ x)])

    def jac(x):
        return np.vstack([p.gradient(x), 2.0 * x])

    return MultiObjectiveProblem(
        f"{p.name}-L2", p.n, 2, p.standard_start, objectives, jac
    )


def make_pair(p1, p2):
    """Bi-objective instance (p1, p2), started at the average of the starts."""
    if p1.n != p2.n:
        raise InputError(
            f"cannot pair {p1.name} (n={p1.n}) with {p2.name} (n={p2.n})"
        )
    start = (np.asarray(p1.standard_start) + np.asarray(p2.standard_start)) / 2.0

    def objectives(x):
        return np.array([p1.value(x), p2.value(x)])

    def jac(x):
        return np.vstack([p1.gradient(x), p2.gradient(x)])

    return MultiObjectiveProblem(
        f"{p1.name}-{p2.name}", p1.n, 2, start, objectives, jac
    )


def quadratic_pair(a=(1.0, 0.0), b=(-1.0, 0.0)):
    """The two half-quadratics f_j = 0.5*||x - c_j||^2 with centers a and b.

    The Pareto set is the segment [a, b]; every gradient is x - c_j, so
    L_max = 1, and the minimum of max(f_1, f_2) sits at the midpoint with
    value ||a - b||^2 / 8.  Used throughout the tests because every
    quantity of the convergence theory is known exactly.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)

    def objectives(x):
        return 0.5 * np.array([(x - a) @ (x - a), (x - b) @ (x - b)])

    def jac(x):
        return np.vstack([x - a, x - b])

    problem = MultiObjectiveProblem(
        "QUADPAIR", a.size, 2, (a + b) / 2.0, objectives, jac
    )
    problem.l_max = 1.0
    problem.phi_low = float((a - b) @ (a - b)) / 8.0
    problem.segment = (a, b)
    return problem


def _gauss_bump(x, c):
    d = x - c
    return np.exp(-float(d @ d))


# Benchmark formulations (all n=2, m=2, minimization form).  Lovison 3 and
# Lovison 4 follow the singular-continuation test set (two quadratic bowls;
# problem 4 adds two Gaussian bumps to the first objective, which splits
# the Pareto set).  MOP1 is the classical parabolic pair in two variables
# with unit Hessians.  T1 and T2 are heterogeneous pairs in the style of
# the trust-region literature: a quartic valley against a quadratic, and
# two shifted quadratic bowls.


def _lovison3():
    def objectives(x):
        return np.array(
            [x[0] ** 2 + x[1] ** 2, (x[0] - 6.0) ** 2 + (x[1] + 0.3) ** 2]
        )

    def jac(x):
        return np.array(
            [[2.0 * x[0], 2.0 * x[1]], [2.0 * (x[0] - 6.0), 2.0 * (x[1] + 0.3)]]
        )

    return objectives, jac


def _lovison4():
    def objectives(x):
        bumps = 4.0 * (
            _gauss_bump(x, np.array([-2.0, 0.0])) + _gauss_bump(x, np.array([2.0, 0.0]))
        )
        return np.array(
            [
                x[0] ** 2 + x[1] ** 2 + bumps,
                (x[0] - 6.0) ** 2 + (x[1] + 0.5) ** 2,
            ]
        )

    def jac(x):
        c1, c2 = np.array([-2.0, 0.0]), np.array([2.0, 0.0])
        db = -8.0 * (
            _gauss_bump(x, c1) * (x - c1) + _gauss_bump(x, c2) * (x - c2)
        )
        return np.array(
            [
                [2.0 * x[0] + db[0], 2.0 * x[1] + db[1]],
                [2.0 * (x[0] - 6.0), 2.0 * (x[1] + 0.5)],
            ]
        )

    return objectives, jac


def _mop1():
    def objectives(x):
        return 0.5 * np.array(
            [x @ x, (x[0] - 2.0) ** 2 + (x[1] - 2.0) ** 2]
        )

    def jac(x):
        return np.array([x, x - np.array([2.0, 2.0])])

    return objectives, jac


def _t1():
    def objectives(x):
        return np.array(
            [(x[0] - 2.0) ** 4 + (x[0] - 2.0 * x[1]) ** 2, 0.5 * float(x @ x)]
        )

    def jac(x):
        r = x[0] - 2.0 * x[1]
        return np.array(
            [[4.0 * (x[0] - 2.0) ** 3 + 2.0 * r, -4.0 * r], x]
        )

    return objectives, jac


def _t2():
    def objectives(x):
        return 0.5 * np.array(
            [(x[0] - 1.0) ** 2 + x[1] ** 2, (x[0] + 1.0) ** 2 + x[1] ** 2]
        )

    def jac(x):
        return np.array([[x[0] - 1.0, x[1]], [x[0] + 1.0, x[1]]])

    return objectives, jac


_BENCHMARKS = {
    "Lovison3": _lovison3,
    "Lovison4": _lovison4,
    "MOP1": _mop1,
    "T1": _t1,
    "T2": _t2,
}

# Box for uniform random starts; the sources give no canonical boxes, so
# all benchmarks share the default square.
START_BOX = (-2.0, 2.0)


def get_benchmark(name):
    """Benchmark instance by name; the start box is attached as ``.start_box``."""
    if name not in _BENCHMARKS:
        raise KeyError(
            f"unknown benchmark {name!r}; valid names: {sorted(_BENCHMARKS)}"
        )
    objectives, jac = _BENCHMARKS[name]()
    problem = MultiObjectiveProblem(name, 2, 2, (0.0, 0.0), objectives, jac)
    problem.start_box = START_BOX
    return problem


def random_start(problem, seed):
    """Uniform start in the problem's box (default [-2, 2]^n)."""
    lo, hi = getattr(problem, "start_box", START_BOX)
    rng = np.random.default_rng(seed)
    return rng.uniform(lo, hi, size=problem.n)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    m: int
    origin: str  # benchmark | regularized | paired


def _catalog():
    entries = {}
    for name in _BENCHMARKS:
        entries[name] = CatalogEntry(name, 2, 2, "benchmark")
    for pname, p in SCALAR_PROBLEMS.items():
        entries[f"{pname}-L2"] = CatalogEntry(f"{pname}-L2", p.n, 2, "regularized")
    for a, b in PAIR_NAMES:
        entries[f"{a}-{b}"] = CatalogEntry(f"{a}-{b}", SCALAR_PROBLEMS[a].n, 2, "paired")
    return entries


CATALOG = _catalog()


def get_problem(name):
    """Construct any catalog instance (benchmark, regularized, or paired)."""
    if name not in CATALOG:
        raise KeyError(
            f"unknown problem {name!r}; see list_problems() for valid names"
        )
    entry = CATALOG[name]
    if entry.origin == "benchmark":
        return get_benchmark(name)
    if entry.origin == "regularized":
        return make_regularized(SCALAR_PROBLEMS[name[: -len("-L2")]])
    a, b = name.split("-")
    return make_pair(SCALAR_PROBLEMS[a], SCALAR_PROBLEMS[b])


def list_problems():
    """Alphabetical (name, n, m, origin) rows for every catalog instance."""
    return [
        (e.name, e.n, e.m, e.origin)
        for e in sorted(CATALOG.values(), key=lambda e: e.name)
    ]
