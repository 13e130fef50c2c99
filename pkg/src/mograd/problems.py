"""Smooth unconstrained multi-objective problems and evaluation bookkeeping.

A problem bundles an objective oracle f: R^n -> R^m with its Jacobian
(one gradient row per objective) and counts every oracle call, so that
solvers can be compared on evaluation budgets rather than wall time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class InputError(ValueError):
    """Malformed caller input: wrong dimension, non-finite point, bad option."""


class EvaluationOverflowError(ArithmeticError):
    """An oracle returned a non-finite value.

    Attributes record where it happened: ``index`` is the offending objective
    index (or ``(objective, variable)`` pair for a Jacobian entry) and ``x``
    is the evaluation point.
    """

    def __init__(self, message, index, x):
        super().__init__(message)
        self.index = index
        self.x = np.asarray(x)


class ConvergenceError(RuntimeError):
    """An iterative routine hit its iteration cap; carries the best iterate."""

    def __init__(self, message, best):
        super().__init__(message)
        self.best = best


class LineSearchError(RuntimeError):
    """Backtracking reached the minimum step size without acceptance."""


@dataclass
class EvalCounters:
    """Cumulative oracle call counts. Monotone during a run; reset between runs."""

    objective_evals: int = 0
    gradient_evals: int = 0

    def reset(self):
        self.objective_evals = 0
        self.gradient_evals = 0

    def snapshot(self):
        return EvalCounters(self.objective_evals, self.gradient_evals)


class MultiObjectiveProblem:
    """A smooth map f: R^n -> R^m with analytic Jacobian and call counters.

    Parameters
    ----------
    name : str
        Catalog identifier.
    n, m : int
        Number of variables and of objectives.
    standard_start : array_like, shape (n,)
        Conventional starting point.
    objectives : callable
        Maps an (n,) array to an (m,) array of objective values.
    jacobian : callable
        Maps an (n,) array to an (m, n) array whose row j is grad f_j.
    """

    def __init__(self, name, n, m, standard_start, objectives, jacobian):
        self.name = str(name)
        self.n = int(n)
        self.m = int(m)
        self.standard_start = np.asarray(standard_start, dtype=float).copy()
        if self.standard_start.shape != (self.n,):
            raise InputError(
                f"{name}: standard_start has shape {self.standard_start.shape}, "
                f"expected ({self.n},)"
            )
        self._objectives = objectives
        self._jacobian = jacobian
        self.counters = EvalCounters()

    # Noise level of the oracle; plain problems are exact.
    noise_rho = 0.0

    def _check_x(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise InputError(
                f"{self.name}: point has shape {x.shape}, expected ({self.n},)"
            )
        if not np.isfinite(x).all():
            raise InputError(f"{self.name}: point contains non-finite entries")
        return x

    def evaluate(self, x):
        """Objective vector f(x), counted as one objective evaluation."""
        x = self._check_x(x)
        with np.errstate(all="ignore"):
            y = np.asarray(self._objectives(x), dtype=float).reshape(self.m)
        self.counters.objective_evals += 1
        bad = ~np.isfinite(y)
        if bad.any():
            j = int(np.flatnonzero(bad)[0])
            raise EvaluationOverflowError(
                f"{self.name}: objective {j} is non-finite at x={x}", j, x
            )
        return y

    def jacobian(self, x):
        """Gradient rows, shape (m, n), counted as one gradient evaluation."""
        x = self._check_x(x)
        with np.errstate(all="ignore"):
            G = np.asarray(self._jacobian(x), dtype=float).reshape(self.m, self.n)
        self.counters.gradient_evals += 1
        bad = ~np.isfinite(G)
        if bad.any():
            j, i = np.argwhere(bad)[0]
            raise EvaluationOverflowError(
                f"{self.name}: gradient entry ({j}, {i}) is non-finite at x={x}",
                (int(j), int(i)),
                x,
            )
        return G

    def phi(self, x):
        """Worst objective max_j f_j(x); costs one objective evaluation."""
        return float(self.evaluate(x).max())

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, n={self.n}, m={self.m})"


@dataclass(frozen=True)
class NoiseSpec:
    """Multiplicative Gaussian noise: each oracle output a becomes a*(1+rho*xi).

    xi ~ N(0, 1) is drawn fresh for every output entry on every call from a
    generator seeded with ``seed``, so a wrapped problem replays exactly under
    an identical call sequence.
    """

    rho: float
    seed: int = 0

    def __post_init__(self):
        if not (np.isfinite(self.rho) and self.rho >= 0):
            raise InputError(f"noise level must be finite and >= 0, got {self.rho}")


class NoisyProblem(MultiObjectiveProblem):
    """Relative-noise view of a base problem; counters live on the base."""

    def __init__(self, base, spec):
        self._base = base
        self.spec = spec
        self._rng = np.random.default_rng(spec.seed)
        self.name = base.name
        self.n = base.n
        self.m = base.m
        self.standard_start = base.standard_start

    @property
    def noise_rho(self):
        return self.spec.rho

    @property
    def counters(self):
        return self._base.counters

    def evaluate(self, x):
        y = self._base.evaluate(x)
        if self.spec.rho == 0.0:
            return y
        xi = self._rng.standard_normal(self.m)
        return y * (1.0 + self.spec.rho * xi)

    def jacobian(self, x):
        G = self._base.jacobian(x)
        if self.spec.rho == 0.0:
            return G
        # One draw per entry, row-major, after any objective draws of the call
        # sequence so the stream layout is reproducible.
        xi = self._rng.standard_normal((self.m, self.n))
        return G * (1.0 + self.spec.rho * xi)


def wrap_noisy(problem, spec):
    """Wrap ``problem`` so every oracle output is corrupted per ``spec``.

    With ``spec.rho == 0`` outputs are bit-identical to the base problem.
    Evaluation counters delegate to the wrapped problem.
    """
    return NoisyProblem(problem, spec)
