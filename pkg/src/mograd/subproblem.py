"""Minimum-norm element of the convex hull of gradient rows.

Given a Jacobian G with rows g_1, ..., g_m, the common-descent-direction
subproblem is

    min_{lam in simplex} || G^T lam ||^2,

whose minimizer gives the combined gradient g = G^T lam.  Its squared norm
omega is the criticality measure: omega == 0 exactly at Pareto critical
points, and -g is a direction along which every objective instantaneously
decreases whenever omega > 0.

Three routes are provided: a closed form for two objectives
(:func:`min_norm_two`), a projected-gradient solver with active-set
polishing for any m (:func:`min_norm_element`), and an exhaustive grid
search used as a test oracle (:func:`brute_force_min_norm`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problems import ConvergenceError, InputError


class UnsupportedSizeError(InputError):
    """Instance is larger than the routine is designed to handle."""


# Iteration cap for the projected-gradient route.
MAX_ITERATIONS = 100_000

# lam entries at or below this are treated as inactive.
_SUPPORT_TOL = 1e-12


@dataclass
class SubproblemSolution:
    """Solution of the min-norm subproblem for one Jacobian.

    Attributes
    ----------
    weights : ndarray, shape (m,)
        Simplex weights of the minimizing convex combination.
    gradient : ndarray, shape (n,)
        The combined gradient G^T weights; its negation is the common
        descent direction.
    omega : float
        Squared norm of ``gradient``; zero iff the point is Pareto critical.
    kkt_residual : float
        Normalized optimality residual of ``weights`` (see
        :func:`kkt_residual`).
    iterations : int
        Iterations spent by the numerical solver (0 for closed forms).
    """

    weights: np.ndarray
    gradient: np.ndarray
    omega: float
    kkt_residual: float
    iterations: int

    def descent_direction(self):
        """The common descent direction -gradient."""
        return -self.gradient

    def normalized_direction(self):
        """Unit-length descent direction; requires omega > 0."""
        if self.omega <= 0.0:
            raise InputError("normalized direction undefined at a critical point")
        return -self.gradient / np.sqrt(self.omega)


def _check_matrix(G):
    G = np.asarray(G, dtype=float)
    if G.ndim != 2:
        raise InputError(f"gradient matrix must be 2-d, got shape {G.shape}")
    if not np.isfinite(G).all():
        raise InputError("gradient matrix contains non-finite entries")
    return G


def _finish(G, lam, iterations):
    """Clamp stray negatives, renormalize, and package a solution."""
    lam = np.maximum(lam, 0.0)
    lam = lam / lam.sum()
    g = G.T @ lam
    omega = float(g @ g)
    return SubproblemSolution(lam, g, omega, kkt_residual(G, lam), iterations)


def kkt_residual(G, weights):
    """Optimality residual of ``weights`` for the min-norm subproblem.

    With g = G^T weights, an exact minimizer satisfies g_j . g >= ||g||^2
    for every row and equality on the support.  The residual adds the worst
    violation of the first condition to the weighted violations of the
    second, normalized by (1 + ||g||^2); it is zero exactly at a minimizer.
    """
    G = _check_matrix(G)
    lam = np.asarray(weights, dtype=float)
    if lam.shape != (G.shape[0],):
        raise InputError(
            f"weights have shape {lam.shape}, expected ({G.shape[0]},)"
        )
    if lam.min() < -1e-9 or abs(lam.sum() - 1.0) > 1e-9:
        raise InputError("weights must lie on the unit simplex")
    g = G.T @ lam
    sq = float(g @ g)
    inner = G @ g
    worst = max(0.0, float((sq - inner).max()))
    support = float(lam @ np.abs(inner - sq))
    return (worst + support) / (1.0 + sq)


def project_to_simplex(v):
    """Euclidean projection of ``v`` onto the unit simplex (sort based)."""
    v = np.asarray(v, dtype=float)
    u = -np.sort(-v)
    css = (np.cumsum(u) - 1.0) / np.arange(1, v.size + 1)
    k = np.flatnonzero(u > css)[-1]
    return np.maximum(v - css[k], 0.0)


def min_norm_two(g1, g2):
    """Closed-form min-norm element for two gradients.

    The squared norm of lam*g1 + (1-lam)*g2 is a parabola in lam; its
    unconstrained minimizer is clamped to [0, 1].
    """
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    if g1.shape != g2.shape or g1.ndim != 1:
        raise InputError("min_norm_two expects two vectors of equal length")
    G = _check_matrix(np.vstack([g1, g2]))
    diff = g1 - g2
    denom = float(diff @ diff)
    if denom == 0.0:
        lam1 = 1.0
    else:
        lam1 = min(1.0, max(0.0, float(g2 @ (g2 - g1)) / denom))
    return _finish(G, np.array([lam1, 1.0 - lam1]), 0)


def _active_set_polish(M, support):
    """Solve the equality-constrained QP restricted to ``support`` rows.

    Stationarity of ||G^T lam||^2 with sum(lam) == 1 on a fixed support is
    the linear system [2*M_SS, 1; 1^T, 0] [lam; nu] = [0; 1].  Returns the
    full-length weight vector, or None if the solve leaves the simplex.
    """
    s = np.flatnonzero(support)
    k = s.size
    A = np.zeros((k + 1, k + 1))
    A[:k, :k] = 2.0 * M[np.ix_(s, s)]
    A[:k, k] = 1.0
    A[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    lam_s = sol[:k]
    if lam_s.min() < -1e-12 or abs(lam_s.sum() - 1.0) > 1e-8:
        return None
    lam = np.zeros(M.shape[0])
    lam[s] = np.maximum(lam_s, 0.0)
    return lam / lam.sum()


def _stop_residual(M, lam, tol):
    """Worst violation of the two KKT conditions, relative to 1 + omega.

    Stricter than the aggregate :func:`kkt_residual`: both the hull
    inequality and the complementarity equalities on the support
    (entries above ``tol``) must hold individually.
    """
    inner = M @ lam
    sq = float(lam @ inner)
    worst = max(0.0, float(sq - inner.min()))
    active = lam > tol
    comp = float(np.abs(inner[active] - sq).max()) if active.any() else 0.0
    return max(worst, comp) / (1.0 + sq)


def min_norm_element(G, tol=1e-10, weights0=None):
    """Minimize ||G^T lam||^2 over the unit simplex by projected gradient.

    Fixed step 1/(2 sigma_max(G G^T)), cold started at the uniform weights
    (or ``weights0``), with periodic active-set polishing on the current
    support.  Stops once the KKT residual drops to ``tol``.

    Raises :class:`ConvergenceError` carrying the best iterate if the
    iteration cap is reached, and :class:`InputError` for bad inputs.
    """
    if not (np.isscalar(tol) and np.isfinite(tol) and tol > 0):
        raise InputError(f"tol must be a positive number, got {tol}")
    G = _check_matrix(G)
    m = G.shape[0]
    if m == 1:
        return _finish(G, np.ones(1), 0)

    M = G @ G.T
    sigma = float(np.linalg.eigvalsh(M).max())
    if sigma <= 0.0:
        # All-zero gradients: every convex combination is the zero vector.
        return _finish(G, np.full(m, 1.0 / m), 0)
    step = 1.0 / (2.0 * sigma)

    if weights0 is None:
        lam = np.full(m, 1.0 / m)
    else:
        lam = np.asarray(weights0, dtype=float).copy()
        if lam.shape != (m,) or lam.min() < 0 or abs(lam.sum() - 1.0) > 1e-9:
            raise InputError("weights0 must lie on the unit simplex")

    best = lam
    best_res = _stop_residual(M, lam, tol)
    for k in range(MAX_ITERATIONS):
        if best_res <= tol:
            return _finish(G, best, k)
        lam = project_to_simplex(lam - step * 2.0 * (M @ lam))
        res = _stop_residual(M, lam, tol)
        if res < best_res:
            best, best_res = lam, res
        if (k + 1) % 20 == 0:
            polished = _active_set_polish(M, lam > _SUPPORT_TOL)
            if polished is not None:
                pres = _stop_residual(M, polished, tol)
                if pres < best_res:
                    best, best_res = polished, pres
                    lam = polished
    if best_res <= tol:
        return _finish(G, best, MAX_ITERATIONS)
    raise ConvergenceError(
        f"min-norm solver stalled at residual {best_res:.3e} (tol {tol:.1e})",
        _finish(G, best, MAX_ITERATIONS),
    )


def solve_direction(G, tol=1e-10):
    """Subproblem route used inside the solvers.

    Two objectives take the exact closed form; larger instances run the
    iterative solver.
    """
    G = _check_matrix(G)
    if G.shape[0] == 2:
        return min_norm_two(G[0], G[1])
    return min_norm_element(G, tol=tol)


def _simplex_grid(m, resolution):
    """All weight vectors with entries k/resolution summing to 1, shape (N, m)."""
    K = resolution
    if m == 1:
        return np.ones((1, 1))
    if m == 2:
        k = np.arange(K + 1)
        return np.column_stack([k, K - k]) / K
    if m == 3:
        i, j = np.meshgrid(np.arange(K + 1), np.arange(K + 1), indexing="ij")
        keep = i + j <= K
        i, j = i[keep], j[keep]
        return np.column_stack([i, j, K - i - j]) / K
    # m == 4: chunk over the first coordinate to bound memory.
    blocks = []
    for i in range(K + 1):
        inner = _simplex_grid(3, K - i) * ((K - i) / K) if K - i > 0 else np.zeros((1, 3))
        blocks.append(np.column_stack([np.full(len(inner), i / K), inner]))
    return np.vstack(blocks)


_GRID_CACHE = {}


def brute_force_min_norm(G, grid_step=0.01):
    """Exhaustive simplex-grid minimizer of ||G^T lam||^2, for m <= 4.

    The grid uses resolution ceil(1/grid_step), so spacing never exceeds
    ``grid_step``.  Intended as an independent oracle for the closed-form
    and iterative solvers; cost grows like (1/grid_step)^(m-1).
    """
    G = _check_matrix(G)
    m = G.shape[0]
    if m > 4:
        raise UnsupportedSizeError(
            f"brute force supports at most 4 objectives, got {m}"
        )
    if not 0.0 < grid_step <= 0.1:
        raise InputError(f"grid_step must be in (0, 0.1], got {grid_step}")
    K = int(np.ceil(1.0 / grid_step))
    key = (m, K)
    if key not in _GRID_CACHE:
        _GRID_CACHE[key] = _simplex_grid(m, K)
    grid = _GRID_CACHE[key]
    M = G @ G.T
    values = np.einsum("ij,jk,ik->i", grid, M, grid)
    lam = grid[int(np.argmin(values))]
    sol = _finish(G, lam.copy(), len(grid))
    return sol
