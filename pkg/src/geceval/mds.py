"""Metric multidimensional scaling by stress majorization.

Minimizes raw stress sum_{i<j} (d_ij - ||x_i - x_j||)^2 with unit weights,
starting from seeded random coordinates.  Each iteration applies the
Guttman transform (with a guarded relaxed update, which roughly doubles
the convergence speed) and never increases stress.  Majorization alone
converges only sublinearly into degenerate optima, e.g. when the best
2-D layout is exactly collinear, so once its relative progress stalls the
solver switches to guarded Gauss-Newton steps on the same stress, which
handle those flat valleys.  The recorded stress trace is non-increasing
throughout, and the embedding is determined only up to rotation,
reflection and translation.
"""

from __future__ import annotations

import numpy as np

from geceval.errors import InputError

# Switch from majorization to Gauss-Newton polish when one iteration
# improves stress by less than this fraction of its current value.
_POLISH_SWITCH = 1e-2


def _pairwise_distances(x: np.ndarray) -> np.ndarray:
    diff = x[:, None, :] - x[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2))


def _stress(d: np.ndarray, x: np.ndarray) -> float:
    e = _pairwise_distances(x)
    return float(((d - e) ** 2).sum()) / 2.0  # each pair counted once


def _guttman(d: np.ndarray, x: np.ndarray) -> np.ndarray:
    e = _pairwise_distances(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(e > 0, d / e, 0.0)
    b = -ratio
    np.fill_diagonal(b, 0.0)
    np.fill_diagonal(b, -b.sum(axis=1))
    return (b @ x) / d.shape[0]


def _gauss_newton_step(d: np.ndarray, x: np.ndarray) -> np.ndarray | None:
    """One backtracking Gauss-Newton step on the stress residuals, or None
    when no step direction improves."""
    n, dim = x.shape
    ii, jj = np.triu_indices(n, k=1)
    diff = x[ii] - x[jj]
    dist = np.sqrt((diff ** 2).sum(axis=1))
    if (dist == 0).any():
        return None
    residuals = d[ii, jj] - dist
    unit = diff / dist[:, None]

    jac = np.zeros((len(ii), n * dim))
    rows = np.arange(len(ii))
    for k in range(dim):
        jac[rows, ii * dim + k] = -unit[:, k]
        jac[rows, jj * dim + k] = unit[:, k]

    step, *_ = np.linalg.lstsq(jac, -residuals, rcond=None)
    step = step.reshape(n, dim)

    base = float((residuals ** 2).sum()) / 1.0
    current = base / 2.0
    alpha = 1.0
    for _ in range(20):
        candidate = x + alpha * step
        if _stress(d, candidate) < current:
            return candidate - candidate.mean(axis=0)
        alpha /= 2.0
    return None


def smacof(
    d: np.ndarray,
    n_components: int = 2,
    iterations: int = 300,
    seed: int = 0,
    eps: float = 1e-9,
) -> tuple[np.ndarray, list[float]]:
    """Embed a symmetric zero-diagonal distance matrix.

    Returns (coordinates, stress trace); the trace starts at the stress of
    the random initialization and is non-increasing.  The solve stops when
    one iteration improves stress by less than `eps` in the polish phase,
    or when the iteration budget is exhausted.  An all-zero matrix embeds
    every point at the origin with stress 0.
    """
    d = np.asarray(d, dtype=float)
    n = d.shape[0]
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InputError(f"distance matrix must be square, got shape {d.shape}")
    if n < 2:
        raise InputError("need at least 2 points to embed")
    if not d.any():
        return np.zeros((n, n_components)), [0.0]

    rng = np.random.default_rng(seed)
    scale = d[d > 0].mean()
    x = rng.standard_normal((n, n_components)) * scale
    x -= x.mean(axis=0)

    stress = _stress(d, x)
    trace = [stress]
    polishing = False
    for _ in range(iterations):
        if not polishing:
            t = _guttman(d, x)
            relaxed = 2.0 * t - x
            if _stress(d, relaxed) < _stress(d, t):
                x_new = relaxed
            else:
                x_new = t
            new_stress = _stress(d, x_new)
            if new_stress > stress:
                polishing = True
                continue
            x = x_new
            trace.append(new_stress)
            if stress - new_stress < max(eps, _POLISH_SWITCH * stress):
                polishing = True
            stress = new_stress
        else:
            x_new = _gauss_newton_step(d, x)
            if x_new is None:
                break
            new_stress = _stress(d, x_new)
            if new_stress >= stress:
                break
            x = x_new
            trace.append(new_stress)
            improved = stress - new_stress
            stress = new_stress
            if improved < eps:
                break
    return x, trace
