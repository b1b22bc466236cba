"""Euclidean projections onto the l1-ball, its coordinate faces and the simplex."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Vector, as_vector


def _threshold(a: np.ndarray, radius: float) -> float:
    """Soft threshold theta with sum(max(a - theta, 0)) == radius, for a >= 0."""
    u = np.sort(a)[::-1]
    css = np.cumsum(u)
    k = np.arange(1, u.size + 1)
    cand = (css - radius) / k
    # Largest k with u_k > theta_k; tie-agnostic.
    rho = np.nonzero(u > cand)[0][-1]
    return float(cand[rho])


def project_l1_ball(v, tau: float) -> Vector:
    """Project ``v`` onto ``{w : ||w||_1 <= tau}``.

    Interior points are returned unchanged (as a copy). Otherwise the result
    is ``sign(v) * max(|v| - theta, 0)`` with theta found by the sorted
    cumulative-sum rule.
    """
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    v = as_vector(v)
    if not np.all(np.isfinite(v)):
        raise ValueError("v must be finite")
    a = np.abs(v)
    if a.sum() <= tau:
        return v.copy()
    theta = _threshold(a, tau)
    w = np.maximum(a - theta, 0.0)
    # Cancellation in a - theta can overshoot tau when |v| >> tau.
    total = w.sum()
    if total > tau:
        w *= tau / total
    return np.sign(v) * w


def project_simplex(v) -> Vector:
    """Project ``v`` onto the unit simplex ``{y >= 0, sum(y) = 1}``."""
    v = as_vector(v)
    if not np.all(np.isfinite(v)):
        raise ValueError("v must be finite")
    if v.size == 0:
        raise ValueError("cannot project an empty vector onto the simplex")
    theta = _threshold(v, 1.0)
    return np.maximum(v - theta, 0.0)


@dataclass(frozen=True)
class RestrictedManifold:
    """The face ``{x : ||x||_1 <= radius, x_i = 0 for i not in free_indices}``."""

    radius: float
    free_indices: np.ndarray
    dimension: int

    def __post_init__(self):
        idx = np.asarray(self.free_indices, dtype=np.intp).ravel()
        if idx.size and (idx.min() < 0 or idx.max() >= self.dimension):
            raise ValueError("free index out of range")
        if np.unique(idx).size != idx.size:
            raise ValueError("free_indices contains duplicates")
        object.__setattr__(self, "free_indices", idx)


def project_restricted(v, manifold: RestrictedManifold) -> Vector:
    """Project ``v`` onto a restricted face; coordinates outside the face are zero."""
    v = as_vector(v, manifold.dimension)
    out = np.zeros_like(v)
    idx = manifold.free_indices
    if idx.size:
        out[idx] = project_l1_ball(v[idx], manifold.radius)
    return out


def projected_gradient_residual(x: Vector, g: Vector, tau: float) -> float:
    """``||x - P(x - g)||`` over the full ball; zero exactly at stationary points."""
    return float(np.linalg.norm(x - project_l1_ball(x - g, tau)))
