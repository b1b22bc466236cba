"""Spectral projected-gradient direction and non-monotone Armijo line search."""

from __future__ import annotations

import collections
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Vector
from .projection import project_l1_ball

M_LOW = 1e-10
M_HIGH = 1e10
MAX_BACKTRACKS = 60


def bb_coefficient(s: Vector, y: Vector, x_n: Vector, g_n: Vector,
                   m_low: float = M_LOW, m_high: float = M_HIGH) -> float:
    """Safeguarded Barzilai-Borwein curvature coefficient.

    ``s`` and ``y`` are the secant pair, ``x_n`` and ``g_n`` the current
    point and gradient, all on the same coordinates. With
    ``ma = s'y/s's`` and ``mb = y'y/s'y``:

    * ``0 < ma < m_high``: ``max(m_low, ma)``
    * ``ma >= m_high``: ``max(m_low, min(m_high, mb))``
    * ``ma <= 0``: ``max(m_low, min(1, ||g_n|| / ||x_n||))``, or 1 if ``x_n = 0``

    The returned value is a curvature estimate; the matching step along the
    negative gradient is its reciprocal.
    """
    ss = float(s @ s) if s.size else 0.0
    if ss > 0:
        sty = float(s @ y)
        ma = sty / ss
        if 0 < ma < m_high:
            return max(m_low, ma)
        if ma >= m_high:
            return max(m_low, min(m_high, float(y @ y) / sty))
    xnorm = float(np.linalg.norm(x_n))
    if xnorm == 0:
        return 1.0
    return max(m_low, min(1.0, float(np.linalg.norm(g_n)) / xnorm))


def direction(xt: Vector, g: Vector, free, step: float, tau: float) -> Vector:
    """Projected-gradient direction on the face spanned by ``free``.

    ``d_free = P(xt_free - step * g_free) - xt_free`` with P the projection
    onto the l1-ball of radius ``tau``; all other entries are zero. Satisfies
    ``g'd <= -||d||^2 / step``.
    """
    d = np.zeros_like(xt)
    free = np.asarray(free, dtype=np.intp)
    if free.size == 0:
        return d
    z = xt[free] - step * g[free]
    d[free] = project_l1_ball(z, tau) - xt[free]
    return d


class LineSearchMemory:
    """The last ``n_m + 1`` objective values; the reference is their max."""

    def __init__(self, n_m: int = 10):
        if n_m < 0:
            raise ValueError("memory length must be non-negative")
        self.n_m = n_m
        self._buf: collections.deque[float] = collections.deque(maxlen=n_m + 1)

    def push(self, value: float) -> None:
        self._buf.append(float(value))

    @property
    def reference(self) -> float:
        if not self._buf:
            raise ValueError("empty line-search memory")
        return max(self._buf)

    def __len__(self) -> int:
        return len(self._buf)


@dataclass
class LineSearchResult:
    alpha: float
    value: float
    evaluations: int
    capped: bool = False


def armijo_nonmonotone(value: Callable[[Vector], float], xt: Vector, d: Vector, g: Vector,
                       memory: LineSearchMemory, gamma: float = 1e-4, delta: float = 0.5,
                       phi_start: float | None = None,
                       max_backtracks: int = MAX_BACKTRACKS) -> LineSearchResult:
    """Backtrack from ``alpha = 1`` until
    ``phi(xt + alpha d) <= ref + gamma * alpha * g'd``.

    Returns ``alpha = 0`` when ``d`` is not a descent direction. If the cap on
    halvings is hit, the best trial is returned (flagged) provided it does not
    exceed ``phi_start``; otherwise ``alpha = 0``.
    """
    if not (0 < gamma < 1 and 0 < delta < 1):
        raise ValueError("gamma and delta must lie in (0, 1)")
    slope = float(g @ d)
    if not slope < 0:
        return LineSearchResult(0.0, float("nan") if phi_start is None else phi_start, 0)
    ref = memory.reference
    alpha = 1.0
    best_alpha, best_val = 0.0, np.inf
    for t in range(max_backtracks + 1):
        f = value(xt + alpha * d)
        if np.isfinite(f):
            if f <= ref + gamma * alpha * slope:
                return LineSearchResult(alpha, float(f), t + 1)
            if f < best_val:
                best_alpha, best_val = alpha, float(f)
        alpha *= delta
    if phi_start is not None and best_val <= phi_start:
        return LineSearchResult(best_alpha, best_val, max_backtracks + 1, capped=True)
    return LineSearchResult(0.0, float("nan") if phi_start is None else phi_start,
                            max_backtracks + 1, capped=True)


def armijo_monotone(value: Callable[[Vector], float], x: Vector, d: Vector, g: Vector,
                    phi_x: float, alpha_max: float = 1.0, gamma: float = 1e-4,
                    delta: float = 0.5, max_backtracks: int = MAX_BACKTRACKS) -> LineSearchResult:
    """Classic Armijo backtracking from ``alpha_max`` against ``phi(x)``."""
    slope = float(g @ d)
    if not slope < 0:
        return LineSearchResult(0.0, phi_x, 0)
    alpha = alpha_max
    for t in range(max_backtracks + 1):
        f = value(x + alpha * d)
        if np.isfinite(f) and f <= phi_x + gamma * alpha * slope:
            return LineSearchResult(alpha, float(f), t + 1)
        alpha *= delta
    return LineSearchResult(0.0, phi_x, max_backtracks + 1, capped=True)
