"""Comparison solvers: non-monotone spectral projected gradient and away-step Frank-Wolfe."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .core import (ConvergenceTrace, ProblemInstance, SolverResult, Status, TraceRecord,
                   as_vector, sparsity)
from .linesearch import LineSearchMemory, armijo_monotone, armijo_nonmonotone, bb_coefficient
from .projection import project_l1_ball, projected_gradient_residual
from .solver import SolverConfig, _start

# Atoms whose weight falls to this level are dropped.
WEIGHT_DROP = 1e-12


def _stop_status(cfg: SolverConfig, k: int, elapsed: float, f: float, res: float):
    if cfg.target is not None:
        if f <= cfg.target:
            return Status.CONVERGED
    elif res <= cfg.tolerance:
        return Status.CONVERGED
    if k >= cfg.max_iterations:
        return Status.ITERATION_LIMIT
    if elapsed >= cfg.time_limit:
        return Status.TIME_LIMIT
    return None


def solve_nmspg(problem: ProblemInstance, x0=None,
                config: SolverConfig | None = None) -> SolverResult:
    """Spectral projected gradient over the full ball with non-monotone Armijo.

    Stops on the projected-gradient residual, or on ``phi <= config.target``
    when a target is set.
    """
    cfg = config or SolverConfig()
    oracle = problem.objective
    tau = problem.radius
    x, f, g = _start(problem, x0)
    memory = LineSearchMemory(cfg.n_m)
    trace = ConvergenceTrace()
    m = 1.0
    k = 0
    t0 = time.perf_counter()
    while True:
        res = projected_gradient_residual(x, g, tau)
        elapsed = time.perf_counter() - t0
        status = _stop_status(cfg, k, elapsed, f, res)
        if status is not None:
            trace.append(TraceRecord(k, elapsed, f, res, 0, x.size, 0.0, float("nan")))
            break
        memory.push(f)
        ref = memory.reference
        d = project_l1_ball(x - g / m, tau) - x
        ls = armijo_nonmonotone(oracle.value, x, d, g, memory, cfg.gamma, cfg.delta,
                                phi_start=f)
        trace.append(TraceRecord(k, time.perf_counter() - t0, f, res, 0, x.size, ls.alpha,
                                 float("nan"), reference=ref, capped=ls.capped))
        k += 1
        if ls.alpha == 0:
            # Stalled in floating point; retry from a unit coefficient, else give up.
            if m == 1.0:
                status = Status.ITERATION_LIMIT
                trace.append(TraceRecord(k, time.perf_counter() - t0, f, res, 0, x.size,
                                         0.0, float("nan")))
                break
            m = 1.0
            continue
        x_new = x + ls.alpha * d
        f_new, g_new = oracle.value_and_gradient(x_new)
        m = bb_coefficient(x_new - x, g_new - g, x_new, g_new)
        x, f, g = x_new, f_new, g_new

    res = projected_gradient_residual(x, g, tau)
    return SolverResult(x, float(f), res, k, status, sparsity(x),
                        time.perf_counter() - t0, trace)


@dataclass
class AtomWeights:
    """Convex weights over the 2n vertices ``+tau e_i`` (slot i) and ``-tau e_i`` (slot n+i)."""

    weights: np.ndarray
    tau: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size % 2 or w.size == 0:
            raise ValueError("weights must have even, positive length 2n")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-10:
            raise ValueError("weights must be non-negative and sum to 1")
        self.weights = w

    @classmethod
    def origin(cls, n: int, tau: float) -> "AtomWeights":
        """The origin as half of ``+tau e_1`` plus half of ``-tau e_1``."""
        w = np.zeros(2 * n)
        w[0] = w[n] = 0.5
        return cls(w, tau)

    @classmethod
    def from_point(cls, x, tau: float) -> "AtomWeights":
        """Decompose a feasible point; leftover mass is split over ``+-tau e_1``."""
        x = as_vector(x)
        n = x.size
        w = np.zeros(2 * n)
        w[:n] = np.maximum(x, 0) / tau
        w[n:] = np.maximum(-x, 0) / tau
        slack = 1.0 - w.sum()
        if slack < -1e-12:
            raise ValueError("point is not in the ball")
        slack = max(slack, 0.0)
        w[0] += slack / 2
        w[n] += slack / 2
        return cls(w / w.sum(), tau)

    @property
    def n(self) -> int:
        return self.weights.size // 2

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.weights > 0)

    def point(self) -> np.ndarray:
        n = self.n
        return self.tau * (self.weights[:n] - self.weights[n:])


def _atom_vector(k: int, n: int, tau: float) -> np.ndarray:
    v = np.zeros(n)
    v[k % n] = tau if k < n else -tau
    return v


def solve_afw(problem: ProblemInstance, x0_weights: AtomWeights | None = None,
              config: SolverConfig | None = None) -> SolverResult:
    """Away-step Frank-Wolfe on the 2n-vertex description of the ball.

    Uses a monotone Armijo search on the chosen segment. Stops when the FW
    gap falls below ``config.tolerance``, or on ``phi <= config.target`` when
    a target is set.
    """
    cfg = config or SolverConfig()
    oracle = problem.objective
    tau = problem.radius
    n = problem.dimension
    aw = AtomWeights.origin(n, tau) if x0_weights is None else x0_weights
    if aw.n != n or aw.tau != tau:
        raise ValueError("atom weights do not match the problem")
    w = aw.weights.copy()
    x, f, g = _start(problem, aw.point())
    trace = ConvergenceTrace()
    k = 0
    t0 = time.perf_counter()
    while True:
        absg = np.abs(g)
        j = int(np.argmax(absg))
        fw_atom = n + j if g[j] >= 0 else j
        s = _atom_vector(fw_atom, n, tau)
        gx = float(g @ x)
        fw_gap = gx + tau * absg[j]
        supp = np.flatnonzero(w > 0)
        # g'v for each supported atom.
        gv = np.where(supp < n, tau * g[supp % n], -tau * g[supp % n])
        away_atom = int(supp[np.argmax(gv)])
        away_gap = float(gv.max()) - gx

        elapsed = time.perf_counter() - t0
        res = fw_gap if cfg.target is None else projected_gradient_residual(x, g, tau)
        status = _stop_status(cfg, k, elapsed, f, res)
        if status is not None:
            trace.append(TraceRecord(k, elapsed, f, fw_gap, 2 * n - supp.size, supp.size,
                                     0.0, float("nan")))
            break

        if fw_gap >= away_gap:
            d = s - x
            alpha_max = 1.0
            away = False
        else:
            wv = w[away_atom]
            d = x - _atom_vector(away_atom, n, tau)
            alpha_max = wv / (1.0 - wv)
            away = True
        ls = armijo_monotone(oracle.value, x, d, g, f, alpha_max, cfg.gamma, cfg.delta)
        alpha = min(ls.alpha, alpha_max)
        trace.append(TraceRecord(k, time.perf_counter() - t0, f, fw_gap, 2 * n - supp.size,
                                 supp.size, alpha, float("nan"), capped=ls.capped))
        k += 1
        if alpha == 0:
            status = Status.ITERATION_LIMIT
            trace.append(TraceRecord(k, time.perf_counter() - t0, f, fw_gap,
                                     2 * n - supp.size, supp.size, 0.0, float("nan")))
            break
        if away:
            w *= 1.0 + alpha
            w[away_atom] -= alpha
            if alpha == alpha_max:
                w[away_atom] = 0.0
        else:
            w *= 1.0 - alpha
            w[fw_atom] += alpha
        w[w <= WEIGHT_DROP] = 0.0
        w /= w.sum()
        x = tau * (w[:n] - w[n:])
        f, g = oracle.value_and_gradient(x)

    res = projected_gradient_residual(x, g, tau)
    return SolverResult(x, float(f), res, k, status, sparsity(x),
                        time.perf_counter() - t0, trace,
                        extra={"weights": AtomWeights(w, tau), "fw_gap": fw_gap})
