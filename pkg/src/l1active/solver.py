"""Active-set non-monotone spectral projected gradient over the l1-ball.

Each iteration:

1. stop if ``||x - P(x - grad phi(x))|| <= tolerance``;
2. estimate the active/non-active sets at ``x``;
3. zero the estimated active variables, moving their mass onto the
   steepest free coordinate (``xt``), shrinking epsilon until this strictly
   lowers the objective;
4. take a spectral projected-gradient step on the non-active face with a
   non-monotone Armijo search, ``x <- xt + alpha d``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

import numpy as np

from .active_set import EpsilonController, estimate, sparsify
from .core import (ConvergenceTrace, ProblemInstance, SolverResult, Status, TraceRecord,
                   Vector, as_vector, check_feasible, sparsity)
from .linesearch import LineSearchMemory, armijo_nonmonotone, bb_coefficient, direction
from .projection import projected_gradient_residual

logger = logging.getLogger(__name__)


@dataclass
class SolverConfig:
    tolerance: float = 1e-6
    max_iterations: int = 100_000
    time_limit: float = 3600.0
    n_m: int = 10
    gamma: float = 1e-4
    delta: float = 0.5
    eps0: float = 1e-6
    shrink_factor: float = 0.1
    eps_floor: float = 1e-16
    # Baselines only: stop once phi(x) <= target.
    target: float | None = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.n_m < 0:
            raise ValueError("n_m must be non-negative")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")


def _start(problem: ProblemInstance, x0) -> tuple[Vector, float, Vector]:
    n = problem.dimension
    x = np.zeros(n) if x0 is None else as_vector(x0, n).copy()
    if not np.all(np.isfinite(x)):
        raise ValueError("x0 must be finite")
    if not check_feasible(x, problem.radius):
        raise ValueError("x0 is not feasible")
    f, g = problem.objective.value_and_gradient(x)
    if not (np.isfinite(f) and np.all(np.isfinite(g))):
        raise FloatingPointError("objective is not finite at x0")
    return x, f, g


def solve(problem: ProblemInstance, x0=None, config: SolverConfig | None = None) -> SolverResult:
    """Minimize ``problem.objective`` over the l1-ball starting from ``x0`` (default origin)."""
    cfg = config or SolverConfig()
    oracle = problem.objective
    tau = problem.radius
    x, f, g = _start(problem, x0)

    ctrl = EpsilonController(cfg.eps0, cfg.shrink_factor, cfg.eps_floor)
    memory = LineSearchMemory(cfg.n_m)
    trace = ConvergenceTrace()
    prev_xt = prev_gt = None
    status = Status.ITERATION_LIMIT
    t0 = time.perf_counter()
    k = 0
    res = projected_gradient_residual(x, g, tau)

    while True:
        elapsed = time.perf_counter() - t0
        if res <= cfg.tolerance or not g.any():
            status = Status.CONVERGED
        elif k >= cfg.max_iterations:
            status = Status.ITERATION_LIMIT
        elif elapsed >= cfg.time_limit:
            status = Status.TIME_LIMIT
        else:
            status = None
        if status is not None:
            part = estimate(x, g, tau, ctrl.epsilon)
            trace.append(TraceRecord(k, elapsed, f, res, part.n_active, part.n_nonactive,
                                     0.0, ctrl.epsilon))
            break

        step = sparsify(x, f, g, tau, ctrl, oracle.value_and_gradient)
        xt, ft, gt, part, moved = step.xt, step.value, step.grad, step.partition, step.moved
        free = part.nonactive
        if step.fallback:
            # Nonzero coordinates estimated active were not moved: keep them free.
            free = np.union1d(free, np.flatnonzero(x))

        memory.push(ft)
        ref = memory.reference
        if prev_xt is None or free.size == 0:
            m = 1.0
        else:
            m = bb_coefficient(xt[free] - prev_xt[free], gt[free] - prev_gt[free],
                               xt[free], gt[free])
        d = direction(xt, gt, free, 1.0 / m, tau)
        ls = armijo_nonmonotone(oracle.value, xt, d, gt, memory, cfg.gamma, cfg.delta,
                                phi_start=ft)
        if ls.capped:
            logger.debug("line search hit the backtracking cap at iteration %d", k)

        if ls.alpha > 0:
            x_new = xt + ls.alpha * d
            f_new, g_new = oracle.value_and_gradient(x_new)
        else:
            x_new, f_new, g_new = xt, ft, gt
        trace.append(TraceRecord(k, time.perf_counter() - t0, f, res, part.n_active,
                                 part.n_nonactive, ls.alpha, ctrl.epsilon,
                                 reference=ref, capped=ls.capped))

        if ls.alpha == 0 and not moved:
            # No progress from either stage; only a smaller epsilon can change the next step.
            if not ctrl.shrink():
                logger.warning("no progress possible at iteration %d; stopping", k)
                k += 1
                status = Status.ITERATION_LIMIT
                elapsed = time.perf_counter() - t0
                trace.append(TraceRecord(k, elapsed, f, res, part.n_active,
                                         part.n_nonactive, 0.0, ctrl.epsilon))
                break

        prev_xt, prev_gt = xt, gt
        x, f, g = x_new, f_new, g_new
        res = projected_gradient_residual(x, g, tau)
        k += 1

    elapsed = time.perf_counter() - t0
    return SolverResult(x_final=x, objective=float(f), residual=res, iterations=k,
                        status=status, sparsity=sparsity(x), time_s=elapsed, trace=trace)
