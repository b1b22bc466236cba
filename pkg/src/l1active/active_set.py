"""Active-set estimation, the sparsifying descent move and epsilon control.

Given a feasible ``x`` and ``g = grad phi(x)``, the estimate flags a
coordinate as active (predicted zero at the solution) when

    eps*tau*g'(tau e_i + x) <= 0 <= x_i <= eps*tau*g'(tau e_i - x)   or
    eps*tau*g'(tau e_i + x) <= x_i <= 0 <= eps*tau*g'(tau e_i - x).

The descent move zeroes the active coordinates and shifts their l1 mass onto
one steepest coordinate, against the sign of its gradient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Vector


class StationaryPointError(ArithmeticError):
    """Raised when the gradient vanishes, so no steepest index exists."""


@dataclass(frozen=True)
class ActiveSetPartition:
    active: np.ndarray
    nonactive: np.ndarray
    steepest: np.ndarray

    @property
    def n_active(self) -> int:
        return int(self.active.size)

    @property
    def n_nonactive(self) -> int:
        return int(self.nonactive.size)


def estimate(x: Vector, g: Vector, tau: float, eps: float) -> ActiveSetPartition:
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    gx = float(g @ x)
    lower = eps * tau * (tau * g + gx)  # eps*tau*g'(tau e_i + x)
    upper = eps * tau * (tau * g - gx)  # eps*tau*g'(tau e_i - x)
    pos = (lower <= 0) & (0 <= x) & (x <= upper)
    neg = (lower <= x) & (x <= 0) & (0 <= upper)
    mask = pos | neg
    absg = np.abs(g)
    gmax = absg.max() if absg.size else 0.0
    steepest = np.flatnonzero(absg == gmax) if gmax > 0 else np.empty(0, dtype=np.intp)
    return ActiveSetPartition(
        active=np.flatnonzero(mask),
        nonactive=np.flatnonzero(~mask),
        steepest=steepest,
    )


def descent_move(x: Vector, g: Vector, partition: ActiveSetPartition, subset=None) -> Vector:
    """Zero ``subset`` (default: every active index) and move its mass onto j.

    j is the smallest steepest index. If rounding ever puts j among the
    indices to zero, it is left out of the subset.
    """
    if partition.steepest.size == 0:
        raise StationaryPointError("gradient is zero: x is a stationary point")
    j = int(partition.steepest[0])
    a_hat = partition.active if subset is None else np.asarray(subset, dtype=np.intp)
    a_hat = a_hat[a_hat != j]
    xt = x.copy()
    if a_hat.size == 0:
        return xt
    mass = np.abs(x[a_hat]).sum()
    xt[a_hat] = 0.0
    sign = 1.0 if g[j] >= 0 else -1.0
    xt[j] = x[j] - sign * mass
    # Rounding can leave ||xt||_1 an ulp above ||x||_1; pull xt_j in until it is not.
    norm = np.abs(x).sum()
    while np.abs(xt).sum() > norm and xt[j] != 0:
        xt[j] = np.nextafter(xt[j], 0.0)
    return xt


@dataclass
class EpsilonController:
    """Geometric back-off of the estimate parameter.

    ``epsilon`` only decreases and never goes below ``floor``.
    """

    epsilon: float = 1e-6
    shrink_factor: float = 0.1
    floor: float = 1e-16

    def __post_init__(self):
        if not 0 < self.shrink_factor < 1:
            raise ValueError("shrink_factor must lie in (0, 1)")
        if not 0 < self.floor <= self.epsilon:
            raise ValueError("need 0 < floor <= epsilon")

    @property
    def at_floor(self) -> bool:
        return self.epsilon <= self.floor

    def shrink(self) -> bool:
        """Reduce epsilon; return False if it was already at the floor."""
        if self.at_floor:
            return False
        self.epsilon = max(self.floor, self.epsilon * self.shrink_factor)
        return True


def adapt_epsilon(ctrl: EpsilonController, phi_before: float, phi_after: float,
                  x: Vector, xt: Vector) -> bool:
    """Accept the move or shrink epsilon.

    Returns True to accept ``xt``. A move that changed ``x`` without strictly
    lowering the objective shrinks epsilon and returns False (retry). At the
    floor epsilon cannot shrink further; the caller then falls back to
    ``xt = x``.
    """
    if np.array_equal(x, xt) or phi_after < phi_before:
        return True
    ctrl.shrink()
    return False


@dataclass
class DescentStep:
    xt: Vector
    value: float
    grad: Vector
    partition: ActiveSetPartition
    moved: bool
    # Epsilon hit its floor without a decrease; xt is x.
    fallback: bool = False


def sparsify(x: Vector, f: float, g: Vector, tau: float, ctrl: EpsilonController,
             value_and_gradient) -> DescentStep:
    """Estimate, move, and shrink epsilon until the move strictly lowers phi.

    At the epsilon floor the move is abandoned (``xt = x``); the returned
    partition is then the last estimate tried.
    """
    while True:
        part = estimate(x, g, tau, ctrl.epsilon)
        xt = descent_move(x, g, part)
        if np.array_equal(xt, x):
            return DescentStep(xt, f, g, part, moved=False)
        ft, gt = value_and_gradient(xt)
        was_floor = ctrl.at_floor
        if adapt_epsilon(ctrl, f, ft, x, xt):
            return DescentStep(xt, ft, gt, part, moved=True)
        if was_floor:
            return DescentStep(x.copy(), f, g, part, moved=False, fallback=True)


def stationarity_violation(x: Vector, g: Vector, tau: float) -> Vector:
    """Per-coordinate violation ``max{0, -g'(tau e_i - x), -g'(-tau e_i - x)}``."""
    gx = float(g @ x)
    return np.maximum(0.0, np.maximum(gx - tau * g, gx + tau * g))
