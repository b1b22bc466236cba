"""Shared types: problem instances, objective oracles, results and traces."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
from numpy.typing import NDArray

Vector = NDArray[np.float64]

# Absolute threshold below which a coordinate counts as zero.
ZERO_TOL = 1e-5
# Relative slack allowed on ||x||_1 <= tau for projected iterates.
FEAS_TOL = 1e-12


class ObjectiveOracle(Protocol):
    """Smooth objective with value and gradient access.

    Implementations must be deterministic: identical inputs give bitwise
    identical outputs.
    """

    dimension: int

    def value(self, x: Vector) -> float: ...

    def gradient(self, x: Vector) -> Vector: ...

    def value_and_gradient(self, x: Vector) -> tuple[float, Vector]: ...


class Status(enum.Enum):
    CONVERGED = "Converged"
    ITERATION_LIMIT = "IterationLimit"
    TIME_LIMIT = "TimeLimit"


@dataclass(frozen=True)
class ProblemInstance:
    """Minimize ``objective`` over ``{x : ||x||_1 <= radius}``."""

    objective: ObjectiveOracle
    radius: float

    def __post_init__(self):
        if not (self.radius > 0 and np.isfinite(self.radius)):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")
        if int(self.objective.dimension) < 1:
            raise ValueError("objective dimension must be at least 1")

    @property
    def dimension(self) -> int:
        return int(self.objective.dimension)


@dataclass
class TraceRecord:
    iteration: int
    time_s: float
    obj: float
    residual: float
    n_active: int
    n_nonactive: int
    alpha: float
    epsilon: float
    # Non-monotone reference value used by the line search (nan if unused).
    reference: float = float("nan")
    # Line search hit its backtracking cap on this iteration.
    capped: bool = False


@dataclass
class ConvergenceTrace:
    records: list[TraceRecord] = field(default_factory=list)

    def append(self, record: TraceRecord) -> None:
        if self.records:
            last = self.records[-1]
            if record.iteration <= last.iteration:
                raise ValueError("trace iterations must be strictly increasing")
            if record.time_s < last.time_s:
                raise ValueError("trace wall-clock must be non-decreasing")
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])


@dataclass
class SolverResult:
    x_final: Vector
    objective: float
    residual: float
    iterations: int
    status: Status
    sparsity: float
    time_s: float = 0.0
    trace: ConvergenceTrace = field(default_factory=ConvergenceTrace)
    # Solver-specific outputs (e.g. final atom weights for Frank-Wolfe).
    extra: dict = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def as_vector(x, n: int | None = None) -> Vector:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {v.shape}")
    if n is not None and v.shape[0] != n:
        raise ValueError(f"dimension mismatch: expected {n}, got {v.shape[0]}")
    return v


def check_feasible(x, tau: float, tol: float = FEAS_TOL, n: int | None = None) -> bool:
    """Return True iff ``||x||_1 <= tau * (1 + tol)``."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    v = as_vector(x, n)
    return bool(np.abs(v).sum() <= tau * (1.0 + tol))


def sparsity(x, threshold: float = ZERO_TOL) -> float:
    """Fraction of coordinates with ``|x_i| <= threshold``."""
    v = as_vector(x)
    if v.size == 0:
        return 0.0
    return float(np.count_nonzero(np.abs(v) <= threshold)) / v.size


def gradient_check(oracle: ObjectiveOracle, x) -> float:
    """Max relative discrepancy between the oracle gradient and central differences.

    The step for coordinate i is ``1e-6 * (1 + |x_i|)`` and the error is
    measured as ``|g_i - fd_i| / (1 + |fd_i|)``.
    """
    x = as_vector(x, oracle.dimension).copy()
    if not np.all(np.isfinite(x)):
        raise ValueError("x must be finite")
    g = np.asarray(oracle.gradient(x), dtype=np.float64)
    if not np.all(np.isfinite(g)):
        raise FloatingPointError("oracle returned a non-finite gradient")
    err = 0.0
    for i in range(x.size):
        h = 1e-6 * (1.0 + abs(x[i]))
        xi = x[i]
        x[i] = xi + h
        fp = oracle.value(x)
        x[i] = xi - h
        fm = oracle.value(x)
        x[i] = xi
        if not (np.isfinite(fp) and np.isfinite(fm)):
            raise FloatingPointError("oracle returned a non-finite value")
        fd = (fp - fm) / (2.0 * h)
        err = max(err, abs(g[i] - fd) / (1.0 + abs(fd)))
    return err
