"""Active-set projected gradient for smooth minimization over the l1-ball."""

from .active_set import (ActiveSetPartition, EpsilonController, StationaryPointError,
                         adapt_epsilon, descent_move, estimate, sparsify,
                         stationarity_violation)
from .core import (ConvergenceTrace, ObjectiveOracle, ProblemInstance, SolverResult, Status,
                   TraceRecord, check_feasible, gradient_check, sparsity)
from .projection import (RestrictedManifold, project_l1_ball, project_restricted,
                         project_simplex, projected_gradient_residual)
from .baselines import AtomWeights, solve_afw, solve_nmspg
from .solver import SolverConfig, solve

__all__ = [
    "ActiveSetPartition", "AtomWeights", "ConvergenceTrace", "EpsilonController", "ObjectiveOracle",
    "ProblemInstance", "RestrictedManifold", "SolverConfig", "SolverResult",
    "StationaryPointError", "Status", "TraceRecord", "adapt_epsilon", "check_feasible",
    "descent_move", "estimate", "gradient_check", "project_l1_ball", "project_restricted",
    "project_simplex", "projected_gradient_residual", "solve", "solve_afw",
    "solve_nmspg", "sparsify", "sparsity", "stationarity_violation",
]
