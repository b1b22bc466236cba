"""Command-line driver: ``l1active solve`` and ``l1active compare``."""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .baselines import solve_afw, solve_nmspg
from .core import ProblemInstance, SolverResult, Status
from .data_io import (generate_lasso, generate_logistic, read_libsvm, read_libsvm_regression,
                      write_trace)
from .solver import SolverConfig, solve

SOLVERS = {"asl1": solve, "nmspg": solve_nmspg, "afw": solve_afw}
SOLVE_HEADER = ("solver", "status", "obj", "residual", "zeros_pct", "iterations", "time_s")
COMPARE_HEADER = ("instance", "solver", "status", "obj", "time_s", "zeros_pct")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _seeds(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        try:
            out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None
    return out


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", choices=("lasso", "logistic"), default="lasso")
    p.add_argument("--input", metavar="PATH", help="LIBSVM data file")
    p.add_argument("--synthetic", metavar="N", type=int,
                   help="generate a synthetic instance with N variables")
    p.add_argument("--samples", type=int, default=500,
                   help="samples for synthetic logistic instances (default 500)")
    p.add_argument("--tau", default="auto",
                   help="l1 radius: a positive number or 'auto' (default)")
    p.add_argument("--tau-fraction", type=float, metavar="F",
                   help="radius as a fraction of the number of variables, tau = F*n")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=100_000)
    p.add_argument("--time-limit", type=float, default=3600.0, metavar="SEC")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="l1active", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ps = sub.add_parser("solve", help="solve one instance")
    _add_instance_args(ps)
    ps.add_argument("--solver", choices=sorted(SOLVERS), default="asl1")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--trace", metavar="PATH", help="write the convergence trace as CSV")

    pc = sub.add_parser("compare", help="AS-l1 first, then baselines down to its objective")
    _add_instance_args(pc)
    pc.add_argument("--solvers", default="asl1,nmspg,afw",
                    help="comma-separated solver list (default asl1,nmspg,afw)")
    pc.add_argument("--seeds", type=_seeds, default=[0], help="e.g. 1-10 or 1,3,5")
    pc.add_argument("--trace-dir", metavar="DIR", help="write one trace CSV per run here")
    return parser


def _build_instance(args, seed: int) -> ProblemInstance:
    if (args.input is None) == (args.synthetic is None):
        raise ValueError("give exactly one of --input or --synthetic")
    recipe_tau = None
    if args.input is not None:
        reader = read_libsvm if args.problem == "logistic" else read_libsvm_regression
        oracle = reader(args.input)
    elif args.problem == "lasso":
        inst = generate_lasso(args.synthetic, seed)
        oracle, recipe_tau = inst.problem, inst.tau
    else:
        oracle = generate_logistic(args.samples, args.synthetic, seed)

    n = oracle.dimension
    if args.tau_fraction is not None:
        tau = args.tau_fraction * n
    elif args.tau == "auto":
        tau = recipe_tau if recipe_tau is not None else 0.01 * n
    else:
        try:
            tau = float(args.tau)
        except ValueError:
            raise ValueError(f"--tau must be a number or 'auto', got {args.tau!r}") from None
    return ProblemInstance(oracle, tau)


def _config(args, target=None) -> SolverConfig:
    return SolverConfig(tolerance=args.tol, max_iterations=args.max_iter,
                        time_limit=args.time_limit, target=target)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _exit_code(results: list[SolverResult]) -> int:
    return 0 if all(r.status is Status.CONVERGED for r in results) else 2


def cmd_solve(args) -> int:
    problem = _build_instance(args, args.seed)
    result = SOLVERS[args.solver](problem, None, _config(args))
    if args.trace:
        write_trace(result.trace, args.trace)
    print("\t".join(SOLVE_HEADER))
    print("\t".join([args.solver, result.status.value, _fmt(result.objective),
                     _fmt(result.residual), f"{100 * result.sparsity:.2f}",
                     str(result.iterations), f"{result.time_s:.3f}"]))
    return _exit_code([result])


def cmd_compare(args) -> int:
    names = [s.strip() for s in args.solvers.split(",") if s.strip()]
    unknown = [s for s in names if s not in SOLVERS]
    if unknown or not names:
        raise ValueError(f"unknown solver(s): {', '.join(unknown) or '(none)'}")
    baselines = [s for s in names if s != "asl1"]
    if args.trace_dir:
        os.makedirs(args.trace_dir, exist_ok=True)
    seeds = args.seeds if args.synthetic is not None else [0]

    print("\t".join(COMPARE_HEADER))
    results: list[SolverResult] = []
    for seed in seeds:
        label = f"seed{seed}" if args.synthetic is not None else os.path.basename(args.input)
        problem = _build_instance(args, seed)
        ref = solve(problem, None, _config(args))
        f_star = ref.objective
        target = f_star + 1e-6 * (1 + abs(f_star))
        runs = [("asl1", ref)] if "asl1" in names else []
        runs += [(s, SOLVERS[s](problem, None, _config(args, target))) for s in baselines]
        for name, res in runs:
            results.append(res)
            print("\t".join([label, name, res.status.value, _fmt(res.objective),
                             f"{res.time_s:.3f}", f"{100 * res.sparsity:.2f}"]))
            if args.trace_dir:
                write_trace(res.trace, os.path.join(args.trace_dir, f"{label}_{name}.csv"))
        sys.stdout.flush()
    return _exit_code(results)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "solve":
            return cmd_solve(args)
        return cmd_compare(args)
    except (ValueError, OSError, FloatingPointError) as exc:
        print(f"l1active: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
