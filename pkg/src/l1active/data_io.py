"""Instance ingestion (LIBSVM files, synthetic generators) and trace output."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .core import ConvergenceTrace, TraceRecord
from .objectives import LassoProblem, LogisticProblem, SparseMatrix

TRACE_HEADER = ("iter", "time_s", "obj", "residual", "n_active", "n_nonactive", "alpha", "epsilon")

# Accepted label encodings, each mapped to {-1, +1}.
_LABEL_MAPS = (
    {-1.0: -1.0, 1.0: 1.0},
    {0.0: -1.0, 1.0: 1.0},
    {1.0: -1.0, 2.0: 1.0},
)


class LibsvmFormatError(ValueError):
    pass


def _round_half_away(v: float) -> int:
    return int(math.floor(abs(v) + 0.5)) * (1 if v >= 0 else -1)


def _label_mapping(labels, label_lines, path) -> dict[float, float]:
    seen: set[float] = set()
    for lab, lineno in zip(labels, label_lines):
        seen.add(lab)
        if not any(seen <= m.keys() for m in _LABEL_MAPS):
            raise LibsvmFormatError(
                f"{path}:{lineno}: label {lab:g} does not fit a binary encoding "
                "({-1,+1}, {0,1} or {1,2}) with the labels before it")
    return next(m for m in _LABEL_MAPS if seen <= m.keys())


def _parse_libsvm(path, n_features: int | None):
    labels: list[float] = []
    label_lines: list[int] = []
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    n_seen = 0
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            try:
                label = float(tokens[0])
            except ValueError:
                raise LibsvmFormatError(f"{path}:{lineno}: bad label {tokens[0]!r}") from None
            r = len(labels)
            prev = 0
            for tok in tokens[1:]:
                idx_s, sep, val_s = tok.partition(":")
                try:
                    if not sep:
                        raise ValueError
                    idx = int(idx_s)
                    val = float(val_s)
                except ValueError:
                    raise LibsvmFormatError(f"{path}:{lineno}: malformed token {tok!r}") from None
                if idx < 1:
                    raise LibsvmFormatError(f"{path}:{lineno}: index must be >= 1, got {idx}")
                if idx <= prev:
                    raise LibsvmFormatError(f"{path}:{lineno}: indices must be strictly increasing")
                if not math.isfinite(val):
                    raise LibsvmFormatError(f"{path}:{lineno}: non-finite value {tok!r}")
                prev = idx
                rows.append(r)
                cols.append(idx - 1)
                vals.append(val)
            n_seen = max(n_seen, prev)
            labels.append(label)
            label_lines.append(lineno)

    n = n_seen if n_features is None else int(n_features)
    if n_features is not None and n_seen > n:
        raise LibsvmFormatError(f"{path}: index {n_seen} exceeds n_features={n}")
    n = max(n, 1)
    mat = sp.csr_matrix((vals, (rows, cols)), shape=(len(labels), n))
    return SparseMatrix.from_scipy(mat), labels, label_lines


def read_libsvm(path, n_features: int | None = None) -> LogisticProblem:
    """Parse a LIBSVM file (``label idx:val ...`` with 1-based indices).

    Labels in {-1,+1}, {0,1} or {1,2} are mapped to {-1,+1}, the larger
    value becoming +1. A file mixing encodings is rejected. The number of
    features is the largest index seen unless ``n_features`` is given.
    Blank lines and ``#`` comments are skipped.
    """
    A, labels, label_lines = _parse_libsvm(path, n_features)
    mapping = _label_mapping(labels, label_lines, path)
    y = np.array([mapping[lab] for lab in labels], dtype=np.float64)
    return LogisticProblem(A, y)


def read_libsvm_regression(path, n_features: int | None = None) -> LassoProblem:
    """LIBSVM file read as a least-squares problem; labels become ``b``."""
    A, labels, _ = _parse_libsvm(path, n_features)
    return LassoProblem(A, np.array(labels, dtype=np.float64))


def write_libsvm(path, A: SparseMatrix, labels) -> None:
    """Write rows of ``A`` with +1/-1 labels; zero entries are omitted."""
    with open(path, "w") as fh:
        for i, lab in enumerate(labels):
            cols, vals = A.row(i)
            feats = " ".join(f"{c + 1}:{float(v)!r}" for c, v in zip(cols, vals) if v != 0)
            head = "+1" if lab > 0 else "-1"
            fh.write(f"{head} {feats}".rstrip() + "\n")


@dataclass
class LassoInstance:
    problem: LassoProblem
    x_true: np.ndarray
    tau: float


def generate_lasso(n: int, seed: int) -> LassoInstance:
    """Random LASSO instance with a sparse +/-1 ground truth.

    ``A`` is ``(n // 2) x n`` with U(0,1) entries, the ground truth has
    ``round(0.05 m)`` entries equal to +/-1 (independent signs), and
    ``b = A x* + 0.001 v`` with standard normal ``v``. The radius is
    ``0.99 ||x*||_1``.
    """
    if n < 20:
        raise ValueError(f"n must be at least 20, got {n}")
    m = n // 2
    k = _round_half_away(0.05 * m)
    if k < 1:
        raise ValueError(f"n={n} gives no nonzeros in the ground truth")
    rng = np.random.default_rng(seed)
    A = rng.uniform(0.0, 1.0, size=(m, n))
    x_true = np.zeros(n)
    support = rng.choice(n, size=k, replace=False)
    x_true[support] = rng.choice(np.array([-1.0, 1.0]), size=k)
    v = rng.standard_normal(m)
    b = A @ x_true + 0.001 * v
    tau = 0.99 * float(np.abs(x_true).sum())
    return LassoInstance(LassoProblem(SparseMatrix.from_dense(A), b), x_true, tau)


def generate_logistic(n_samples: int, n_features: int, seed: int, density: float = 0.1,
                      n_informative: int | None = None, noise: float = 0.5) -> LogisticProblem:
    """Sparse synthetic binary classification data.

    Features are standard normal on a random ``density`` fraction of
    entries; labels are signs of a sparse linear score plus Gaussian noise.
    """
    if n_samples < 1 or n_features < 1:
        raise ValueError("need at least one sample and one feature")
    if not 0 < density <= 1:
        raise ValueError("density must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    mat = sp.random(n_samples, n_features, density=density, format="csr", random_state=rng,
                    data_rvs=rng.standard_normal)
    k = n_informative if n_informative is not None else max(1, n_features // 20)
    w = np.zeros(n_features)
    w[rng.choice(n_features, size=k, replace=False)] = rng.standard_normal(k)
    score = mat @ w + noise * rng.standard_normal(n_samples)
    y = np.where(score >= 0, 1.0, -1.0)
    return LogisticProblem(SparseMatrix.from_scipy(mat), y)


def write_trace(trace: ConvergenceTrace, path) -> None:
    """CSV with header ``iter,time_s,obj,residual,n_active,n_nonactive,alpha,epsilon``."""
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(TRACE_HEADER)
            for r in trace:
                w.writerow([r.iteration, f"{r.time_s:.17g}", f"{r.obj:.17g}",
                            f"{r.residual:.17g}", r.n_active, r.n_nonactive,
                            f"{r.alpha:.17g}", f"{r.epsilon:.17g}"])
    except OSError as exc:
        raise OSError(f"cannot write trace to {os.fspath(path)}: {exc}") from exc


def read_trace(path) -> ConvergenceTrace:
    trace = ConvergenceTrace()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != TRACE_HEADER:
            raise ValueError(f"{path}: unexpected trace header {header}")
        for row in reader:
            trace.append(TraceRecord(int(row[0]), float(row[1]), float(row[2]), float(row[3]),
                                     int(row[4]), int(row[5]), float(row[6]), float(row[7])))
    return trace
