"""LASSO and logistic-regression oracles backed by CSR matrices."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .core import Vector, as_vector


class SparseMatrix:
    """Row-compressed matrix (0-based ``indptr``/``indices``/``data``).

    Column indices are kept strictly increasing within each row. ``products``
    counts passes over the stored nonzeros (one per matvec or rmatvec).
    """

    def __init__(self, indptr, indices, data, shape):
        mat = sp.csr_matrix((np.asarray(data, dtype=np.float64),
                             np.asarray(indices, dtype=np.int64),
                             np.asarray(indptr, dtype=np.int64)), shape=shape)
        if np.any(np.diff(mat.indptr) < 0):
            raise ValueError("row offsets must be non-decreasing")
        for r in range(mat.shape[0]):
            cols = mat.indices[mat.indptr[r]:mat.indptr[r + 1]]
            if cols.size > 1 and np.any(np.diff(cols) <= 0):
                raise ValueError(f"column indices in row {r} are not strictly increasing")
        self._csr = mat
        self._csr_t = mat.T.tocsr()
        self.products = 0

    @classmethod
    def from_scipy(cls, mat) -> "SparseMatrix":
        mat = sp.csr_matrix(mat, dtype=np.float64)
        mat.sum_duplicates()
        mat.sort_indices()
        return cls(mat.indptr, mat.indices, mat.data, mat.shape)

    @classmethod
    def from_dense(cls, a) -> "SparseMatrix":
        return cls.from_scipy(sp.csr_matrix(np.asarray(a, dtype=np.float64)))

    @property
    def shape(self) -> tuple[int, int]:
        return self._csr.shape

    @property
    def indptr(self) -> np.ndarray:
        return self._csr.indptr

    @property
    def indices(self) -> np.ndarray:
        return self._csr.indices

    @property
    def data(self) -> np.ndarray:
        return self._csr.data

    @property
    def nnz(self) -> int:
        return int(self._csr.nnz)

    def matvec(self, x: Vector) -> Vector:
        self.products += 1
        return self._csr @ x

    def rmatvec(self, r: Vector) -> Vector:
        self.products += 1
        return self._csr_t @ r

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self._csr.indptr[i], self._csr.indptr[i + 1]
        return self._csr.indices[lo:hi], self._csr.data[lo:hi]

    def toarray(self) -> np.ndarray:
        return self._csr.toarray()

    def to_scipy(self) -> sp.csr_matrix:
        return self._csr.copy()


class LassoProblem:
    """``phi(x) = ||Ax - b||^2`` (no 1/2 factor); gradient ``2 A'(Ax - b)``."""

    def __init__(self, A: SparseMatrix, b):
        if not isinstance(A, SparseMatrix):
            A = SparseMatrix.from_scipy(A) if sp.issparse(A) else SparseMatrix.from_dense(A)
        self.A = A
        self.b = as_vector(b, A.shape[0]).copy()
        self.dimension = A.shape[1]

    def value(self, x: Vector) -> float:
        r = self.A.matvec(as_vector(x, self.dimension)) - self.b
        return float(r @ r)

    def gradient(self, x: Vector) -> Vector:
        return self.value_and_gradient(x)[1]

    def value_and_gradient(self, x: Vector) -> tuple[float, Vector]:
        r = self.A.matvec(as_vector(x, self.dimension)) - self.b
        return float(r @ r), 2.0 * self.A.rmatvec(r)


def _log1pexp_neg(t: np.ndarray) -> np.ndarray:
    """Stable ``log(1 + exp(-t))``."""
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = np.log1p(np.exp(-t[pos]))
    tn = t[~pos]
    out[~pos] = -tn + np.log1p(np.exp(tn))
    return out


def _sigmoid_neg(t: np.ndarray) -> np.ndarray:
    """Stable ``1 / (1 + exp(t))``."""
    out = np.empty_like(t)
    pos = t >= 0
    e = np.exp(-t[pos])
    out[pos] = e / (1.0 + e)
    out[~pos] = 1.0 / (1.0 + np.exp(t[~pos]))
    return out


class LogisticProblem:
    """``phi(x) = sum_i log(1 + exp(-y_i x'a_i))`` with samples as rows of ``A``."""

    def __init__(self, A: SparseMatrix, labels):
        if not isinstance(A, SparseMatrix):
            A = SparseMatrix.from_scipy(A) if sp.issparse(A) else SparseMatrix.from_dense(A)
        y = as_vector(labels, A.shape[0]).copy()
        if not np.all(np.abs(y) == 1):
            raise ValueError("labels must be +1 or -1")
        self.A = A
        self.labels = y
        self.dimension = A.shape[1]

    @property
    def n_samples(self) -> int:
        return self.A.shape[0]

    def value(self, x: Vector) -> float:
        t = self.labels * self.A.matvec(as_vector(x, self.dimension))
        return float(_log1pexp_neg(t).sum())

    def gradient(self, x: Vector) -> Vector:
        return self.value_and_gradient(x)[1]

    def value_and_gradient(self, x: Vector) -> tuple[float, Vector]:
        t = self.labels * self.A.matvec(as_vector(x, self.dimension))
        f = float(_log1pexp_neg(t).sum())
        return f, self.A.rmatvec(-self.labels * _sigmoid_neg(t))
