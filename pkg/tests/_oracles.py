"""Reference computations kept independent of the package under test."""

import itertools

import numpy as np


def brute_l1_projection(v, tau):
    """Projection onto the l1-ball by enumerating candidate supports.

    For each nonempty support S the KKT conditions fix
    theta = (sum_{S} |v_i| - tau) / |S|; the valid S has theta > 0,
    |v_i| > theta on S and |v_i| <= theta off S.
    """
    v = np.asarray(v, dtype=float)
    a = np.abs(v)
    if a.sum() <= tau:
        return v.copy()
    n = v.size
    for r in range(1, n + 1):
        for S in itertools.combinations(range(n), r):
            S = list(S)
            theta = (a[S].sum() - tau) / len(S)
            off = np.setdiff1d(np.arange(n), S)
            if theta > 0 and np.all(a[S] > theta) and np.all(a[off] <= theta):
                return np.sign(v) * np.maximum(a - theta, 0)
    raise AssertionError("no valid support found")


def brute_l1_projection_batch(V, tau):
    """Vectorized support enumeration over the rows of V (small n only)."""
    V = np.asarray(V, dtype=float)
    A = np.abs(V)
    n = V.shape[1]
    out = V.copy()
    done = A.sum(axis=1) <= tau
    for r in range(1, n + 1):
        for S in itertools.combinations(range(n), r):
            mask = np.zeros(n, dtype=bool)
            mask[list(S)] = True
            theta = (A[:, mask].sum(axis=1) - tau) / r
            ok = (~done) & (theta > 0)
            ok &= np.all(A[:, mask] > theta[:, None], axis=1)
            if (~mask).any():
                ok &= np.all(A[:, ~mask] <= theta[:, None], axis=1)
            out[ok] = np.sign(V[ok]) * np.maximum(A[ok] - theta[ok, None], 0)
            done |= ok
    assert done.all()
    return out


def brute_simplex_projection(v):
    v = np.asarray(v, dtype=float)
    n = v.size
    for r in range(1, n + 1):
        for S in itertools.combinations(range(n), r):
            S = list(S)
            theta = (v[S].sum() - 1.0) / len(S)
            off = np.setdiff1d(np.arange(n), S)
            if np.all(v[S] > theta) and np.all(v[off] <= theta):
                return np.maximum(v - theta, 0)
    raise AssertionError("no valid support found")


def finite_difference_gradient(f, x, rel_step=1e-6):
    x = np.asarray(x, dtype=float).copy()
    g = np.empty_like(x)
    for i in range(x.size):
        h = rel_step * (1 + abs(x[i]))
        xi = x[i]
        x[i] = xi + h
        fp = f(x)
        x[i] = xi - h
        fm = f(x)
        x[i] = xi
        g[i] = (fp - fm) / (2 * h)
    return g


class Quadratic:
    """phi(x) = 0.5 x'Qx + c'x with Q positive semidefinite."""

    def __init__(self, Q, c):
        self.Q = np.asarray(Q, dtype=float)
        self.c = np.asarray(c, dtype=float)
        self.dimension = self.c.size
        self.calls = 0

    @classmethod
    def random(cls, n, rng, scale=1.0):
        M = rng.standard_normal((n, n))
        return cls(scale * (M.T @ M) / n, rng.standard_normal(n))

    def value(self, x):
        self.calls += 1
        return float(0.5 * x @ self.Q @ x + self.c @ x)

    def gradient(self, x):
        return self.Q @ x + self.c

    def value_and_gradient(self, x):
        return self.value(x), self.gradient(x)


class ShiftedSquare:
    """phi(x) = ||x - c||^2."""

    def __init__(self, c):
        self.c = np.asarray(c, dtype=float)
        self.dimension = self.c.size

    def value(self, x):
        r = x - self.c
        return float(r @ r)

    def gradient(self, x):
        return 2 * (x - self.c)

    def value_and_gradient(self, x):
        return self.value(x), self.gradient(x)


class Linear:
    """phi(x) = c'x."""

    def __init__(self, c):
        self.c = np.asarray(c, dtype=float)
        self.dimension = self.c.size

    def value(self, x):
        return float(self.c @ x)

    def gradient(self, x):
        return self.c.copy()

    def value_and_gradient(self, x):
        return self.value(x), self.gradient(x)


def random_feasible(n, tau, rng, sparse_prob=0.3):
    """Random point of the l1-ball: on the sphere, interior, or with zeros."""
    x = rng.standard_normal(n)
    x[rng.random(n) < sparse_prob] = 0.0
    if not x.any():
        x[rng.integers(n)] = 1.0
    kind = rng.integers(3)
    radius = tau if kind == 0 else tau * rng.uniform(0.05, 1.0)
    x *= radius / np.abs(x).sum()
    if np.abs(x).sum() > tau:
        x *= tau / np.abs(x).sum()
    return x
