"""Dense symmetric eigensolver.

Householder reduction to tridiagonal form followed by implicit-shift QL
iterations, with the orthogonal transforms accumulated into the
eigenvector matrix. No randomness anywhere, so identical input gives
bit-identical output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, Disconnected, NoConvergence

MAX_QL_ITERATIONS = 50
CONNECTIVITY_TOL = 1e-10
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EigenPairs:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # columns aligned with values

    @property
    def k(self) -> int:
        return len(self.values)


def tridiagonalize(M: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (d, e, Q) with Q^T M Q tridiagonal, diagonal d and sub-diagonal e."""
    A = np.array(M, dtype=float)
    n = A.shape[0]
    Q = np.eye(n)
    for k in range(n - 2):
        x = A[k + 1:, k]
        norm = math.sqrt(float(x @ x))
        if norm == 0.0:
            continue
        v = x.copy()
        v[0] += math.copysign(norm, x[0])
        v /= math.sqrt(float(v @ v))
        # H = I - 2 v v^T applied on both sides of the trailing block
        A[k + 1:, :] -= 2.0 * np.outer(v, v @ A[k + 1:, :])
        A[:, k + 1:] -= 2.0 * np.outer(A[:, k + 1:] @ v, v)
        Q[:, k + 1:] -= 2.0 * np.outer(Q[:, k + 1:] @ v, v)
    d = np.diag(A).copy()
    e = np.zeros(n)
    if n > 1:
        e[:-1] = np.diag(A, -1)
    return d, e, Q


def _ql_implicit(d: np.ndarray, e: np.ndarray, V: np.ndarray) -> None:
    """In-place QL with implicit shifts on (d, e); rotations accumulated into V."""
    n = len(d)
    f = 0.0
    tst1 = 0.0
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n - 1 and abs(e[m]) > _EPS * tst1:
            m += 1
        if m > l:
            it = 0
            while True:
                it += 1
                if it > MAX_QL_ITERATIONS:
                    raise NoConvergence(f"eigenvalue {l} did not converge in {MAX_QL_ITERATIONS} iterations")
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = math.hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                d[l + 2:] -= h
                f += h

                p = d[m]
                c = c2 = c3 = 1.0
                el1 = e[l + 1]
                s = s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = math.hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    vi = V[:, i].copy()
                    vi1 = V[:, i + 1]
                    V[:, i] = c * vi - s * vi1
                    V[:, i + 1] = s * vi + c * vi1
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if abs(e[l]) <= _EPS * tst1:
                    break
        d[l] += f
        e[l] = 0.0


def _fix_signs(V: np.ndarray) -> None:
    """Make the first entry with magnitude above 1e-12 positive in every column."""
    for j in range(V.shape[1]):
        nz = np.flatnonzero(np.abs(V[:, j]) > 1e-12)
        if nz.size and V[nz[0], j] < 0:
            V[:, j] = -V[:, j]


def eigh(M: np.ndarray) -> EigenPairs:
    """Full spectrum of a real symmetric matrix, ascending."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NoConvergence("matrix contains non-finite entries")
    if not np.array_equal(M, M.T):
        raise ValueError("matrix is not exactly symmetric")
    n = M.shape[0]
    if n == 0:
        return EigenPairs(np.zeros(0), np.zeros((0, 0)))
    d, e, V = tridiagonalize(M)
    _ql_implicit(d, e, V)
    order = np.argsort(d, kind="stable")
    vals = d[order]
    vecs = V[:, order]
    _fix_signs(vecs)
    return EigenPairs(vals, vecs)


def smallest_eigenpairs(M: np.ndarray, k: int) -> EigenPairs:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    if not 1 <= k <= M.shape[0]:
        raise DimensionMismatch(f"k={k} outside [1, {M.shape[0]}]")
    full = eigh(M)
    return EigenPairs(full.values[:k].copy(), full.vectors[:, :k].copy())


def fiedler_pair(M: np.ndarray) -> tuple[float, np.ndarray]:
    """Second-smallest eigenvalue and its eigenvector of a normalized Laplacian.

    Raises :class:`Disconnected` when the eigenvalue is <= 1e-10.
    """
    M = np.asarray(M)
    if M.shape[0] < 2:
        raise Disconnected("need at least two nodes for a Fiedler vector")
    pairs = smallest_eigenpairs(M, 2)
    lam2 = float(pairs.values[1])
    if lam2 <= CONNECTIVITY_TOL:
        raise Disconnected(f"second eigenvalue {lam2:.3e} is zero; split components first")
    return lam2, pairs.vectors[:, 1]


def fiedler_vector(M: np.ndarray) -> np.ndarray:
    return fiedler_pair(M)[1]
