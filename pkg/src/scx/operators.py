"""Node-similarity operators and Laplacians for the simplicial, motif and graph methods."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _components

from .complex import SimplicialComplex, boundary_matrix, graph_triangles
from .errors import EmptyActiveSet, NonIntegerEntry

METHODS = ("simplicial", "motif", "graph")


def _triangle_counts(n: int, tri: np.ndarray) -> np.ndarray:
    A = np.zeros((n, n), dtype=np.int64)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        np.add.at(A, (tri[:, a], tri[:, b]), 1)
        np.add.at(A, (tri[:, b], tri[:, a]), 1)
    return A


def simplicial_adjacency_direct(X: SimplicialComplex) -> np.ndarray:
    """Count of filled triangles shared by each node pair; zero diagonal."""
    return _triangle_counts(X.n0, X.triangle_array())


def simplicial_adjacency_boundary(X: SimplicialComplex) -> np.ndarray:
    """Same matrix as :func:`simplicial_adjacency_direct`, via (B1 B2)(B1 B2)^T / 4."""
    B12 = boundary_matrix(X, 1) @ boundary_matrix(X, 2)
    G = (B12 @ B12.T).toarray().astype(np.int64)
    np.fill_diagonal(G, 0)
    if np.any(G % 4):
        i, j = np.argwhere(G % 4)[0]
        raise NonIntegerEntry(f"[B12 B12^T][{i},{j}] = {G[i, j]} is not divisible by 4")
    return G // 4


def motif_adjacency(X: SimplicialComplex) -> np.ndarray:
    """Triangle-motif adjacency: shared 3-cliques of the edge graph, filled or not."""
    idx = X.index
    tri = np.array([[idx[a], idx[b], idx[c]] for a, b, c in graph_triangles(X)], dtype=np.int64)
    return _triangle_counts(X.n0, tri.reshape(-1, 3))


def graph_adjacency(X: SimplicialComplex) -> np.ndarray:
    A = np.zeros((X.n0, X.n0), dtype=np.int64)
    e = X.edge_array()
    A[e[:, 0], e[:, 1]] = 1
    A[e[:, 1], e[:, 0]] = 1
    return A


def adjacency(X: SimplicialComplex, method: str) -> np.ndarray:
    if method == "simplicial":
        return simplicial_adjacency_boundary(X)
    if method == "motif":
        return motif_adjacency(X)
    if method == "graph":
        return graph_adjacency(X)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


@dataclass(frozen=True)
class OperatorBundle:
    """Adjacency, degrees and Laplacians for one method.

    ``adjacency``, ``degree`` and ``laplacian`` cover every node;
    ``normalized_laplacian`` covers only ``active_nodes`` (nonzero degree).
    """

    method: str
    nodes: tuple[int, ...]
    adjacency: np.ndarray
    degree: np.ndarray
    laplacian: np.ndarray
    normalized_laplacian: np.ndarray
    active: np.ndarray  # dense positions of active nodes

    @property
    def active_nodes(self) -> tuple[int, ...]:
        return tuple(self.nodes[i] for i in self.active)

    @property
    def excluded_nodes(self) -> tuple[int, ...]:
        mask = np.ones(len(self.nodes), dtype=bool)
        mask[self.active] = False
        return tuple(v for v, m in zip(self.nodes, mask) if m)

    @property
    def active_adjacency(self) -> np.ndarray:
        return self.adjacency[np.ix_(self.active, self.active)]

    @property
    def active_degree(self) -> np.ndarray:
        return self.degree[self.active]


def build_bundle(
    adjacency: np.ndarray, method: str, nodes: Sequence[int] | None = None
) -> OperatorBundle:
    A = np.asarray(adjacency)
    n = A.shape[0]
    if A.shape != (n, n) or not np.array_equal(A, A.T):
        raise ValueError("adjacency must be square and symmetric")
    if np.any(A < 0) or np.any(np.diag(A) != 0):
        raise ValueError("adjacency must be nonnegative with zero diagonal")
    nodes = tuple(range(1, n + 1)) if nodes is None else tuple(nodes)
    deg = A.sum(axis=1)
    L = np.diag(deg) - A
    active = np.flatnonzero(deg > 0)
    if active.size == 0:
        raise EmptyActiveSet(f"{method} adjacency has no edges")
    s = 1.0 / np.sqrt(deg[active].astype(float))
    # outer product keeps the scaling exactly symmetric
    Ln = np.outer(s, s) * L[np.ix_(active, active)]
    return OperatorBundle(
        method=method,
        nodes=nodes,
        adjacency=A,
        degree=deg,
        laplacian=L.astype(float),
        normalized_laplacian=Ln,
        active=active,
    )


def operator_bundle(X: SimplicialComplex, method: str) -> OperatorBundle:
    return build_bundle(adjacency(X, method), method, X.nodes)


def connected_components(A: np.ndarray) -> list[np.ndarray]:
    """Components of the graph with weights ``A``, largest first (ties: smallest index)."""
    ncomp, labels = _components(sp.csr_matrix(A != 0), directed=False)
    comps = [np.flatnonzero(labels == c) for c in range(ncomp)]
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps
