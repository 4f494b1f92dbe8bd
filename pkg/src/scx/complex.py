"""Undirected simplicial complexes of order <= 2 and their unsigned boundary matrices."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import ClosureViolation, DuplicateSimplex, NotFilled, UnknownNodeId

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class SimplicialComplex:
    """Nodes, edges and filled triangles in canonical sorted order.

    Use :func:`build_complex` rather than the constructor; it validates
    closure and canonicalizes ordering.
    """

    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]
    triangles: tuple[Triangle, ...]

    @property
    def n0(self) -> int:
        return len(self.nodes)

    @property
    def n1(self) -> int:
        return len(self.edges)

    @property
    def n2(self) -> int:
        return len(self.triangles)

    @cached_property
    def index(self) -> dict[int, int]:
        """Map node id -> dense row position."""
        return {v: i for i, v in enumerate(self.nodes)}

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def neighbors(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.nodes}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def _triangle_positions(self) -> np.ndarray:
        idx = self.index
        out = np.array([[idx[a], idx[b], idx[c]] for a, b, c in self.triangles], dtype=np.int64)
        out = out.reshape(-1, 3)
        out.flags.writeable = False
        return out

    def triangle_array(self) -> np.ndarray:
        """Filled triangles as an (N2, 3) array of dense node positions (read-only, cached)."""
        return self._triangle_positions

    def edge_array(self) -> np.ndarray:
        idx = self.index
        out = np.array([[idx[a], idx[b]] for a, b in self.edges], dtype=np.int64)
        return out.reshape(-1, 2)


def _canon(simplex: Iterable[int], size: int, kind: str) -> tuple[int, ...]:
    s = tuple(sorted(int(v) for v in simplex))
    if len(s) != size:
        raise ValueError(f"{kind} {tuple(simplex)} must have {size} members")
    if len(set(s)) != size:
        raise ValueError(f"{kind} {tuple(simplex)} has repeated members")
    if s[0] <= 0:
        raise ValueError(f"{kind} {tuple(simplex)}: node ids must be positive")
    return s


def _unique_sorted(items: list[tuple[int, ...]], kind: str) -> tuple:
    seen = set()
    for s in items:
        if s in seen:
            raise DuplicateSimplex(f"duplicate {kind} {s}")
        seen.add(s)
    return tuple(sorted(items))


def build_complex(
    nodes: Iterable[int] = (),
    edges: Iterable[Sequence[int]] = (),
    triangles: Iterable[Sequence[int]] = (),
    auto_close: bool = False,
) -> SimplicialComplex:
    """Build a canonical complex, adding missing faces if ``auto_close``.

    Without ``auto_close`` a triangle with a missing edge raises
    :class:`ClosureViolation` and an edge with an unlisted endpoint raises
    :class:`UnknownNodeId`.
    """
    node_list = [int(v) for v in nodes]
    if any(v <= 0 for v in node_list):
        raise ValueError("node ids must be positive")
    if len(set(node_list)) != len(node_list):
        dup = sorted(v for v in set(node_list) if node_list.count(v) > 1)[0]
        raise DuplicateSimplex(f"duplicate node {dup}")
    edge_list = [_canon(e, 2, "edge") for e in edges]
    tri_list = [_canon(t, 3, "triangle") for t in triangles]
    edge_t = _unique_sorted(edge_list, "edge")
    tri_t = _unique_sorted(tri_list, "triangle")

    edge_set = set(edge_t)
    node_set = set(node_list)
    if auto_close:
        for t in tri_t:
            edge_set.update(combinations(t, 2))
        for e in edge_set:
            node_set.update(e)
        edge_t = tuple(sorted(edge_set))
    else:
        for t in tri_t:
            for face in combinations(t, 2):
                if face not in edge_set:
                    raise ClosureViolation(f"triangle {t} is missing edge {face}")
        for e in edge_t:
            for v in e:
                if v not in node_set:
                    raise UnknownNodeId(f"edge {e} references unknown node {v}")
    return SimplicialComplex(tuple(sorted(node_set)), edge_t, tri_t)


def boundary_matrix(X: SimplicialComplex, k: int) -> sp.csr_matrix:
    """Unsigned boundary matrix B_k as an exact int64 sparse matrix.

    B_1 is N0 x N1 with two ones per column, B_2 is N1 x N2 with three.
    """
    if k == 1:
        rows = X.edge_array().T.ravel() if X.n1 else np.zeros(0, dtype=np.int64)
        cols = np.tile(np.arange(X.n1), 2)
        shape = (X.n0, X.n1)
    elif k == 2:
        eidx = X.edge_index
        rows = np.array(
            [eidx[face] for t in X.triangles for face in combinations(t, 2)], dtype=np.int64
        )
        cols = np.repeat(np.arange(X.n2), 3)
        shape = (X.n1, X.n2)
    else:
        raise ValueError(f"k must be 1 or 2, got {k}")
    data = np.ones(len(rows), dtype=np.int64)
    return sp.csr_matrix((data, (rows, cols)), shape=shape, dtype=np.int64)


def graph_triangles(X: SimplicialComplex) -> list[Triangle]:
    """All 3-cliques of the edge graph, filled or hollow, sorted."""
    nbrs = X.neighbors
    out = []
    for u, v in X.edges:
        for w in nbrs[u] & nbrs[v]:
            if w > v:
                out.append((u, v, w))
    out.sort()
    return out


def remove_filled(X: SimplicialComplex, removals: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Make the given filled triangles hollow; edges and nodes are kept."""
    drop = {_canon(t, 3, "triangle") for t in removals}
    filled = set(X.triangles)
    for t in sorted(drop):
        if t not in filled:
            raise NotFilled(f"triangle {t} is not a filled triangle")
    return SimplicialComplex(X.nodes, X.edges, tuple(t for t in X.triangles if t not in drop))


def fill_triangles(X: SimplicialComplex, triangles: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Fill additional triangles; their edges must already be present."""
    return build_complex(X.nodes, X.edges, list(X.triangles) + [tuple(t) for t in triangles])


def fill_all_cliques(X: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex(X.nodes, X.edges, tuple(graph_triangles(X)))


def triangles_on_edge(X: SimplicialComplex, u: int, v: int) -> list[Triangle]:
    """Filled triangles that contain the edge {u, v}."""
    a, b = sorted((u, v))
    return [t for t in X.triangles if a in t and b in t]
