"""Sweep-cut bipartitioning and multiway spectral clustering.

The same pipeline runs for all three operators. For ``simplicial`` the
sweep scores prefixes with triangle cut/volume, for ``motif`` and
``graph`` with weighted edge cut/volume on the respective adjacency.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .complex import SimplicialComplex
from .eig import fiedler_pair, smallest_eigenpairs
from .errors import DegeneratePoints, DimensionMismatch, Disconnected
from .operators import OperatorBundle, connected_components, operator_bundle


@dataclass(frozen=True)
class Partition:
    assignment: dict[int, int]
    method: str = ""
    notes: tuple[str, ...] = ()

    @property
    def k(self) -> int:
        return len(set(self.assignment.values()))

    def clusters(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for v in sorted(self.assignment):
            out.setdefault(self.assignment[v], []).append(v)
        return [tuple(out[c]) for c in sorted(out)]

    def relabeled(self, mapping: Mapping[int, int]) -> "Partition":
        return Partition({v: mapping[c] for v, c in self.assignment.items()}, self.method, self.notes)


@dataclass(frozen=True)
class SweepProfile:
    """Prefix scores along a node ordering.

    Entry ``i`` of ``cut``/``vol_S``/``vol_Sbar``/``phis`` describes the
    prefix of length ``i + 1``. ``phis[i]`` is None for infeasible prefixes.
    """

    ordering: tuple[int, ...]
    cut: np.ndarray
    vol_S: np.ndarray
    vol_Sbar: np.ndarray
    phis: tuple[Fraction | None, ...]
    best_k: int | None
    lambda2: float = float("nan")
    embedding: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def best_phi(self) -> Fraction:
        return self.phis[self.best_k - 1]

    def phi_values(self) -> np.ndarray:
        return np.array([np.nan if p is None else float(p) for p in self.phis])


def _prefix_counts_triangles(X: SimplicialComplex, order: Sequence[int]):
    """Incremental z-counts: each added node only touches its own triangles."""
    members = set(order)
    tris = [t for t in X.triangles if all(v in members for v in t)]
    incident: dict[int, list[int]] = {v: [] for v in order}
    for j, t in enumerate(tris):
        for v in t:
            incident[v].append(j)
    inside = np.zeros(len(tris), dtype=np.int64)
    z = [len(tris), 0, 0, 0]
    total = 3 * len(tris)
    cut, vol = [], []
    for v in order[:-1]:
        for j in incident[v]:
            z[inside[j]] -= 1
            inside[j] += 1
            z[inside[j]] += 1
        cut.append(z[1] + z[2])
        vol.append(3 * z[3] + 2 * z[2] + z[1])
    vol = np.array(vol, dtype=np.int64)
    return np.array(cut, dtype=np.int64), vol, total - vol


def _prefix_counts_weighted(X: SimplicialComplex, W: np.ndarray, order: Sequence[int]):
    pos = np.array([X.index[v] for v in order], dtype=np.int64)
    Wu = W[np.ix_(pos, pos)]
    deg = Wu.sum(axis=1)
    total = int(deg.sum())
    cut, vol = [], []
    c = v = 0
    for i in range(len(pos) - 1):
        # row i against the prefix already placed
        c += int(deg[i]) - 2 * int(Wu[i, :i].sum())
        v += int(deg[i])
        cut.append(c)
        vol.append(v)
    vol = np.array(vol, dtype=np.int64)
    return np.array(cut, dtype=np.int64), vol, total - vol


def sweep_profile(
    X: SimplicialComplex, method: str, ordering: Sequence[int], adjacency: np.ndarray | None = None
) -> SweepProfile:
    """Score every proper prefix of ``ordering`` on the sub-structure it induces."""
    ordering = tuple(ordering)
    if method == "simplicial":
        cut, vs, vsb = _prefix_counts_triangles(X, ordering)
    else:
        if adjacency is None:
            adjacency = operator_bundle(X, method).adjacency
        cut, vs, vsb = _prefix_counts_weighted(X, adjacency, ordering)
    phis = []
    best = None
    best_key = None
    for i in range(len(cut)):
        m = min(vs[i], vsb[i])
        if m <= 0:
            phis.append(None)
            continue
        phi = Fraction(int(cut[i]), int(m))
        phis.append(phi)
        # ties: more balanced min-volume side, then shorter prefix
        key = (phi, -int(m), i)
        if best_key is None or key < best_key:
            best_key, best = key, i + 1
    return SweepProfile(ordering, cut, vs, vsb, tuple(phis), best)


def _component_ordering(X: SimplicialComplex, bundle: OperatorBundle, comps) -> tuple[int, ...]:
    ids = []
    for c in comps:
        ids.extend(sorted(X.nodes[p] for p in bundle.active[c]))
    return tuple(ids)


def sweep_cut(X: SimplicialComplex, method: str = "simplicial") -> tuple[Partition, SweepProfile]:
    """Fiedler-vector sweep cut over the active nodes.

    Nodes are ordered by ascending D^{-1/2} times the Fiedler vector (ties by
    node id) and the best prefix becomes cluster 0. If the active similarity
    graph is disconnected, a zero-conductance split exists and the sweep
    runs instead over a component-constant ordering (largest component
    first). Zero-degree nodes are attached by :func:`post_assign`.
    """
    bundle = operator_bundle(X, method)
    comps = connected_components(bundle.active_adjacency)
    notes = []
    if len(comps) == 1:
        comp = comps[0]
        if len(comp) < 2:
            raise Disconnected("active component has fewer than two nodes")
        lam2, vec = fiedler_pair(bundle.normalized_laplacian)
        ids = np.array(bundle.active_nodes)
        score = vec / np.sqrt(bundle.active_degree.astype(float))
        order = np.lexsort((ids, score))
        ordering = tuple(int(v) for v in ids[order])
        embedding = score[order]
    else:
        lam2 = float(smallest_eigenpairs(bundle.normalized_laplacian, 2).values[1])
        ordering = _component_ordering(X, bundle, comps)
        embedding = np.repeat(np.arange(len(comps), dtype=float), [len(c) for c in comps])
        notes.append(f"{len(comps)} active components; swept over component ordering")

    prof = sweep_profile(X, method, ordering, bundle.adjacency)
    if prof.best_k is None:
        raise Disconnected("no feasible prefix in the sweep")
    prof = SweepProfile(
        prof.ordering, prof.cut, prof.vol_S, prof.vol_Sbar, prof.phis, prof.best_k,
        lambda2=lam2, embedding=embedding,
    )
    partial = {v: 0 for v in ordering[: prof.best_k]}
    partial.update({v: 1 for v in ordering[prof.best_k:]})
    notes.insert(0, f"lambda2={lam2:.12g}")
    part = post_assign(partial, X, method=method, notes=notes)
    return part, prof


def spectral_embed(
    bundle: OperatorBundle, k: int, row_normalize: bool = False, degree_scale: bool = False
) -> np.ndarray:
    """Rows of the k smallest eigenvectors of the normalized Laplacian, one per active node."""
    n = len(bundle.active)
    if k < 1 or k > n:
        raise DimensionMismatch(f"k={k} but only {n} active nodes")
    U = smallest_eigenpairs(bundle.normalized_laplacian, k).vectors
    if degree_scale:
        U = U / np.sqrt(bundle.active_degree.astype(float))[:, None]
    if row_normalize:
        norms = np.linalg.norm(U, axis=1, keepdims=True)
        U = U / np.where(norms > 0, norms, 1.0)
    return U


@dataclass(frozen=True)
class KMeansResult:
    labels: np.ndarray
    centers: np.ndarray
    inertia: float


def _kmeanspp(P: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(P)
    centers = [P[rng.integers(n)]]
    d2 = ((P - centers[0]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        i = int(np.searchsorted(np.cumsum(d2), rng.random() * total, side="right"))
        i = min(i, n - 1)
        while d2[i] == 0:  # guard against landing on an already-chosen point
            i = (i + 1) % n
        centers.append(P[i])
        d2 = np.minimum(d2, ((P - P[i]) ** 2).sum(axis=1))
    return np.array(centers)


def _lloyd(P: np.ndarray, C: np.ndarray, max_iter: int, tol: float):
    for _ in range(max_iter):
        dist = ((P[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)
        labels = dist.argmin(axis=1)
        newC = C.copy()
        for j in range(len(C)):
            sel = labels == j
            if sel.any():
                newC[j] = P[sel].mean(axis=0)
            else:
                # empty cluster: move to the point worst served by its centre
                far = int(dist[np.arange(len(P)), labels].argmax())
                newC[j] = P[far]
        shift = np.sqrt(((newC - C) ** 2).sum(axis=1)).max()
        C = newC
        if shift < tol:
            break
    dist = ((P[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)
    labels = dist.argmin(axis=1)
    inertia = float(dist[np.arange(len(P)), labels].sum())
    return labels, C, inertia


def kmeans(
    points: np.ndarray, k: int, seed: int = 42, n_init: int = 20, max_iter: int = 300, tol: float = 1e-9
) -> KMeansResult:
    """Seeded k-means++ with Lloyd refinement; best of ``n_init`` restarts by inertia.

    Labels are renumbered in order of first appearance.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if len(np.unique(P, axis=0)) < k:
        raise DegeneratePoints(f"fewer than {k} distinct points")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(n_init):
        res = _lloyd(P, _kmeanspp(P, k, rng), max_iter, tol)
        if best is None or res[2] < best[2]:
            best = res
    labels, C, inertia = best
    first = {}
    for lab in labels:
        first.setdefault(int(lab), len(first))
    for j in range(k):
        first.setdefault(j, len(first))
    relabel = np.array([first[j] for j in range(k)])
    order = np.argsort(relabel)
    return KMeansResult(relabel[labels], C[order], inertia)


def multiway_cluster(
    X: SimplicialComplex,
    method: str = "simplicial",
    k: int = 2,
    seed: int = 42,
    row_normalize: bool = False,
    degree_scale: bool = False,
) -> Partition:
    """Embed active nodes with k smallest eigenvectors, k-means, then post-assign."""
    if k == 1:
        return Partition({v: 0 for v in X.nodes}, method, ("k=1",))
    bundle = operator_bundle(X, method)
    U = spectral_embed(bundle, k, row_normalize, degree_scale)
    res = kmeans(U, k, seed)
    partial = {v: int(c) for v, c in zip(bundle.active_nodes, res.labels)}
    return post_assign(partial, X, method=method, notes=[f"inertia={res.inertia:.12g}"])


def post_assign(
    partial: Mapping[int, int], X: SimplicialComplex, method: str = "", notes: Sequence[str] = ()
) -> Partition:
    """Label every unassigned node by majority vote of its labeled edge neighbours.

    Ties go to the smaller label; nodes that never see a labeled neighbour
    get the label of the largest cluster.
    """
    labels = dict(partial)
    missing = [v for v in X.nodes if v not in labels]
    notes = list(notes)
    if not missing:
        return Partition(labels, method, tuple(notes))
    notes.append(f"post-assigned {len(missing)} node(s)")
    nbrs = X.neighbors
    for _ in range(X.n0):
        updates = {}
        for v in missing:
            if v in labels:
                continue
            votes = Counter(labels[u] for u in nbrs[v] if u in labels)
            if votes:
                top = max(votes.values())
                updates[v] = min(c for c, n in votes.items() if n == top)
        if not updates:
            break
        labels.update(updates)
    rest = [v for v in missing if v not in labels]
    if rest:
        sizes = Counter(labels.values())
        top = max(sizes.values())
        fallback = min(c for c, n in sizes.items() if n == top)
        for v in rest:
            labels[v] = fallback
        notes.append(f"{len(rest)} node(s) without labeled neighbours -> cluster {fallback}")
    return Partition(labels, method, tuple(notes))
