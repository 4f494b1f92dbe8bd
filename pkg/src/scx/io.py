"""Text formats, the embedded Zachary dataset, and synthetic complexes.

Complex files (``.scx``) are line records::

    # comment
    %autoclose          (optional: add missing faces)
    n 1
    e 1 2
    t 1 2 3

Labels files are CSV with a ``node,label`` header.
"""
from __future__ import annotations

import csv
import os
import tempfile
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ._zachary import ZACHARY_EDGES, ZACHARY_MR_HI, ZACHARY_OFFICER
from .cluster import Partition, SweepProfile
from .complex import SimplicialComplex, build_complex, fill_all_cliques, graph_triangles, remove_filled
from .errors import DimensionMismatch, NodeSetMismatch, ParseError

ZACHARY_LABEL_NAMES = ("Mr. Hi", "Officer")
ZACHARY_BRIDGE_EDGES = ((9, 31), (9, 34))

DOT_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)


# -- complex files -----------------------------------------------------------

def parse_complex(text: str) -> SimplicialComplex:
    nodes, edges, tris = [], [], []
    auto_close = False
    arity = {"n": 1, "e": 2, "t": 3}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%"):
            if line == "%autoclose":
                auto_close = True
                continue
            raise ParseError(lineno, f"unknown directive {line!r}")
        kind, *fields = line.split()
        if kind not in arity:
            raise ParseError(lineno, f"unknown record type {kind!r}")
        if len(fields) != arity[kind]:
            raise ParseError(lineno, f"record {kind!r} takes {arity[kind]} ids, got {len(fields)}")
        try:
            ids = [int(f) for f in fields]
        except ValueError:
            raise ParseError(lineno, f"non-integer id in {line!r}") from None
        if any(v <= 0 for v in ids):
            raise ParseError(lineno, "node ids must be positive")
        if len(set(ids)) != len(ids):
            raise ParseError(lineno, "repeated id within a simplex")
        {"n": nodes, "e": edges, "t": tris}[kind].append(ids[0] if kind == "n" else tuple(ids))
    return build_complex(nodes, edges, tris, auto_close=auto_close)


def format_complex(X: SimplicialComplex) -> str:
    out = [f"# nodes={X.n0} edges={X.n1} triangles={X.n2}"]
    out += [f"n {v}" for v in X.nodes]
    out += [f"e {u} {v}" for u, v in X.edges]
    out += [f"t {u} {v} {w}" for u, v, w in X.triangles]
    return "\n".join(out) + "\n"


def read_complex(path: str | os.PathLike) -> SimplicialComplex:
    return parse_complex(Path(path).read_text(encoding="utf-8"))


def parse_triples(text: str) -> list[tuple[int, int, int]]:
    """Triangle list, one per line as ``t u v w`` or ``u v w``."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        if fields[0] == "t":
            fields = fields[1:]
        if len(fields) != 3:
            raise ParseError(lineno, "expected three node ids")
        try:
            out.append(tuple(sorted(int(f) for f in fields)))
        except ValueError:
            raise ParseError(lineno, f"non-integer id in {raw!r}") from None
    return out


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write via a temp file in the same directory, renamed on success."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- labels / assignments ----------------------------------------------------

def parse_labels(text: str) -> tuple[Partition, tuple[str, ...]]:
    """Read a two-column CSV (node, label); labels map to ints by first appearance."""
    rows = list(csv.reader(text.splitlines()))
    if not rows or len(rows[0]) != 2:
        raise ParseError(1, "expected a two-column header such as 'node,label'")
    names: dict[str, int] = {}
    assignment: dict[int, int] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise ParseError(lineno, f"expected 2 columns, got {len(row)}")
        try:
            node = int(row[0])
        except ValueError:
            raise ParseError(lineno, f"bad node id {row[0]!r}") from None
        if node in assignment:
            raise ParseError(lineno, f"node {node} listed twice")
        assignment[node] = names.setdefault(row[1], len(names))
    return Partition(assignment), tuple(names)


def format_labels(partition: Partition, names: Sequence[str] | None = None) -> str:
    out = ["node,label"]
    for v in sorted(partition.assignment):
        c = partition.assignment[v]
        name = str(c) if names is None else names[c]
        out.append(f'{v},"{name.replace(chr(34), chr(34) * 2)}"')
    return "\n".join(out) + "\n"


def read_labels(path: str | os.PathLike) -> tuple[Partition, tuple[str, ...]]:
    return parse_labels(Path(path).read_text(encoding="utf-8"))


def format_assignment(partition: Partition) -> str:
    out = ["node,cluster"]
    out += [f"{v},{partition.assignment[v]}" for v in sorted(partition.assignment)]
    return "\n".join(out) + "\n"


def format_sweep(profile: SweepProfile) -> str:
    """``k,node,phi`` rows for every proper prefix; infeasible prefixes say so."""
    out = ["k,node,phi"]
    for k, phi in enumerate(profile.phis, start=1):
        val = "infeasible" if phi is None else f"{float(phi):.17g}"
        out.append(f"{k},{profile.ordering[k - 1]},{val}")
    return "\n".join(out) + "\n"


def export_dot(X: SimplicialComplex, partition: Partition) -> str:
    """GraphViz text coloured by cluster; filled triangles as ``// t`` comments."""
    missing = set(X.nodes) - set(partition.assignment)
    if missing:
        raise ValueError(f"partition does not cover nodes {sorted(missing)[:5]}")
    out = ["graph scx {", "  node [style=filled];"]
    for v in X.nodes:
        color = DOT_PALETTE[partition.assignment[v] % len(DOT_PALETTE)]
        out.append(f'  {v} [fillcolor="{color}"];')
    out += [f"  {u} -- {v};" for u, v in X.edges]
    out += [f"  // t {u} {v} {w}" for u, v, w in X.triangles]
    out.append("}")
    return "\n".join(out) + "\n"


# -- datasets ----------------------------------------------------------------

def apply_fill(X: SimplicialComplex, mode: str, removals: Iterable[Sequence[int]] = ()) -> SimplicialComplex:
    """Re-fill a complex by policy: ``all`` 3-cliques or ``none``, then make ``removals`` hollow."""
    if mode == "all":
        Y = fill_all_cliques(X)
    elif mode == "none":
        Y = SimplicialComplex(X.nodes, X.edges, ())
    else:
        raise ValueError(f"fill mode must be 'all' or 'none', got {mode!r}")
    removals = list(removals)
    return remove_filled(Y, removals) if removals else Y


def triangles_on_edges(X: SimplicialComplex, edges: Iterable[Sequence[int]]) -> list[tuple[int, int, int]]:
    """Filled triangles containing any of ``edges``."""
    want = [tuple(sorted(e)) for e in edges]
    return [t for t in X.triangles if any(a in t and b in t for a, b in want)]


def zachary_truth() -> Partition:
    labels = {v: 0 for v in ZACHARY_MR_HI}
    labels.update({v: 1 for v in ZACHARY_OFFICER})
    return Partition(dict(sorted(labels.items())), "truth")


def load_zachary(fill: str | Sequence[Sequence[int]] = "all") -> tuple[SimplicialComplex, Partition]:
    """Karate club complex and 2-faction ground truth.

    ``fill`` is ``"all"`` (every 3-clique filled), ``"none"``, or a list of
    triangles to make hollow after filling every 3-clique.
    """
    base = build_complex(range(1, 35), ZACHARY_EDGES)
    if isinstance(fill, str):
        X = apply_fill(base, fill)
    else:
        X = apply_fill(base, "all", fill)
    return X, zachary_truth()


# Reference shapes (nodes, edges, clusters) for benchmark files that are
# not shipped and must be supplied by the user.
DATASET_SHAPES = {
    "zachary": (34, 78, 2),
    "polbooks": (105, 441, 3),
    "football": (115, 613, 12),
}


def check_dataset_shape(name: str, X: SimplicialComplex, truth: Partition) -> None:
    """Raise unless ``X`` and ``truth`` have the reference shape for ``name``."""
    try:
        expected = DATASET_SHAPES[name]
    except KeyError:
        raise ValueError(f"unknown dataset {name!r}; known: {sorted(DATASET_SHAPES)}") from None
    got = (X.n0, X.n1, truth.k)
    if got != expected:
        raise DimensionMismatch(f"{name}: expected nodes/edges/clusters {expected}, got {got}")
    if set(truth.assignment) != set(X.nodes):
        raise NodeSetMismatch(f"{name}: labels do not cover exactly the complex's nodes")


def zachary_bridge_removals() -> list[tuple[int, int, int]]:
    """All 3-cliques through the {9,31} or {9,34} ties."""
    X, _ = load_zachary("all")
    return triangles_on_edges(X, ZACHARY_BRIDGE_EDGES)


# -- synthetic ---------------------------------------------------------------

# Communities {1..5} and {6,7,8}. Every filled triangle stays inside a
# community; {5,7,8} is a hollow 3-clique bridging them.
_SYNTH_EDGES = (
    (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (2, 5), (3, 4),
    (4, 5), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8),
)
_SYNTH_TRIANGLES = ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 4, 5), (6, 7, 8))
_SYNTH_COMMUNITIES = ((1, 2, 3, 4, 5), (6, 7, 8))


def synth_paperlike(seed: int = 0) -> tuple[SimplicialComplex, Partition]:
    """Small two-community complex with a hollow clique bridging the communities.

    8 nodes, 13 edges, 5 filled triangles. ``seed=0`` is the canonical
    instance; any other seed relabels the nodes by a seeded permutation of
    the same ids (an isomorphic copy).
    """
    perm = {v: v for v in range(1, 9)}
    if seed:
        shuffled = np.random.default_rng(seed).permutation(np.arange(1, 9))
        perm = {v: int(p) for v, p in zip(range(1, 9), shuffled)}
    X = build_complex(
        perm.values(),
        [(perm[u], perm[v]) for u, v in _SYNTH_EDGES],
        [tuple(perm[v] for v in t) for t in _SYNTH_TRIANGLES],
    )
    labels = {perm[v]: c for c, members in enumerate(_SYNTH_COMMUNITIES) for v in members}
    return X, Partition(dict(sorted(labels.items())), "planted")


def planted_partition_generator(
    c: int,
    m: int,
    p_intra_tri: float,
    p_inter_edge: float,
    seed: int,
    p_inter_tri: float = 0.0,
) -> tuple[SimplicialComplex, Partition]:
    """Random complex with ``c`` planted communities of ``m`` nodes each.

    Each within-community triple is filled with probability ``p_intra_tri``
    (its edges are added), and each cross-community pair becomes an edge
    with probability ``p_inter_edge``. With the default ``p_inter_tri=0``
    no cross-community triangle is ever filled; a positive value fills each
    cross-community 3-clique of the final edge graph with that probability.
    """
    for p in (p_intra_tri, p_inter_edge, p_inter_tri):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    comm = {v: (v - 1) // m for v in range(1, c * m + 1)}
    tris = []
    for k in range(c):
        members = range(k * m + 1, (k + 1) * m + 1)
        for t in combinations(members, 3):
            if rng.random() < p_intra_tri:
                tris.append(t)
    edges = {e for t in tris for e in combinations(t, 2)}
    for u, v in combinations(range(1, c * m + 1), 2):
        if comm[u] != comm[v] and rng.random() < p_inter_edge:
            edges.add((u, v))
    X = build_complex(range(1, c * m + 1), edges, tris)
    if p_inter_tri > 0:
        extra = [
            t for t in graph_triangles(X)
            if len({comm[v] for v in t}) > 1 and rng.random() < p_inter_tri
        ]
        X = build_complex(X.nodes, X.edges, list(X.triangles) + extra)
    return X, Partition(comm, "planted")
