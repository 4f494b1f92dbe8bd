"""Triangle cut, volume and simplicial conductance, plus exact oracles.

All counts are exact integers; conductance is reported as a
:class:`fractions.Fraction` and converted to float only for comparisons
against eigenvalue bounds.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .complex import SimplicialComplex
from .errors import NoFeasibleCut, TooLarge, ZeroVolume

BRUTE_FORCE_MAX_NODES = 22
_LOCAL_M = ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))


class ZCounts(NamedTuple):
    z1: int
    z2: int
    z3: int


@dataclass(frozen=True)
class ConductanceReport:
    cut: int
    vol_S: int
    vol_Sbar: int

    @property
    def phi(self) -> Fraction:
        return Fraction(self.cut, min(self.vol_S, self.vol_Sbar))


def membership(X: SimplicialComplex, S: Iterable[int]) -> np.ndarray:
    """Boolean indicator e_S over the dense node positions of ``X``."""
    e = np.zeros(X.n0, dtype=bool)
    idx = X.index
    for v in S:
        e[idx[v]] = True
    return e


def z_counts(X: SimplicialComplex, S: Iterable[int]) -> ZCounts:
    if X.n2 == 0:
        return ZCounts(0, 0, 0)
    inside = membership(X, S)[X.triangle_array()].sum(axis=1)
    z = np.bincount(inside, minlength=4)
    return ZCounts(int(z[1]), int(z[2]), int(z[3]))


def cut_02(X: SimplicialComplex, S: Iterable[int]) -> int:
    """Number of filled triangles with vertices on both sides of the cut."""
    z = z_counts(X, S)
    return z.z2 + z.z1


def vol_02(X: SimplicialComplex, S: Iterable[int]) -> int:
    z = z_counts(X, S)
    return 3 * z.z3 + 2 * z.z2 + z.z1


def conductance_report(X: SimplicialComplex, S: Iterable[int]) -> ConductanceReport:
    """Cut and both volumes; does not check feasibility."""
    z = z_counts(X, S)
    vol = 3 * z.z3 + 2 * z.z2 + z.z1
    return ConductanceReport(z.z1 + z.z2, vol, 3 * X.n2 - vol)


def phi_02(X: SimplicialComplex, S: Iterable[int]) -> ConductanceReport:
    S = set(S)
    if not S or len(S) >= X.n0 and S >= set(X.nodes):
        raise ZeroVolume("S must be a proper nonempty subset of the nodes")
    rep = conductance_report(X, S)
    if min(rep.vol_S, rep.vol_Sbar) == 0:
        raise ZeroVolume(f"one side touches no filled triangle (volS={rep.vol_S}, volSbar={rep.vol_Sbar})")
    return rep


def quadratic_cut(L: np.ndarray, e: np.ndarray) -> float:
    """1/2 e^T L e; equals cut_02 when L is the simplicial Laplacian."""
    e = np.asarray(e, dtype=float)
    return 0.5 * float(e @ L @ e)


def quadratic_vol(degree: np.ndarray, e: np.ndarray) -> float:
    e = np.asarray(e, dtype=float)
    return 0.5 * float(e @ (np.asarray(degree, dtype=float) * e))


def local_form(sigma: tuple[int, int, int], S: Iterable[int]) -> int:
    """c^T M c for one triangle: 0 if it lies on one side, 2 if it is cut."""
    if not isinstance(S, (set, frozenset)):
        S = set(S)
    c = [int(v in S) for v in sigma]
    return sum(_LOCAL_M[i][j] * c[i] * c[j] for i in range(3) for j in range(3))


def edge_cut(W: np.ndarray, e: np.ndarray) -> int:
    """Weighted edge cut sum_{i in S, j not in S} W_ij."""
    e = np.asarray(e, dtype=bool)
    return int(W[np.ix_(e, ~e)].sum())


def edge_volume(W: np.ndarray, e: np.ndarray) -> int:
    return int(W[np.asarray(e, dtype=bool)].sum())


def _worker_count() -> int:
    n = int(os.environ.get("SCX_THREADS", "0") or 0)
    return n if n > 0 else (os.cpu_count() or 1)


def _scan_chunk(lo: int, hi: int, tri: np.ndarray, tdeg: np.ndarray, total: int):
    masks = np.arange(lo, hi, dtype=np.int64)
    n = len(tdeg)
    bits = ((masks[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.int8)
    vol = bits.astype(np.int64) @ tdeg
    cut = np.zeros(len(masks), dtype=np.int64)
    for a, b, c in tri:
        k = bits[:, a] + bits[:, b] + bits[:, c]
        cut += (k == 1) | (k == 2)
    minvol = np.minimum(vol, total - vol)
    feasible = minvol > 0
    if not feasible.any():
        return None
    ratio = np.where(feasible, cut / np.where(feasible, minvol, 1), np.inf)
    best = ratio.min()
    cand = np.flatnonzero(ratio <= best * (1 + 1e-12) + 1e-15)
    exact = [Fraction(int(cut[i]), int(minvol[i])) for i in cand]
    phi = min(exact)
    return phi, [int(masks[i]) for i, f in zip(cand, exact) if f == phi]


def brute_force_min(X: SimplicialComplex, chunk: int = 1 << 15) -> tuple[tuple[int, ...], Fraction]:
    """Exhaustive minimum of simplicial conductance over all node subsets.

    Subsets are enumerated up to complementation (the last node is fixed
    outside S); infeasible (zero-volume) subsets are skipped. Ties go to
    the lexicographically smallest set among all minimizers and their
    complements.
    """
    n = X.n0
    if n > BRUTE_FORCE_MAX_NODES:
        raise TooLarge(f"brute force limited to {BRUTE_FORCE_MAX_NODES} nodes, got {n}")
    if n < 2 or X.n2 == 0:
        raise NoFeasibleCut("no proper subset has positive volume on both sides")
    tri = X.triangle_array()
    tdeg = np.bincount(tri.ravel(), minlength=n).astype(np.int64)
    total = 3 * X.n2
    top = 1 << (n - 1)
    bounds = [(lo, min(lo + chunk, top)) for lo in range(1, top, chunk)]
    workers = min(_worker_count(), len(bounds))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda b: _scan_chunk(b[0], b[1], tri, tdeg, total), bounds))
    else:
        results = [_scan_chunk(lo, hi, tri, tdeg, total) for lo, hi in bounds]
    results = [r for r in results if r is not None]
    if not results:
        raise NoFeasibleCut("every subset leaves one side without filled triangles")
    phi = min(r[0] for r in results)
    full = (1 << n) - 1
    best = None
    for r in results:
        if r[0] != phi:
            continue
        for m in r[1]:
            for mm in (m, full ^ m):
                s = tuple(X.nodes[i] for i in range(n) if mm >> i & 1)
                if best is None or s < best:
                    best = s
    return best, phi
