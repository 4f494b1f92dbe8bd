"""Partition comparison via normalized mutual information."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import NodeSetMismatch


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray  # counts[a, b]: predicted label a, true label b
    pred_labels: tuple
    true_labels: tuple

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def row_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=0)


def _assignment(p) -> Mapping:
    return p.assignment if hasattr(p, "assignment") else p


def contingency(pred, truth) -> ContingencyTable:
    """Cross-tabulate two partitions (``Partition`` objects or node->label maps)."""
    a, b = _assignment(pred), _assignment(truth)
    if set(a) != set(b):
        diff = sorted(set(a) ^ set(b))
        raise NodeSetMismatch(f"partitions cover different nodes, e.g. {diff[:5]}")
    pl = tuple(sorted(set(a.values()), key=str))
    tl = tuple(sorted(set(b.values()), key=str))
    pi = {v: i for i, v in enumerate(pl)}
    ti = {v: i for i, v in enumerate(tl)}
    counts = np.zeros((len(pl), len(tl)), dtype=np.int64)
    for node in a:
        counts[pi[a[node]], ti[b[node]]] += 1
    return ContingencyTable(counts, pl, tl)


def _entropy(marg: np.ndarray, n: int) -> float:
    p = marg[marg > 0] / n
    return -math.fsum(p * np.log(p))


def nmi(pred, truth) -> float:
    """2 I(P;T) / (H(P) + H(T)) with natural logs; 0.0 when both entropies vanish."""
    table = contingency(pred, truth)
    n = table.n
    if n == 0:
        return 0.0
    hp = _entropy(table.row_marginals, n)
    ht = _entropy(table.col_marginals, n)
    if hp + ht == 0.0:
        return 0.0
    c = table.counts
    nz = c > 0
    if c.shape[0] == c.shape[1] and np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1):
        return 1.0
    outer = np.outer(table.row_marginals, table.col_marginals)
    # fsum is order-independent, so relabeling either side cannot change the result
    mi = math.fsum(c[nz] / n * np.log(c[nz] * n / outer[nz]))
    return min(max(2.0 * mi / (hp + ht), 0.0), 1.0)
