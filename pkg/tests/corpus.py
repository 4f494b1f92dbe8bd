"""Seeded random complexes shared by the property and acceptance tests."""
from functools import lru_cache

import numpy as np

from scx.io import planted_partition_generator


@lru_cache(maxsize=None)
def corpus(size=200, seed=2024):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(size):
        c = int(rng.integers(1, 4))
        m = int(rng.integers(3, 30 // c + 1))
        p_tri = float(rng.uniform(0.2, 0.9))
        p_edge = float(rng.uniform(0.0, 0.4))
        p_cross = float(rng.choice([0.0, 0.3, 1.0]))
        X, truth = planted_partition_generator(c, m, p_tri, p_edge, seed=i, p_inter_tri=p_cross)
        out.append((X, truth))
    return tuple(out)
