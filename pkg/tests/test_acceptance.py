"""Exit criteria. Each test prints a [PASS]/[FAIL] line in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import math
import os
from collections import Counter

import numpy as np
import pytest

from scx.cli import main
from scx.cluster import Partition, sweep_cut
from scx.conductance import (
    brute_force_min,
    cut_02,
    local_form,
    membership,
    quadratic_cut,
    quadratic_vol,
    vol_02,
)
from scx.eig import eigh
from scx.errors import DimensionMismatch, EmptyActiveSet
from scx.io import (
    check_dataset_shape,
    format_complex,
    format_labels,
    load_zachary,
    parse_complex,
    parse_labels,
    planted_partition_generator,
    read_complex,
    read_labels,
    synth_paperlike,
    zachary_bridge_removals,
    zachary_truth,
)
from scx.metrics import nmi
from scx.operators import (
    connected_components,
    operator_bundle,
    simplicial_adjacency_boundary,
    simplicial_adjacency_direct,
)

from corpus import corpus


def check_eigensystem(M, normalized=False):
    pairs = eigh(M)
    vals, vecs = pairs.values, pairs.vectors
    scale = max(1.0, np.linalg.norm(M))
    assert np.abs(M @ vecs - vecs * vals).max() <= 1e-8 * scale
    assert np.abs(vecs.T @ vecs - np.eye(len(vals))).max() <= 1e-10
    if normalized:
        assert vals.min() >= -1e-10 and vals.max() <= 2 + 1e-10
    return vals


@pytest.mark.acceptance(1, "boundary-product adjacency equals direct triangle count")
def test_c1_adjacency_identity():
    cx = corpus()
    assert len(cx) == 200 and max(X.n0 for X, _ in cx) <= 30
    for X, _ in cx:
        A = simplicial_adjacency_direct(X)
        B = simplicial_adjacency_boundary(X)
        assert A.dtype.kind == B.dtype.kind == "i"
        assert np.array_equal(A, B)


@pytest.mark.acceptance(2, "quadratic forms reproduce cut and volume exactly")
def test_c2_quadratic_identities():
    for i, (X, _) in enumerate(corpus()):
        if not X.n2:
            continue
        b = operator_bundle(X, "simplicial")
        rng = np.random.default_rng(1000 + i)
        for _ in range(50):
            S = set(np.asarray(X.nodes)[rng.random(X.n0) < rng.random()].tolist())
            e = membership(X, S)
            cut = cut_02(X, S)
            assert quadratic_cut(b.laplacian, e) == cut
            assert quadratic_vol(b.degree, e) == vol_02(X, S)
            assert sum(local_form(t, S) for t in X.triangles) == 2 * cut


@pytest.mark.acceptance(3, "Cheeger sandwich and sweep bounds on small connected instances")
def test_c3_cheeger():
    checked = 0
    for X, _ in corpus():
        if X.n0 > 18 or not X.n2:
            continue
        b = operator_bundle(X, "simplicial")
        if len(connected_components(b.active_adjacency)) != 1:
            continue
        _, prof = sweep_cut(X, "simplicial")
        lam2 = prof.lambda2
        _, phi_star = brute_force_min(X)
        phi_sweep = prof.best_phi
        assert lam2 / 2 <= float(phi_star) + 1e-9
        assert float(phi_star) <= math.sqrt(2 * lam2) + 1e-9
        assert float(phi_sweep) <= math.sqrt(2 * lam2) + 1e-9
        assert phi_sweep >= phi_star
        checked += 1
    assert checked >= 50


@pytest.mark.acceptance(4, "synthetic two-community complex: simplicial NMI 1, baselines below 1")
def test_c4_synthetic():
    X, truth = synth_paperlike()
    assert (X.n0, X.n1, X.n2) == (8, 13, 5)
    scores = {m: nmi(sweep_cut(X, m)[0], truth) for m in ("simplicial", "motif", "graph")}
    assert f"{scores['simplicial']:.6f}" == "1.000000"
    assert scores["motif"] < 1.0
    assert scores["graph"] < 1.0


@pytest.mark.acceptance(5, "karate club with bridge triangles hollow: simplicial beats motif")
def test_c5_zachary():
    X, truth = load_zachary(zachary_bridge_removals())
    assert (X.n0, X.n1, truth.k) == (34, 78, 2)
    check_dataset_shape("zachary", X, truth)
    simp = nmi(sweep_cut(X, "simplicial")[0], truth)
    motif = nmi(sweep_cut(X, "motif")[0], truth)
    assert simp > motif


@pytest.mark.acceptance(6, "eigensolver residual, orthonormality and spectral range")
def test_c6_eigensolver():
    rng = np.random.default_rng(6)
    for _ in range(100):
        n = int(rng.integers(1, 65))
        A = rng.normal(size=(n, n))
        check_eigensystem((A + A.T) / 2)
    for X, _ in corpus():
        for method in ("simplicial", "motif", "graph"):
            try:
                b = operator_bundle(X, method)
            except EmptyActiveSet:
                continue
            check_eigensystem(b.normalized_laplacian, normalized=True)
    J = np.ones((3, 3))
    vals = check_eigensystem(np.eye(3) - (J - np.eye(3)) / 2, normalized=True)
    assert np.abs(vals - np.array([0.0, 1.5, 1.5])).max() <= 1e-10


def entropy_oracle(a, b):
    n = len(a)
    joint, pa, pb = Counter(zip(a, b)), Counter(a), Counter(b)
    H = lambda c: -sum(k / n * math.log(k / n) for k in c.values())
    I = sum(k / n * math.log(k * n / (pa[x] * pb[y])) for (x, y), k in joint.items())
    return 0.0 if H(pa) + H(pb) == 0 else 2 * I / (H(pa) + H(pb))


@pytest.mark.acceptance(7, "NMI agrees with an entropy oracle and is invariant")
def test_c7_nmi():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n = int(rng.integers(2, 60))
        a = rng.integers(0, int(rng.integers(1, 6)), n).tolist()
        b = rng.integers(0, int(rng.integers(1, 6)), n).tolist()
        pa = {i: x for i, x in enumerate(a)}
        pb = {i: x for i, x in enumerate(b)}
        v = nmi(pa, pb)
        assert abs(v - entropy_oracle(a, b)) <= 1e-12
        assert v == nmi(pb, pa)
        perm = rng.permutation(10)
        assert nmi({i: int(perm[x]) + 100 for i, x in pa.items()}, pb) == v


def _run_all(tmp):
    """Invoke every CLI command once; return stdout and every written file."""
    import contextlib
    import io as _io

    cx, lab = tmp / "z.txt", tmp / "z.csv"
    sx, slab = tmp / "s.txt", tmp / "s.csv"
    rem = tmp / "rem.txt"
    rem.write_text("9 31 33\n")
    cmds = [
        ["zachary", "--fill", "bridge", "--output", cx, "--labels", lab],
        ["synth", "--seed", "3", "--output", sx, "--labels", slab],
        ["cluster", "--input", cx, "--truth", lab, "--output", tmp / "a2.csv"],
        ["cluster", "--input", cx, "--k", "3", "--seed", "42", "--output", tmp / "a3.csv"],
        ["cluster", "--input", sx, "--method", "motif", "--truth", slab],
        ["sweep", "--input", cx, "--method", "graph", "--output", tmp / "sw.csv"],
        ["conductance", "--input", sx, "--set", "1,2,3"],
        ["conductance", "--input", sx, "--brute-force"],
        ["nmi", tmp / "a2.csv", lab],
        ["fill", "--edges", cx, "--mode", "all", "--remove", rem, "--output", tmp / "f.txt"],
        ["export-dot", "--input", cx, "--assignment", tmp / "a2.csv", "--output", tmp / "z.dot"],
    ]
    buf = _io.StringIO()
    with contextlib.redirect_stdout(buf):
        for c in cmds:
            assert main([str(x) for x in c]) == 0, c
    files = {p.name: p.read_bytes() for p in sorted(tmp.iterdir())}
    return buf.getvalue(), files


@pytest.mark.acceptance(8, "CLI byte determinism and file round trips")
def test_c8_determinism_and_roundtrip(tmp_path):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    first = _run_all(tmp_path / "a")
    second = _run_all(tmp_path / "b")
    assert first == second
    assert len(first[1]) == 10
    data = [load_zachary(f) for f in ("all", "none", zachary_bridge_removals())]
    data += [synth_paperlike(s) for s in (0, 1, 2)]
    data += list(corpus())
    for X, truth in data:
        text = format_complex(X)
        assert parse_complex(text) == X and format_complex(parse_complex(text)) == text
        ltext = format_labels(truth)
        back, names = parse_labels(ltext)
        assert format_labels(back, names) == ltext
        assert sorted(back.clusters()) == sorted(truth.clusters())
    names = ("Mr. Hi", "Officer, club")
    ltext = format_labels(zachary_truth(), names)
    assert parse_labels(ltext)[1] == names


@pytest.mark.acceptance(9, "Polbooks/Football: shape checks only, and only for supplied files")
def test_c9_external_shapes():
    # The validator accepts the reference shapes and rejects others.
    X, truth = planted_partition_generator(3, 35, 0.0, 0.0, seed=0)
    with pytest.raises(DimensionMismatch):
        check_dataset_shape("polbooks", X, truth)
    for name in ("polbooks", "football"):
        cx = os.environ.get(f"SCX_{name.upper()}_COMPLEX")
        lab = os.environ.get(f"SCX_{name.upper()}_LABELS")
        if cx and lab:
            check_dataset_shape(name, read_complex(cx), read_labels(lab)[0])
