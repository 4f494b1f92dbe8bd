import numpy as np
import pytest

from scx.complex import build_complex, fill_all_cliques, graph_triangles
from scx.errors import EmptyActiveSet
from scx.io import load_zachary
from scx.operators import (
    build_bundle,
    connected_components,
    graph_adjacency,
    motif_adjacency,
    operator_bundle,
    simplicial_adjacency_boundary,
    simplicial_adjacency_direct,
)

from corpus import corpus


def at(X, A, u, v):
    return A[X.index[u], X.index[v]]


def test_single_triangle_adjacency(k3):
    A = simplicial_adjacency_direct(k3)
    np.testing.assert_array_equal(A, np.ones((3, 3), dtype=int) - np.eye(3, dtype=int))


def test_two_triangles_sharing_an_edge():
    X = build_complex(range(1, 5), auto_close=True, triangles=[(1, 2, 3), (1, 2, 4)])
    A = simplicial_adjacency_direct(X)
    assert at(X, A, 1, 2) == 2
    for u, v in [(1, 3), (2, 3), (1, 4), (2, 4)]:
        assert at(X, A, u, v) == 1
    assert at(X, A, 3, 4) == 0


def test_hollow_triangle_contributes_nothing():
    X = build_complex([5, 7, 8], [(5, 7), (7, 8), (5, 8)])
    assert not simplicial_adjacency_direct(X).any()
    assert not simplicial_adjacency_boundary(X).any()
    W = motif_adjacency(X)
    assert at(X, W, 5, 7) == at(X, W, 7, 8) == at(X, W, 5, 8) == 1


def test_boundary_route_single_triangle(k3):
    from scx.complex import boundary_matrix

    B12 = (boundary_matrix(k3, 1) @ boundary_matrix(k3, 2)).toarray()
    np.testing.assert_array_equal(B12, [[2], [2], [2]])
    np.testing.assert_array_equal(simplicial_adjacency_boundary(k3), simplicial_adjacency_direct(k3))


@pytest.mark.parametrize("i", range(0, 200, 5))
def test_direct_equals_boundary_and_motif_dominates(i):
    X, _ = corpus()[i]
    A = simplicial_adjacency_direct(X)
    np.testing.assert_array_equal(simplicial_adjacency_boundary(X), A)
    W = motif_adjacency(X)
    assert (A <= W).all()
    all_filled = set(X.triangles) == set(graph_triangles(X))
    assert np.array_equal(A, W) == all_filled
    np.testing.assert_array_equal(motif_adjacency(X), simplicial_adjacency_direct(fill_all_cliques(X)))


@pytest.mark.parametrize("i", range(0, 200, 9))
def test_degree_counts_triangles_twice(i):
    X, _ = corpus()[i]
    deg = simplicial_adjacency_direct(X).sum(axis=1)
    for v in X.nodes:
        assert deg[X.index[v]] == 2 * sum(v in t for t in X.triangles)


def test_graph_adjacency():
    X = build_complex([1, 2, 3], [(1, 2), (2, 3)])
    A = graph_adjacency(X)
    assert A[0, 1] == A[1, 2] == 1 and A[0, 2] == 0
    Z, _ = load_zachary("none")
    assert graph_adjacency(Z).shape == (34, 34)
    assert np.count_nonzero(graph_adjacency(Z)) == 2 * 78
    assert not graph_adjacency(build_complex([1, 2])).any()


def test_bundle_single_triangle(k3):
    b = operator_bundle(k3, "simplicial")
    J = np.ones((3, 3))
    np.testing.assert_array_equal(b.degree, [2, 2, 2])
    np.testing.assert_array_equal(b.laplacian, 2 * np.eye(3) - (J - np.eye(3)))
    np.testing.assert_allclose(b.normalized_laplacian, np.eye(3) - (J - np.eye(3)) / 2, atol=1e-15)


def test_bundle_excludes_isolated_nodes():
    X = build_complex(range(1, 10), [(8, 9)] + [(1, 2), (1, 3), (2, 3)], [(1, 2, 3)])
    b = operator_bundle(X, "simplicial")
    assert 9 in b.excluded_nodes and b.active_nodes == (1, 2, 3)
    assert b.normalized_laplacian.shape == (3, 3)


def test_zero_adjacency_has_no_active_set():
    with pytest.raises(EmptyActiveSet):
        build_bundle(np.zeros((3, 3), dtype=int), "simplicial")


@pytest.mark.parametrize("method", ["simplicial", "motif", "graph"])
@pytest.mark.parametrize("i", range(0, 200, 13))
def test_laplacian_properties(method, i):
    X, _ = corpus()[i]
    try:
        b = operator_bundle(X, method)
    except EmptyActiveSet:
        return
    np.testing.assert_array_equal(b.laplacian.sum(axis=1), 0)
    Ln = b.normalized_laplacian
    assert np.array_equal(Ln, Ln.T)
    ev = np.linalg.eigvalsh(Ln)
    assert ev.min() >= -1e-9 and ev.max() <= 2 + 1e-9
    # zero-eigenvalue multiplicity = number of components over active nodes
    ncomp = len(connected_components(b.active_adjacency))
    assert int((np.linalg.eigvalsh(b.laplacian[np.ix_(b.active, b.active)]) < 1e-9).sum()) == ncomp
