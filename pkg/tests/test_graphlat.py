import itertools

import networkx as nx
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cmtangle.graphlat import (GraphError, WhiteGraph, cut_edge_structure, goeritz_matrix,
                               graph_from_gram, indicator, is_2_connected, is_irreducible_sum,
                               pair, pairing, useful_bound_check)
from cmtangle.linalg import is_positive_definite

B3 = WhiteGraph(2, ((0, 1),) * 3)
C3 = WhiteGraph(3, ((0, 1), (1, 2), (0, 2)))
C4 = WhiteGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
P4 = WhiteGraph(4, ((0, 1), (1, 2), (2, 3)))
BOWTIE = WhiteGraph(5, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)))


def multigraphs(max_vertices=7, max_mult=3):
    @st.composite
    def build(draw):
        nv = draw(st.integers(2, max_vertices))
        edges = []
        for i, j in itertools.combinations(range(nv), 2):
            edges.extend([(i, j)] * draw(st.integers(0, max_mult)))
        return WhiteGraph(nv, tuple(edges))
    return build()


def connected_multigraphs(max_vertices=7, max_mult=3):
    return multigraphs(max_vertices, max_mult).filter(lambda g: g.is_connected())


def to_nx(g):
    G = nx.MultiGraph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    return G


def test_goeritz_examples():
    assert goeritz_matrix(B3).matrix == ((3,),)
    assert goeritz_matrix(B3).deleted == 1
    assert goeritz_matrix(C3).matrix == ((2, -1), (-1, 2))
    assert goeritz_matrix(C3).det() == 3


def test_goeritz_rejects_disconnected():
    with pytest.raises(GraphError):
        goeritz_matrix(WhiteGraph(3, ((0, 1),)))


def test_graph_validation():
    with pytest.raises(GraphError):
        WhiteGraph(2, ((0, 0),))
    with pytest.raises(GraphError):
        WhiteGraph(2, ((0, 2),))
    with pytest.raises(GraphError):
        WhiteGraph.from_json({"vertices": 2})
    g = WhiteGraph.from_json({"vertices": 3, "edges": [[2, 0], [1, 0]]})
    assert g.edges == ((0, 1), (0, 2))
    assert WhiteGraph.from_json(g.to_json()) == g


def test_pairing_examples():
    assert pairing(C3, 0, {0}) == 2
    assert pairing(C3, 0, {1}) == -1
    assert pairing(B3, 0, {0, 1}) == 0


def test_2_connected_examples():
    assert is_2_connected(C3)
    assert not is_2_connected(BOWTIE)
    assert is_2_connected(B3)


def test_irreducible_sum_examples():
    # the middle pair of a path leaves the two ends disconnected
    assert not is_irreducible_sum(P4, {1, 2})
    assert is_irreducible_sum(P4, {0, 1})
    assert not is_irreducible_sum(C4, {0, 2})
    assert is_irreducible_sum(C4, {0, 1})
    with pytest.raises(GraphError):
        is_irreducible_sum(C4, set())


def test_cut_edge_structure_square():
    # v, a, b, c = 0, 1, 2, 3 around the square
    x = indicator(C4, {0, 1})
    y = [1, 0, 1, 1]
    assert pair(C4, x, y) == -1
    st_ = cut_edge_structure(C4, 0, x, y)
    assert st_.edge == (1, 2)
    assert (st_.u1, st_.u2) == (1, 2)
    assert st_.R == {1} and st_.S == {2, 3}


def test_cut_edge_structure_banana_has_none():
    with pytest.raises(GraphError):
        cut_edge_structure(B3, 0, [1, 0], [0, 0])
    for x0, x1 in itertools.product(range(-2, 3), repeat=2):
        x = [x0, x1]
        y = [1 - x0, -x1]
        if pair(B3, x, y) == -1:
            with pytest.raises(GraphError):
                cut_edge_structure(B3, 0, x, y)


def test_cut_edge_structure_doubled_path():
    # path 1-2-3 closed up through vertex 0 with doubled end edges
    g = WhiteGraph(4, ((0, 1), (0, 1), (1, 2), (2, 3), (0, 3), (0, 3)))
    found = 0
    for R in ({1}, {1, 2}):
        S = {1, 2, 3} - R
        x = indicator(g, R | {0})
        y = indicator(g, S | {0})
        if pair(g, x, y) == -1:
            st_ = cut_edge_structure(g, 0, x, y)
            assert st_.R == R and st_.S == S
            found += 1
    assert found == 2


def test_useful_bound_examples():
    assert useful_bound_check(C3, {0}, indicator(C3, {0}))
    assert useful_bound_check(C3, {0}, [0, 1, 1])


def test_graph_from_gram_round_trip():
    g = graph_from_gram([[3, -3], [-3, 3]])
    assert g == B3
    with pytest.raises(GraphError):
        graph_from_gram([[2, 1], [1, 2]])
    with pytest.raises(GraphError):
        graph_from_gram([[3, -1], [-1, 1]])


@settings(max_examples=150, deadline=None)
@given(connected_multigraphs())
def test_goeritz_det_independent_of_deleted_vertex(g):
    dets = {goeritz_matrix(g, v).det() for v in g.vertices}
    assert len(dets) == 1
    # matrix-tree theorem: the determinant counts spanning trees
    lap = sympy.Matrix(g.laplacian())
    assert dets.pop() == int(lap[1:, 1:].det())


@settings(max_examples=150, deadline=None)
@given(connected_multigraphs())
def test_goeritz_positive_definite(g):
    assert is_positive_definite(goeritz_matrix(g).matrix)


@settings(max_examples=200, deadline=None)
@given(connected_multigraphs(max_vertices=6, max_mult=2))
def test_2_connected_iff_single_vertices_irreducible(g):
    assert is_2_connected(g) == all(is_irreducible_sum(g, {v}) for v in g.vertices)
    simple = nx.Graph(to_nx(g))
    assert is_2_connected(g) == (g.vertex_count <= 2 or nx.is_biconnected(simple))


@settings(max_examples=150, deadline=None)
@given(connected_multigraphs(max_vertices=6, max_mult=2))
def test_cut_edges_match_bridges(g):
    bridges = {tuple(sorted(e)) for e in nx.bridges(nx.Graph(to_nx(g)))}
    mult = g.multiplicity()
    bridges = {e for e in bridges if mult[e[0]][e[1]] == 1}
    assert {g.edges[k] for k in g.cut_edges()} == bridges


@settings(max_examples=150, deadline=None)
@given(connected_multigraphs(max_vertices=6), st.data())
def test_useful_bound_always_holds(g, data):
    R = data.draw(st.sets(st.sampled_from(list(g.vertices))))
    z = data.draw(st.lists(st.integers(-2, 2), min_size=g.vertex_count, max_size=g.vertex_count))
    assert useful_bound_check(g, R, z)


@settings(max_examples=100, deadline=None)
@given(connected_multigraphs(max_vertices=6), st.data())
def test_pairing_matches_laplacian(g, data):
    R = data.draw(st.sets(st.sampled_from(list(g.vertices))))
    v = data.draw(st.sampled_from(list(g.vertices)))
    assert pairing(g, v, R) == pair(g, indicator(g, {v}), indicator(g, R))
    assert pair(g, indicator(g, g.vertices), indicator(g, R)) == 0
