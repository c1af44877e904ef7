from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from oracles import brute_isomorphic, graph6_reference, graphs, random_graph
from sympowers import graphcore as gc
from sympowers.graphcore import Graph, Graph6Error, parse_graph6, write_graph6
from sympowers.srgtools import detect_srg
from sympowers.sympower import symmetric_power_subsets


def all_labeled(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for b, e in enumerate(pairs) if mask >> b & 1])


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        Graph([[1]])
    with pytest.raises(ValueError):
        Graph(np.zeros((2, 3)))


def test_graph_is_immutable():
    g = gc.complete(3)
    with pytest.raises(ValueError):
        g.adj[0, 1] = False


def test_graph6_small_examples():
    assert write_graph6(gc.empty(1)) == "@"
    assert write_graph6(gc.complete(2)) == "A_"
    assert parse_graph6("@") == gc.empty(1)
    assert parse_graph6("A_") == gc.complete(2)
    assert write_graph6(gc.petersen()) == "IheA@GUAo"


def test_graph6_roundtrip_exhaustive_small():
    for n in range(6):
        for g in all_labeled(n):
            s = write_graph6(g)
            assert s == graph6_reference(g)
            assert parse_graph6(s) == g


@given(graphs(max_n=12))
def test_graph6_roundtrip_random(g):
    assert parse_graph6(write_graph6(g)) == g


def test_graph6_long_forms():
    rng = np.random.default_rng(0)
    for n in (62, 63, 100, 300):
        g = random_graph(n, rng, 0.1)
        s = write_graph6(g)
        assert (s[0] == "~") == (n >= 63)
        assert parse_graph6(s) == g
    assert parse_graph6(">>graph6<<A_\n") == gc.complete(2)


@pytest.mark.parametrize(
    "text, offset",
    [("", 0), ("A_x", 2), ("A", 1), ("A`", 1), ("A\x01", 1), ("~???", 0), ("~??~", 4), ("~?", 2)],
)
def test_graph6_errors_carry_offset(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_adjacency_list_roundtrip():
    g = gc.petersen()
    assert gc.from_adjacency_list(gc.to_adjacency_list(g)) == g


def test_complement():
    assert gc.complement(gc.complete(3)) == gc.empty(3)
    assert brute_isomorphic(gc.complement(gc.cycle(5)), gc.cycle(5))


@given(graphs())
def test_complement_is_involution(g):
    assert gc.complement(gc.complement(g)) == g


def test_delete_vertices():
    assert gc.delete_vertices(gc.complete(4), [0]) == gc.complete(3)
    for v in range(10):
        h = gc.delete_vertices(gc.petersen(), [v])
        assert (h.n, h.num_edges) == (9, 12)
    g = gc.petersen()
    assert gc.delete_vertices(g, []) == g
    with pytest.raises(IndexError):
        gc.delete_vertices(g, [10])


def test_cartesian_product():
    assert brute_isomorphic(gc.cartesian_product(gc.complete(2), gc.complete(2)), gc.cycle(4))
    p = detect_srg(gc.cartesian_product(gc.complete(4), gc.complete(4)))
    assert (p.v, p.k, p.a, p.c) == (16, 6, 2, 2)


def test_cartesian_distances_add():
    rng = np.random.default_rng(1)
    g, h = gc.petersen(), gc.cycle(7)
    prod = gc.cartesian_product(g, h)
    for _ in range(20):
        x, x2 = rng.integers(0, g.n, 2)
        y, y2 = rng.integers(0, h.n, 2)
        d = gc.distances(prod, x * h.n + y)[x2 * h.n + y2]
        assert d == gc.distances(g, x)[x2] + gc.distances(h, y)[y2]


def test_cartesian_edge_count_exhaustive():
    small = [g for n in range(4) for g in all_labeled(n)]
    for g in small:
        for h in small[::5]:
            assert gc.cartesian_product(g, h).num_edges == h.n * g.num_edges + g.n * h.num_edges


def test_direct_product():
    k2 = gc.complete(2)
    assert gc.direct_product(k2, k2).edges() == [(0, 3), (1, 2)]
    for g in all_labeled(3):
        for h in all_labeled(3):
            assert np.array_equal(gc.direct_product(g, h).adjacency(), np.kron(g.adjacency(), h.adjacency()))
    assert gc.direct_product(gc.petersen(), gc.empty(1)) == gc.empty(10)


def test_line_graph():
    assert brute_isomorphic(gc.line_graph(gc.complete(3)), gc.complete(3))
    p = detect_srg(gc.line_graph(gc.complete(5)))
    assert (p.v, p.k, p.a, p.c) == (10, 6, 3, 4)
    for n in range(2, 9):
        lg = gc.line_graph(gc.complete(n))
        sq = symmetric_power_subsets(gc.complete(n), 2)
        assert lg.num_edges == sq.num_edges
        if n <= 5:
            assert brute_isomorphic(lg, sq)


def test_generators():
    assert (gc.star(4).n, gc.star(4).num_edges) == (5, 4)
    p = detect_srg(gc.petersen())
    assert (p.v, p.k, p.a, p.c) == (10, 3, 0, 1)
    p = detect_srg(gc.shrikhande())
    assert (p.v, p.k, p.a, p.c) == (16, 6, 2, 2)
    assert gc.shrikhande().num_edges == gc.rook4().num_edges == 48


@settings(max_examples=50)
@given(graphs(), graphs(max_n=4))
def test_operations_preserve_invariants(g, h):
    for out in (gc.complement(g), gc.cartesian_product(g, h), gc.direct_product(g, h), gc.disjoint_union(g, h)):
        assert np.array_equal(out.adj, out.adj.T)
        assert not out.adj.diagonal().any()


def test_quotient_matrix_rejects_non_equitable():
    with pytest.raises(ValueError):
        gc.quotient_matrix(gc.path(3).adjacency(), [[0, 1], [2]])
    b = gc.quotient_matrix(gc.path(3).adjacency(), [[0, 2], [1]])
    assert b.tolist() == [[0, 1], [2, 0]]
