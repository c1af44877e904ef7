from __future__ import annotations

import numpy as np
import pytest

from sympowers import graphcore as gc
from sympowers.exactalg import symmetric_eigenvalues
from sympowers.srgtools import (
    BMElement,
    QSurd,
    SrgParams,
    detect_srg,
    diag_walk_check,
    distance_partition,
    equitable_refine,
    krein_table,
    one_sum_row,
    one_sum_row_check,
    pair_partition_quotient,
    spectral_idempotents,
    srg_identity_check,
    valency_partition,
    quotient_walk_check,
)
from sympowers.sympower import symmetric_power_subsets

SRGS = {
    "petersen": gc.petersen,
    "shrikhande": gc.shrikhande,
    "rook4": gc.rook4,
    "pentagon": lambda: gc.cycle(5),
    "triangular": lambda: gc.line_graph(gc.complete(5)),
    "k33": lambda: gc.complement(gc.disjoint_union(gc.complete(3), gc.complete(3))),
}


def brute_srg(g):
    a = g.adjacency()
    common = a @ a
    deg = set(a.sum(axis=1).tolist())
    adj = {int(common[i, j]) for i in range(g.n) for j in range(g.n) if i != j and g.adj[i, j]}
    non = {int(common[i, j]) for i in range(g.n) for j in range(g.n) if i != j and not g.adj[i, j]}
    if len(deg) != 1 or len(adj) != 1 or len(non) != 1:
        return None
    return (g.n, deg.pop(), adj.pop(), non.pop())


def test_qsurd_arithmetic():
    r3 = QSurd(0, 1, 3)
    assert r3 * r3 == QSurd(3)
    assert (QSurd(1, 1, 12)).b == 2 and QSurd(1, 1, 12).d == 3
    assert 1 / (QSurd(2) + r3) == QSurd(2) - r3
    with pytest.raises(ValueError):
        r3 + QSurd(0, 1, 5)


def test_detect_srg():
    assert detect_srg(gc.petersen()) == SrgParams(10, 3, 0, 1)
    assert detect_srg(gc.complete(5)) is None
    assert detect_srg(gc.empty(5)) is None
    assert detect_srg(gc.line_graph(gc.complete(5))) == SrgParams(10, 6, 3, 4)
    assert detect_srg(gc.path(4)) is None
    with pytest.raises(ValueError):
        SrgParams(10, 3, 1, 1)


@pytest.mark.parametrize("name", SRGS)
def test_detect_matches_brute_force_and_complement(name):
    g = SRGS[name]()
    p = detect_srg(g)
    assert (p.v, p.k, p.a, p.c) == brute_srg(g)
    assert detect_srg(gc.complement(g)) == p.complement()
    assert srg_identity_check(g, p)


def test_srg_identity_precondition():
    with pytest.raises(ValueError):
        srg_identity_check(gc.path(4), SrgParams(10, 3, 0, 1))


def test_pair_partition_quotient():
    q = pair_partition_quotient(SrgParams(10, 3, 0, 1))
    assert q.matrix == ((0, 4), (2, 4))
    assert q.eigenvalues == (QSurd(2, 2, 3), QSurd(2, -2, 3))
    radius = symmetric_eigenvalues(symmetric_power_subsets(gc.petersen(), 2).adjacency(float)).values[0]
    assert abs(float(q.eigenvalues[0]) - radius) < 1e-7
    q = pair_partition_quotient(SrgParams(16, 6, 2, 2))
    assert q.matrix == ((4, 6), (4, 8))
    # trace 12, determinant 8
    assert q.eigenvalues == (QSurd(6, 2, 7), QSurd(6, -2, 7))
    radius = symmetric_eigenvalues(symmetric_power_subsets(gc.shrikhande(), 2).adjacency(float)).values[0]
    assert abs(float(q.eigenvalues[0]) - radius) < 1e-7
    b = np.array(q.matrix, dtype=float)
    assert np.allclose(sorted(np.linalg.eigvals(b).real), sorted(float(e) for e in q.eigenvalues))


@pytest.mark.parametrize("name", SRGS)
def test_idempotents(name):
    g = SRGS[name]()
    idem = spectral_idempotents(g)
    p = detect_srg(g)
    total = BMElement.of(p)
    for e in idem:
        assert (e.element @ e.element - e.element).is_zero()
        total = total + e.element
        for f in idem:
            if f is not e:
                assert (e.element @ f.element).is_zero()
    assert (total - BMElement.of(p, 1, 0, 0)).is_zero()
    assert sum(e.multiplicity for e in idem) == g.n
    vals = symmetric_eigenvalues(g.adjacency(float)).values
    for e in idem:
        assert np.sum(np.abs(vals - float(e.theta)) < 1e-7) == e.multiplicity
        m = e.element.to_matrix(g)
        assert np.allclose(m @ m, m)


def test_krein_tables_match_for_equal_parameters():
    assert krein_table(gc.shrikhande()) == krein_table(gc.rook4())
    krein_table(gc.cycle(5))  # surd eigenvalues stay exact


@pytest.mark.parametrize("name", ["petersen", "shrikhande", "rook4", "pentagon"])
def test_diag_walk_check(name):
    assert diag_walk_check(SRGS[name](), 8)


def test_equitable_refine_petersen():
    ep = equitable_refine(gc.petersen(), [[0], list(range(1, 10))])
    assert [len(c) for c in ep.cells] == [1, 3, 6]
    assert ep.quotient.tolist() == [[0, 3, 0], [1, 0, 2], [0, 1, 2]]
    discrete = [[i] for i in range(5)]
    assert [list(c) for c in equitable_refine(gc.path(5), discrete).cells] == discrete


def test_valency_partition_of_srg_square_is_equitable():
    for g in (gc.petersen(), gc.shrikhande()):
        sq = symmetric_power_subsets(g, 2)
        cells = valency_partition(sq)
        assert len(cells) == 2
        assert len(equitable_refine(sq, cells).cells) == 2
    sq = symmetric_power_subsets(gc.path(5), 2)
    ep = equitable_refine(sq, valency_partition(sq))
    assert quotient_walk_check(sq, ep.cells, 6)


def test_quotient_eigenvalues_are_graph_eigenvalues():
    for g, seed in (
        (gc.petersen(), distance_partition(gc.petersen(), 0)),
        (gc.path(7), [list(range(7))]),
        (gc.star(4), valency_partition(gc.star(4))),
    ):
        ep = equitable_refine(g, seed)
        graph_vals = symmetric_eigenvalues(g.adjacency(float)).values
        for x in np.linalg.eigvals(ep.quotient.astype(float)).real:
            assert np.min(np.abs(graph_vals - x)) < 1e-7


def test_quotient_walk_check():
    g = gc.petersen()
    assert quotient_walk_check(g, distance_partition(g, 0), 8)
    assert quotient_walk_check(g, distance_partition(g, 0), 0)


def test_one_sum_row():
    assert one_sum_row(gc.petersen()) == (15, 30)
    assert one_sum_row(gc.cycle(5)) == (5, 5)
    for name in SRGS:
        g = SRGS[name]()
        assert one_sum_row_check(g)
        assert sum(one_sum_row(g)) == g.n * (g.n - 1) // 2
