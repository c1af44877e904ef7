from __future__ import annotations

import json
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from oracles import brute_isomorphic, graphs, perfect_matchings, random_graph
from sympowers import graphcore as gc
from sympowers.exactalg import charpoly_exact
from sympowers.graphcore import Graph, parse_graph6, write_graph6
from sympowers.harness.certify import Certificate, certify_distinct
from sympowers.harness.cli import main
from sympowers.harness.enumerate import KNOWN_COUNTS, graphs_by_order
from sympowers.harness.iso import find_isomorphism, is_isomorphic, nonisomorphism_witness
from sympowers.harness.search import (
    PairRecord,
    SearchConfig,
    fingerprint,
    load_store,
    mutate,
    property_report,
    search,
    square,
    square_fingerprint,
)

STAR_PAIR = (gc.star(4), gc.disjoint_union(gc.cycle(4), gc.empty(1)))


def relabel(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Graph(g.adj[np.ix_(perm, perm)])


# -- isomorphism ------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=0, max_n=6), graphs(min_n=0, max_n=6))
def test_iso_matches_brute_force(g, h):
    assert is_isomorphic(g, h) == brute_isomorphic(g, h)


def test_iso_map_is_an_isomorphism():
    rng = np.random.default_rng(0)
    prng = random.Random(0)
    for _ in range(30):
        g = random_graph(int(rng.integers(1, 15)), rng)
        h = relabel(g, prng)
        m = find_isomorphism(g, h)
        assert m is not None
        assert np.array_equal(h.adj[np.ix_(m, m)], g.adj)
        assert nonisomorphism_witness(g, h) is None


def test_regular_nonisomorphic_pairs():
    assert nonisomorphism_witness(gc.shrikhande(), gc.rook4()) == "backtracking"
    assert nonisomorphism_witness(gc.complete(3), gc.complete(4)) == "size"
    assert nonisomorphism_witness(*STAR_PAIR) == "refinement"
    assert is_isomorphic(gc.petersen(), relabel(gc.petersen(), random.Random(5)))


# -- enumeration ------------------------------------------------------------


def test_enumeration_counts():
    levels = graphs_by_order(6)
    assert [len(level) for level in levels] == list(KNOWN_COUNTS[:7])


def test_enumeration_matches_atlas():
    ours = graphs_by_order(6)
    for n in range(7):
        atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n]
        assert len(atlas) == len(ours[n])
        for h in atlas:
            g = Graph(nx.to_numpy_array(h, nodelist=range(n), dtype=bool))
            assert sum(is_isomorphic(g, x) for x in ours[n]) == 1


@pytest.mark.slow
def test_enumeration_order_seven():
    assert len(graphs_by_order(7)[7]) == KNOWN_COUNTS[7]


# -- mutations ----------------------------------------------------------------


def test_mutation_examples():
    rng = random.Random(0)
    assert mutate(gc.complete(4), "vertex-delete", rng) == gc.complete(3)
    toggled = mutate(gc.complete(4), "one-factor-toggle", rng)
    assert is_isomorphic(toggled, gc.cycle(4))
    removed = {frozenset(e) for e in gc.complete(4).edges()} - {frozenset(e) for e in toggled.edges()}
    assert sorted(map(sorted, removed)) in [sorted(map(sorted, m)) for m in perfect_matchings(gc.complete(4))]
    # C4 has two degree-preserving swaps; each yields 2K2 or C4 again
    for _ in range(10):
        out = mutate(gc.cycle(4), "edge-swap", rng)
        assert out is None or out.degrees().tolist() == [2, 2, 2, 2]


def test_one_factor_toggle_adds_from_complement():
    out = mutate(gc.empty(4), "one-factor-toggle", random.Random(1))
    assert out.num_edges == 2 and out.degrees().tolist() == [1, 1, 1, 1]
    # no perfect matching in either graph on an odd vertex count
    assert mutate(gc.complete(3), "one-factor-toggle", random.Random(1)) is None


def test_mutation_skip_signals():
    rng = random.Random(0)
    assert mutate(gc.empty(3), "edge-delete", rng) is None
    assert mutate(gc.complete(3), "edge-add", rng) is None
    assert mutate(gc.complete(4), "edge-swap", rng) is None
    assert mutate(gc.empty(0), "vertex-delete", rng) is None
    with pytest.raises(ValueError):
        mutate(gc.complete(3), "flip", rng)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_edge_swap_preserves_degrees(g):
    out = mutate(g, "edge-swap", random.Random(g.num_edges))
    if out is not None:
        assert out.degrees().tolist() == g.degrees().tolist()
        assert out.num_edges == g.num_edges


# -- fingerprints and records -------------------------------------------------


def test_fingerprints():
    assert fingerprint(gc.shrikhande()) == fingerprint(gc.rook4())
    assert fingerprint(gc.complete(3)) != fingerprint(gc.cycle(4))
    assert square_fingerprint(gc.shrikhande()) == square_fingerprint(gc.rook4())
    assert square(gc.complete(1)).n == 0


def test_property_report():
    assert property_report(gc.petersen(), gc.petersen()).all()
    flags = property_report(gc.shrikhande(), gc.rook4())
    assert flags.cospectral_with_complements and flags.vertex_decks_equal
    with pytest.raises(ValueError):
        property_report(*STAR_PAIR)


def _config(**kw) -> SearchConfig:
    seeds = [write_graph6(gc.shrikhande()), write_graph6(gc.rook4())]
    return SearchConfig(seeds=seeds, **kw)


def test_search_seed_pair(tmp_path):
    store = tmp_path / "pairs.jsonl"
    recs = list(search(_config(), store=store))
    assert len(recs) == 1
    assert recs[0].verify()
    assert recs[0].witness == "backtracking"
    assert [r.to_json() for r in load_store(store)] == [recs[0].to_json()]


def test_search_is_deterministic(tmp_path):
    texts = []
    for i, workers in enumerate((1, 1, 2)):
        store = tmp_path / f"run{i}.jsonl"
        list(search(_config(budget=32, seed=7, workers=workers), store=store))
        texts.append(store.read_text())
    assert texts[0] == texts[1] == texts[2]


def test_tampered_record_is_rejected(tmp_path):
    rec = next(search(_config()))
    bad = PairRecord.from_json(rec.to_json())
    bad.y = bad.x
    store = tmp_path / "bad.jsonl"
    store.write_text(bad.to_json() + "\n")
    with pytest.raises(ValueError):
        load_store(store)
    assert len(load_store(store, verify=False)) == 1


def test_search_config_validation(tmp_path):
    with pytest.raises(ValueError):
        SearchConfig(seeds=[], weights={"teleport": 1.0})
    with pytest.raises(ValueError):
        SearchConfig(seeds=[], weights={"edge-add": 0.0})
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"seeds": ["Bw"], "budget": 5}))
    assert SearchConfig.from_file(path).budget == 5


# -- certificates ---------------------------------------------------------------


def test_certificate_soundness():
    k3, p3 = gc.complete(3).adjacency(), gc.path(3).adjacency()
    cert = certify_distinct(k3, p3, rng=random.Random(0))
    assert cert is not None and cert.verify(k3, p3)
    # residues really are the shifted determinants of the exact polynomials
    assert cert.r1 == (-1) ** 3 * charpoly_exact(k3)(-cert.alpha) % cert.p
    assert cert.r2 == (-1) ** 3 * charpoly_exact(p3)(-cert.alpha) % cert.p
    assert not cert.verify(p3, k3)


def test_certificate_inconclusive_and_errors():
    x, y = (g.adjacency() for g in STAR_PAIR)
    assert certify_distinct(x, y, trials=5) is None
    assert certify_distinct(x, x, trials=3) is None
    with pytest.raises(ValueError):
        certify_distinct(x, np.zeros((3, 3), dtype=int))
    with pytest.raises(ValueError):
        Certificate(5, 1, 2, 2)


def test_certificate_on_star_pair_squares():
    x, y = (square(g).adjacency() for g in STAR_PAIR)
    cert = certify_distinct(x, y, rng=random.Random(2))
    assert cert is not None and cert.verify(x, y)


# -- command line -----------------------------------------------------------------


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["power", "Bw"]) == 0
    assert capsys.readouterr().out.strip() == write_graph6(gc.complete(3))
    assert main(["charpoly", "Bw"]) == 0
    capsys.readouterr()
    assert main(["cospectral", write_graph6(gc.shrikhande()), write_graph6(gc.rook4()), "--complements"]) == 0
    capsys.readouterr()
    assert main(["cospectral", "Bw", "Bg"]) == 1
    assert main(["srg-info", write_graph6(gc.petersen())]) == 0
    assert main(["srg-info", "Bg"]) == 1
    assert main(["hamiltonian", write_graph6(gc.cycle(5)), "-k", "2", "--check"]) == 0
    assert main(["certify", "Bw", "Bg"]) == 1
    x, y = map(write_graph6, STAR_PAIR)
    assert main(["certify", x, y, "--trials", "3"]) == 0
    assert main(["power", "Bw", "-k", "5"]) == 2
    assert main(["charpoly", "not-a-graph"]) == 2
    assert main(["charpoly", str(tmp_path / "missing.txt")]) == 2
    assert main(["search", "--budget", "0"]) == 2


def test_cli_search_and_omega(tmp_path, capsys):
    store = tmp_path / "out.jsonl"
    code = main(["search", "--seeds", write_graph6(gc.shrikhande()), write_graph6(gc.rook4()),
                 "--budget", "0", "--store", str(store)])
    assert code == 0
    assert len(load_store(store)) == 1
    capsys.readouterr()
    mfile = tmp_path / "k3.txt"
    mfile.write_text("0 1 1\n1 0 1\n1 1 0\n")
    assert main(["omega", str(mfile)]) == 0
    out = capsys.readouterr().out.split()
    assert [int(x) for x in out] == [0, 1, 1, 1, 0, 1, 1, 1, 0]
    assert parse_graph6("Bw") == gc.complete(3)
