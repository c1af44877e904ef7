"""Colour refinement and individualization-refinement isomorphism testing.

Sound decisions for graphs up to a few dozen vertices; no automorphism
pruning, so very symmetric large graphs will be slow.
"""
from __future__ import annotations

from collections import Counter
from typing import Sequence

from ..graphcore import Graph


def _neighbor_lists(g: Graph) -> list[list[int]]:
    return [g.neighbors(u) for u in range(g.n)]


def _refine(nbrs: Sequence[list[list[int]]], colours: Sequence[list[int]]):
    """Refine several colourings jointly to a common stable colouring.

    Colour names are ranks of sorted signatures taken over all graphs at
    once, so equal names mean equal refinement histories. Returns None as
    soon as the colour histograms disagree.
    """
    colours = [list(c) for c in colours]
    while True:
        sigs = [
            [(c[v], tuple(sorted(c[u] for u in nb[v]))) for v in range(len(nb))]
            for nb, c in zip(nbrs, colours)
        ]
        rank = {s: r for r, s in enumerate(sorted(set().union(*map(set, sigs))))}
        new = [[rank[s] for s in sg] for sg in sigs]
        hists = [Counter(c) for c in new]
        if any(h != hists[0] for h in hists[1:]):
            return None
        if len(hists[0]) == len(set(colours[0])):
            return new
        colours = new


def refinement_signature(g: Graph) -> tuple:
    """Isomorphism invariant: the stable colour-refinement histogram and the
    colour pattern of every edge."""
    c = _refine([_neighbor_lists(g)], [[0] * g.n])[0]
    edges = sorted(tuple(sorted((c[u], c[v]))) for u, v in g.edges())
    return (g.n, tuple(sorted(Counter(c).items())), tuple(edges))


def _search(gn, hn, gbits, hbits, cg, ch):
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(cg):
        groups.setdefault(c, []).append(v)
    cells = [vs for vs in groups.values() if len(vs) > 1]
    if not cells:
        where = {c: v for v, c in enumerate(ch)}
        mapping = [where[c] for c in cg]
        for u in range(len(gn)):
            img = 0
            for w in gn[u]:
                img |= 1 << mapping[w]
            if img != hbits[mapping[u]]:
                return None
        return mapping
    target = min(cells, key=len)
    colour = cg[target[0]]
    fresh = max(cg) + 1
    u = target[0]
    for w in (v for v, c in enumerate(ch) if c == colour):
        ig, ih = list(cg), list(ch)
        ig[u] = ih[w] = fresh
        refined = _refine([gn, hn], [ig, ih])
        if refined is None:
            continue
        found = _search(gn, hn, gbits, hbits, *refined)
        if found is not None:
            return found
    return None


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A vertex map ``m`` with uv an edge of g iff m[u]m[v] an edge of h, or None."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return None
    if g.n == 0:
        return []
    gn, hn = _neighbor_lists(g), _neighbor_lists(h)
    refined = _refine([gn, hn], [[0] * g.n, [0] * h.n])
    if refined is None:
        return None
    gbits = [sum(1 << w for w in nb) for nb in gn]
    hbits = [sum(1 << w for w in nb) for nb in hn]
    return _search(gn, hn, gbits, hbits, *refined)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def nonisomorphism_witness(g: Graph, h: Graph) -> str | None:
    """How g and h were told apart, or None if they are isomorphic."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return "size"
    if refinement_signature(g) != refinement_signature(h):
        return "refinement"
    if find_isomorphism(g, h) is None:
        return "backtracking"
    return None
