"""Isomorphism classes of small graphs by vertex augmentation.

Each graph on n vertices is a graph on n-1 vertices plus one vertex, so
adding a vertex with every possible neighbourhood to one representative
per class reaches every class; duplicates are removed with an invariant
bucket followed by an exact isomorphism test.
"""
from __future__ import annotations

import numpy as np

from ..graphcore import Graph
from .iso import is_isomorphic, refinement_signature

# number of isomorphism classes of graphs on n vertices (OEIS A000088)
KNOWN_COUNTS = (1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668)


def _invariant(g: Graph) -> tuple:
    a = g.adjacency()
    tri = np.einsum("ij,jk,ki->i", a, a, a) // 2
    walks = a @ a.sum(axis=1)
    return refinement_signature(g), tuple(sorted(zip(tri.tolist(), walks.tolist())))


def _augment(g: Graph) -> list[Graph]:
    n = g.n
    out = []
    base = np.zeros((n + 1, n + 1), dtype=bool)
    base[:n, :n] = g.adj
    for mask in range(1 << n):
        a = base.copy()
        for u in range(n):
            if mask >> u & 1:
                a[u, n] = a[n, u] = True
        out.append(Graph(a))
    return out


def next_order(reps: list[Graph]) -> list[Graph]:
    """One representative per class on n+1 vertices, given all classes on n."""
    buckets: dict[tuple, list[Graph]] = {}
    out = []
    for g in reps:
        for cand in _augment(g):
            key = _invariant(cand)
            bucket = buckets.setdefault(key, [])
            if any(is_isomorphic(cand, h) for h in bucket):
                continue
            bucket.append(cand)
            out.append(cand)
    return out


def graphs_by_order(max_n: int) -> list[list[Graph]]:
    """``result[n]`` lists one graph per isomorphism class on n vertices."""
    levels = [[Graph(np.zeros((0, 0), dtype=bool))]]
    for _ in range(max_n):
        levels.append(next_order(levels[-1]))
    return levels


def all_graphs(max_n: int) -> list[Graph]:
    return [g for level in graphs_by_order(max_n) for g in level]
