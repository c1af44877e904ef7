"""Walk generating functions, cospectrality tests and polynomial decks.

Rational-function identities are checked as polynomial identities after
clearing denominators, always in exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exactalg import IntPoly, as_int_matrix, charpoly_exact, polydet
from .graphcore import Graph, complement, delete_vertices, vertex_set


@dataclass(frozen=True)
class WalkSeries:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs):
            raise ArithmeticError("walk counts must be non-negative")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, r):
        return self.coeffs[r]


def walk_series(g: Graph, i: int, j: int, order: int) -> WalkSeries:
    """Coefficients (A^r)_{ij} for r = 0..order."""
    a = g.adjacency(object)
    x = np.zeros(g.n, dtype=object)
    x[j] = 1
    out = []
    for _ in range(order + 1):
        out.append(int(x[i]))
        x = a.dot(x)
    return WalkSeries(tuple(out))


def all_walks_series(g: Graph, order: int) -> WalkSeries:
    """Coefficients 1^T A^r 1 for r = 0..order."""
    a = g.adjacency(object)
    x = np.ones(g.n, dtype=object)
    out = []
    for _ in range(order + 1):
        out.append(int(x.sum()))
        x = a.dot(x)
    return WalkSeries(tuple(out))


def charpoly(g: Graph) -> IntPoly:
    return charpoly_exact(g.adjacency())


def cospectral(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    return charpoly(g) == charpoly(h)


def cospectral_complements_check(g: Graph, h: Graph) -> bool:
    """For cospectral g, h: whether their complements are cospectral,
    decided by comparing all-walk counts through order 2n."""
    if not cospectral(g, h):
        raise ValueError("graphs must be cospectral")
    order = 2 * g.n
    return all_walks_series(g, order) == all_walks_series(h, order)


def vertex_deck(g: Graph) -> tuple[IntPoly, ...]:
    return tuple(sorted(charpoly(delete_vertices(g, [i])) for i in range(g.n)))


def pair_deck(g: Graph) -> tuple[IntPoly, ...]:
    return tuple(sorted(charpoly(delete_vertices(g, pair)) for pair in combinations(range(g.n), 2)))


def adjugate_char_matrix(a) -> list[list[IntPoly]]:
    """adj(tI - A) as a matrix of polynomials.

    Uses adj(tI - A) = Σ_k B_k t^{n-1-k} with B_0 = I and
    B_k = A B_{k-1} + c_{n-k} I, where φ(t) = Σ c_j t^j.
    """
    a = as_int_matrix(a)
    n = a.shape[0]
    c = charpoly_exact(a).coeffs
    eye = np.eye(n, dtype=int).astype(object)
    mats = [eye]
    for k in range(1, n):
        mats.append(a.dot(mats[-1]) + c[n - k] * eye)
    if n and not np.array_equal(a.dot(mats[-1]) + c[0] * eye, np.zeros((n, n), dtype=int)):
        raise ArithmeticError("adjugate recurrence failed to close")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(IntPoly([mats[n - 1 - d][i, j] for d in range(n)]))
        out.append(row)
    return out


def minor_identity_check(g: Graph, deleted: Iterable[int]) -> bool:
    """φ(X∖D) φ(X)^{|D|-1} == det(adj(tI - A)[D, D])."""
    d = list(vertex_set(g.n, deleted))
    if not d:
        return True
    adj = adjugate_char_matrix(g.adjacency())
    lhs = charpoly(delete_vertices(g, d)) * charpoly(g) ** (len(d) - 1)
    rhs = polydet([[adj[i][j] for j in d] for i in d])
    return lhs == rhs


def offdiagonal_square_check(g: Graph, i: int, j: int) -> bool:
    """N_ij^2 == φ(X∖i) φ(X∖j) - φ(X) φ(X∖ij), N_ij the (i, j) cofactor of tI - A."""
    if i == j:
        raise ValueError("vertices must be distinct")
    n_ij = adjugate_char_matrix(g.adjacency())[i][j]
    rhs = charpoly(delete_vertices(g, [i])) * charpoly(delete_vertices(g, [j])) - charpoly(g) * charpoly(
        delete_vertices(g, [i, j])
    )
    return n_ij * n_ij == rhs


def cospectral_with_complements(g: Graph, h: Graph) -> bool:
    """Cospectral, and the complements are cospectral too (both computed directly)."""
    return cospectral(g, h) and cospectral(complement(g), complement(h))


def independent_sets(g: Graph, size: int) -> list[tuple[int, ...]]:
    return [s for s in combinations(range(g.n), size) if not g.adj[np.ix_(s, s)].any()]


def deleted_pair_report(g: Graph, d1: Sequence[int], d2: Sequence[int]) -> bool:
    """Whether X∖D1 and X∖D2 are cospectral with cospectral complements."""
    return cospectral_with_complements(delete_vertices(g, d1), delete_vertices(g, d2))
