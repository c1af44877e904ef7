"""Symmetric powers of graphs and their quotient constructions.

All constructions label k-subsets in colexicographic order, so the
subset, flip-quotient and selector routes can be compared entrywise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .exactalg import symmetric_eigenvalues
from .graphcore import (
    Graph,
    cartesian_product,
    characteristic_matrix,
    direct_product,
    quotient_matrix,
)


# --------------------------------------------------------------------------
# colex indexing
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KSubsetIndex:
    """Colex rank/unrank of the k-subsets of ``{0..v-1}``."""

    v: int
    k: int

    def __len__(self):
        return math.comb(self.v, self.k)

    def rank(self, subset: Sequence[int]) -> int:
        s = sorted(subset)
        if len(s) != self.k or len(set(s)) != self.k or (s and (s[0] < 0 or s[-1] >= self.v)):
            raise ValueError(f"{subset!r} is not a {self.k}-subset of range({self.v})")
        return sum(math.comb(x, i + 1) for i, x in enumerate(s))

    def unrank(self, r: int) -> tuple[int, ...]:
        if not 0 <= r < len(self):
            raise IndexError(r)
        out = []
        x = self.v
        for i in range(self.k, 0, -1):
            x -= 1
            while math.comb(x, i) > r:
                x -= 1
            out.append(x)
            r -= math.comb(x, i)
        return tuple(reversed(out))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(colex_subsets(self.v, self.k))


def colex_subsets(v: int, k: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(v), k), key=lambda s: s[::-1])


def _masks_colex(v: int, k: int) -> list[int]:
    # colex order on subsets coincides with numeric order of their bitmasks
    return sorted(sum(1 << x for x in s) for s in combinations(range(v), k))


# --------------------------------------------------------------------------
# subset definition
# --------------------------------------------------------------------------


def symmetric_power_subsets(g: Graph, k: int) -> Graph:
    """X^{k}: k-subsets adjacent iff their symmetric difference is an edge."""
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} out of range for a graph on {g.n} vertices")
    masks = _masks_colex(g.n, k)
    index = {m: i for i, m in enumerate(masks)}
    nbr = [sum(1 << y for y in g.neighbors(x)) for x in range(g.n)]
    a = np.zeros((len(masks), len(masks)), dtype=bool)
    for i, m in enumerate(masks):
        rest = m
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            rest ^= low
            free = nbr[x] & ~m
            while free:
                lowy = free & -free
                free ^= lowy
                a[i, index[m ^ low ^ lowy]] = True
    return Graph(a)


# --------------------------------------------------------------------------
# two-stage construction: Cartesian square, diagonal, flip
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitPartition:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(x for c in self.cells for x in c)
        if seen != list(range(len(seen))):
            raise ValueError("cells do not partition 0..N-1")

    def __len__(self):
        return len(self.cells)


def _square_base(n2: int) -> int:
    n = math.isqrt(n2)
    if n * n != n2:
        raise ValueError(f"{n2} vertices is not the square of a base vertex count")
    return n


def diagonal(square: Graph) -> tuple[int, ...]:
    """Vertices (i, i) of a Cartesian square, as indices i*n + i."""
    n = _square_base(square.n)
    return tuple(i * n + i for i in range(n))


def flip_orbits(square: Graph, include_diagonal: bool = True) -> OrbitPartition:
    """Orbits of (i, j) -> (j, i), ordered colex on the multiset {i, j}."""
    n = _square_base(square.n)
    cells = []
    for j in range(n):
        for i in range(j + 1):
            if i == j:
                if include_diagonal:
                    cells.append((i * n + i,))
            else:
                cells.append((i * n + j, j * n + i))
    if not include_diagonal:
        # renumber onto the vertices that remain after deleting the diagonal
        keep = [x for x in range(n * n) if x // n != x % n]
        pos = {x: r for r, x in enumerate(keep)}
        cells = [tuple(pos[x] for x in c) for c in cells]
    return OrbitPartition(tuple(cells))


def flip_permutation(n: int) -> np.ndarray:
    """Permutation matrix F with F (x ⊗ y) = y ⊗ x on R^n ⊗ R^n."""
    f = np.zeros((n * n, n * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            f[j * n + i, i * n + j] = 1
    return f


def symmetric_power_quotient(g: Graph) -> Graph:
    """X^{2} as (X □ X minus diagonal) / flip, relabeled in colex pair order."""
    sq = cartesian_product(g, g)
    diag = set(diagonal(sq))
    keep = [x for x in range(sq.n) if x not in diag]
    cut = sq.adj[np.ix_(keep, keep)]
    orbits = flip_orbits(sq, include_diagonal=False)
    b = quotient_matrix(cut, orbits.cells)
    if b.size:
        if b.max() > 1 or np.diagonal(b).any() or not np.array_equal(b, b.T):
            raise AssertionError("flip quotient is not a simple graph")
    # orbits of {i<j} are already in colex order of the pair
    return Graph(b.astype(bool))


def flip_quotient_combinatorial(g: Graph) -> np.ndarray:
    """Integer quotient matrix B of X □ X by all flip orbits (diagonal included)."""
    sq = cartesian_product(g, g)
    return quotient_matrix(sq.adj, flip_orbits(sq).cells)


def flip_quotient_full(g: Graph, return_r: bool = False):
    """Symmetric quotient C = R^T A(X □ X) R, R the normalized orbit matrix."""
    sq = cartesian_product(g, g)
    orbits = flip_orbits(sq)
    r = characteristic_matrix(sq.n, orbits.cells, normalized=True)
    c = r.T @ sq.adjacency(float) @ r
    return (c, r) if return_r else c


def group_eigenvalues(values, tol: float = 1e-7) -> list[tuple[float, int]]:
    """Cluster a sorted eigenvalue list into (value, multiplicity) pairs."""
    vals = sorted(np.asarray(values, dtype=float), reverse=True)
    groups: list[list[float]] = []
    for x in vals:
        if groups and abs(groups[-1][-1] - x) <= tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    return [(float(np.mean(gr)), len(gr)) for gr in groups]


def predicted_quotient_spectrum(g: Graph, tol: float = 1e-7) -> np.ndarray:
    """Spectrum of the flip quotient from the spectrum of X alone.

    Each eigenvalue theta of multiplicity l gives 2*theta with multiplicity
    C(l+1, 2); each pair theta != tau gives theta + tau with multiplicity
    l_theta * l_tau.
    """
    groups = group_eigenvalues(symmetric_eigenvalues(g.adjacency(float)).values, tol)
    out: list[float] = []
    for i, (th, l) in enumerate(groups):
        out.extend([2 * th] * math.comb(l + 1, 2))
        for tau, m in groups[i + 1 :]:
            out.extend([th + tau] * (l * m))
    return np.sort(np.array(out))[::-1]


def selector_power(g: Graph, k: int) -> np.ndarray:
    """Adjacency of X^{k} as P (A ⊗ I ⊗ ... ⊗ I) P^T / (k-1)!."""
    from .omegamap import omega

    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} out of range for a graph on {g.n} vertices")
    return omega(g.adjacency(np.int64), k)


# --------------------------------------------------------------------------
# variations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AnalogResult:
    """Quotient construction with the simple-graph projection it implies.

    ``quotient`` is the orbit quotient matrix (counts, possibly > 1 and with
    loops); ``graph`` keeps only its 0/1 off-diagonal support.
    """

    quotient: np.ndarray
    graph: Graph
    cells: OrbitPartition
    loops_dropped: int
    multi_edges_clipped: int


def _simple_projection(b: np.ndarray, cells: OrbitPartition) -> AnalogResult:
    loops = int(np.count_nonzero(np.diagonal(b)))
    off = b.copy()
    np.fill_diagonal(off, 0)
    clipped = int(np.count_nonzero(np.triu(off > 1, 1)))
    return AnalogResult(b, Graph(off > 0), cells, loops, clipped)


def direct_square_analog(g: Graph) -> AnalogResult:
    """(X × X minus diagonal) / flip, cells in colex pair order."""
    sq = direct_product(g, g)
    keep = [x for x in range(sq.n) if x // g.n != x % g.n] if g.n else []
    cut = sq.adj[np.ix_(keep, keep)]
    orbits = flip_orbits(sq, include_diagonal=False) if g.n else OrbitPartition(())
    b = quotient_matrix(cut, orbits.cells)
    return _simple_projection(b, orbits)


def cyclic_orbits(n: int) -> OrbitPartition:
    """Orbits of the right cyclic shift on non-constant triples, indexed on
    the vertex set of X □ X □ X with the constant triples deleted."""
    keep = [x for x in range(n**3) if not (x // (n * n) == (x // n) % n == x % n)]
    pos = {x: r for r, x in enumerate(keep)}
    seen = set()
    cells = []
    for x in keep:
        if x in seen:
            continue
        a, b, c = x // (n * n), (x // n) % n, x % n
        orbit = []
        for t in ((a, b, c), (c, a, b), (b, c, a)):
            y = t[0] * n * n + t[1] * n + t[2]
            orbit.append(y)
            seen.add(y)
        cells.append(tuple(pos[y] for y in orbit))
    return OrbitPartition(tuple(cells))


def cyclic_cube_analog(g: Graph) -> AnalogResult:
    """(X □ X □ X minus constant triples) / cyclic shift."""
    n = g.n
    cube = cartesian_product(cartesian_product(g, g), g)
    keep = [x for x in range(n**3) if not (x // (n * n) == (x // n) % n == x % n)]
    cut = cube.adj[np.ix_(keep, keep)]
    orbits = cyclic_orbits(n)
    b = quotient_matrix(cut, orbits.cells)
    return _simple_projection(b, orbits)
