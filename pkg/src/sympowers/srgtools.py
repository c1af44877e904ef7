"""Strongly regular graphs: detection, the algebra span{I, A, J}, spectral
idempotents and their Schur products, equitable partitions and quotients."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graphcore import Graph, cartesian_product, characteristic_matrix, quotient_matrix
from .sympower import symmetric_power_subsets


# --------------------------------------------------------------------------
# exact numbers a + b*sqrt(d)
# --------------------------------------------------------------------------


def _squarefree(d: int) -> tuple[int, int]:
    """d = s**2 * f with f squarefree; returns (s, f)."""
    s, f, q = 1, d, 2
    while q * q <= f:
        while f % (q * q) == 0:
            f //= q * q
            s *= q
        q += 1
    return s, f


class QSurd:
    """Element a + b*sqrt(d) of Q(sqrt d), d a squarefree positive integer."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        a, b = Fraction(a), Fraction(b)
        if d < 0:
            raise ValueError("only real quadratic fields are supported")
        if b and d not in (0, 1):
            s, d = _squarefree(d)
            b *= s
        if d in (0, 1) or not b:
            a, b, d = a + (b if d == 1 else 0), Fraction(0), 1
        self.a, self.b, self.d = a, b, d

    @classmethod
    def coerce(cls, x) -> "QSurd":
        return x if isinstance(x, QSurd) else cls(x)

    def _field(self, other: "QSurd") -> int:
        if self.b and other.b and self.d != other.d:
            raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
        return self.d if self.b else other.d

    def __add__(self, other):
        o = QSurd.coerce(other)
        return QSurd(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-QSurd.coerce(other))

    def __rsub__(self, other):
        return QSurd.coerce(other) - self

    def __mul__(self, other):
        o = QSurd.coerce(other)
        d = self._field(o)
        return QSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QSurd":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QSurd(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        return self * QSurd.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QSurd.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        out = QSurd(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = QSurd.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b and (not self.b or self.d == o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 1))

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if not self.b:
            return str(self.a)
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}√{self.d}"


# --------------------------------------------------------------------------
# parameters
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    a: int
    c: int

    def __post_init__(self):
        if self.k * (self.k - self.a - 1) != (self.v - self.k - 1) * self.c:
            raise ValueError(f"infeasible parameters {self}")

    def eigenvalues(self) -> tuple[QSurd, QSurd, QSurd]:
        """(k, r, s) with r >= s the restricted eigenvalues."""
        delta = (self.a - self.c) ** 2 + 4 * (self.k - self.c)
        r = QSurd(Fraction(self.a - self.c, 2), Fraction(1, 2), delta)
        s = QSurd(Fraction(self.a - self.c, 2), Fraction(-1, 2), delta)
        return QSurd(self.k), r, s

    def complement(self) -> "SrgParams":
        v, k, a, c = self.v, self.k, self.a, self.c
        return SrgParams(v, v - k - 1, v - 2 * k + c - 2, v - 2 * k + a)


def detect_srg(g: Graph) -> SrgParams | None:
    """Parameters (v, k; a, c) if ``g`` is strongly regular, else None."""
    n = g.n
    if n < 2:
        return None
    deg = g.degrees()
    k = int(deg[0])
    if (deg != k).any() or k == 0 or k == n - 1:
        return None
    a = g.adjacency()
    common = a @ a
    off = ~np.eye(n, dtype=bool)
    adj_vals = common[g.adj]
    non_vals = common[off & ~g.adj]
    if adj_vals.size == 0 or non_vals.size == 0:
        return None
    if (adj_vals != adj_vals[0]).any() or (non_vals != non_vals[0]).any():
        return None
    return SrgParams(n, k, int(adj_vals[0]), int(non_vals[0]))


def srg_identity_check(g: Graph, params: SrgParams) -> bool:
    """A^2 - (a-c)A - (k-c)I == cJ, in exact integer arithmetic."""
    if detect_srg(g) != params:
        raise ValueError("graph is not strongly regular with the given parameters")
    a = g.adjacency()
    n = g.n
    lhs = a @ a - (params.a - params.c) * a - (params.k - params.c) * np.eye(n, dtype=np.int64)
    return bool(np.array_equal(lhs, params.c * np.ones((n, n), dtype=np.int64)))


@dataclass(frozen=True)
class PairQuotient:
    matrix: tuple[tuple[int, int], tuple[int, int]]
    eigenvalues: tuple[QSurd, QSurd]  # larger first


def pair_partition_quotient(params: SrgParams) -> PairQuotient:
    """Quotient of X^{2} by the adjacent/non-adjacent pair partition.

    Eigenvalues are k + δ ± sqrt((k - δ)^2 - 4c) with δ = a - c.
    """
    k, a, c = params.k, params.a, params.c
    b = ((2 * a, 2 * k - 2 * a - 2), (2 * c, 2 * k - 2 * c))
    delta = a - c
    disc = (k - delta) ** 2 - 4 * c
    return PairQuotient(b, (QSurd(k + delta, 1, disc), QSurd(k + delta, -1, disc)))


# --------------------------------------------------------------------------
# span{I, A, J}
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BMElement:
    """x*I + y*A + z*J in the algebra of a strongly regular graph."""

    params: SrgParams
    x: QSurd
    y: QSurd
    z: QSurd

    @classmethod
    def of(cls, params, x=0, y=0, z=0) -> "BMElement":
        return cls(params, QSurd.coerce(x), QSurd.coerce(y), QSurd.coerce(z))

    def __add__(self, o: "BMElement"):
        return BMElement(self.params, self.x + o.x, self.y + o.y, self.z + o.z)

    def __sub__(self, o: "BMElement"):
        return BMElement(self.params, self.x - o.x, self.y - o.y, self.z - o.z)

    def scale(self, s) -> "BMElement":
        return BMElement(self.params, self.x * s, self.y * s, self.z * s)

    def __matmul__(self, o: "BMElement") -> "BMElement":
        p = self.params
        # A^2 = (k-c)I + (a-c)A + cJ,  AJ = JA = kJ,  J^2 = vJ
        yy = self.y * o.y
        x = self.x * o.x + yy * (p.k - p.c)
        y = self.x * o.y + self.y * o.x + yy * (p.a - p.c)
        z = (
            self.x * o.z
            + self.z * o.x
            + yy * p.c
            + (self.y * o.z + self.z * o.y) * p.k
            + self.z * o.z * p.v
        )
        return BMElement(p, x, y, z)

    def relation_values(self) -> tuple[QSurd, QSurd, QSurd]:
        """Matrix entry on the diagonal, on edges, on non-edges."""
        return self.x + self.z, self.y + self.z, self.z

    @classmethod
    def from_relation_values(cls, params, diag, adj, non) -> "BMElement":
        return cls.of(params, diag - non, adj - non, non)

    def schur(self, o: "BMElement") -> "BMElement":
        d1, a1, n1 = self.relation_values()
        d2, a2, n2 = o.relation_values()
        return BMElement.from_relation_values(self.params, d1 * d2, a1 * a2, n1 * n2)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def trace(self) -> QSurd:
        return (self.x + self.z) * self.params.v

    def to_matrix(self, g: Graph) -> np.ndarray:
        """Floating-point realization on the adjacency matrix of ``g``."""
        n = g.n
        return float(self.x) * np.eye(n) + float(self.y) * g.adjacency(float) + float(self.z) * np.ones((n, n))


@dataclass(frozen=True)
class SpectralIdempotent:
    theta: QSurd
    multiplicity: int
    element: BMElement

    @property
    def coefficients(self) -> tuple[QSurd, QSurd, QSurd]:
        e = self.element
        return e.x, e.y, e.z


def _as_params(g_or_params) -> SrgParams:
    if isinstance(g_or_params, SrgParams):
        return g_or_params
    params = detect_srg(g_or_params)
    if params is None:
        raise ValueError("graph is not strongly regular")
    return params


def spectral_idempotents(g_or_params) -> list[SpectralIdempotent]:
    """E_θ = Π_{τ≠θ} (A - τI)/(θ - τ) over the distinct eigenvalues."""
    p = _as_params(g_or_params)
    thetas: list[QSurd] = []
    for th in p.eigenvalues():
        if th not in thetas:
            thetas.append(th)
    ident = BMElement.of(p, 1, 0, 0)
    adj = BMElement.of(p, 0, 1, 0)
    out = []
    for th in thetas:
        e = ident
        for tau in thetas:
            if tau != th:
                e = (e @ (adj - ident.scale(tau))).scale(1 / (th - tau))
        mult = e.trace()
        if not mult.is_rational() or mult.a.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {mult} for eigenvalue {th}")
        out.append(SpectralIdempotent(th, int(mult.a), e))
    return out


def _scalar_ratio(m: BMElement, e: BMElement) -> QSurd | None:
    """q with m == q*e, or None if m is not a multiple of e."""
    for num, den in ((m.x, e.x), (m.y, e.y), (m.z, e.z)):
        if den != 0:
            q = num / den
            return q if (e.scale(q) - m).is_zero() else None
    return QSurd(0) if m.is_zero() else None


def krein_expansion(
    e1: SpectralIdempotent, e2: SpectralIdempotent, basis: Sequence[SpectralIdempotent]
) -> list[QSurd]:
    """Coefficients q_σ with E_θ ∘ E_τ = Σ_σ q_σ E_σ (Krein parameters / v)."""
    m = e1.element.schur(e2.element)
    coeffs = []
    for es in basis:
        q = _scalar_ratio(m @ es.element, es.element)
        if q is None:
            raise ArithmeticError("Schur product is not in the span of the idempotents")
        coeffs.append(q)
    total = BMElement.of(m.params)
    for q, es in zip(coeffs, basis):
        total = total + es.element.scale(q)
    if not (total - m).is_zero():
        raise ArithmeticError("Schur product is not in the span of the idempotents")
    return coeffs


def krein_table(g_or_params) -> dict[tuple[int, int], list[QSurd]]:
    idem = spectral_idempotents(g_or_params)
    return {(i, j): krein_expansion(ei, ej, idem) for i, ei in enumerate(idem) for j, ej in enumerate(idem)}


def diag_walk_check(g: Graph, order: int) -> bool:
    """Walks between diagonal vertices of X □ X agree with
    Σ_{θ,τ} (θ+τ)^r E_θ ∘ E_τ for every r <= order."""
    p = _as_params(g)
    n = g.n
    idem = spectral_idempotents(p)
    square = cartesian_product(g, g).adjacency(object)
    diag = [i * n + i for i in range(n)]
    walks = np.eye(n * n, dtype=object)[:, diag]
    schur = {(i, j): ei.element.schur(ej.element) for i, ei in enumerate(idem) for j, ej in enumerate(idem)}
    for r in range(order + 1):
        if r > 0:
            walks = square.dot(walks)
        expected = BMElement.of(p)
        for (i, j), s in schur.items():
            expected = expected + s.scale((idem[i].theta + idem[j].theta) ** r)
        dv, av, nv = expected.relation_values()
        block = walks[diag, :]
        for u in range(n):
            for w in range(n):
                want = dv if u == w else (av if g.adj[u, w] else nv)
                if want != int(block[u, w]):
                    return False
    return True


# --------------------------------------------------------------------------
# equitable partitions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EquitablePartition:
    cells: tuple[tuple[int, ...], ...]
    quotient: np.ndarray

    def characteristic_matrix(self, n: int) -> np.ndarray:
        return characteristic_matrix(n, self.cells)


def equitable_refine(g: Graph, seed: Sequence[Sequence[int]]) -> EquitablePartition:
    """Coarsest equitable partition refining ``seed``.

    Each round splits every cell by the vector of neighbour counts into the
    current cells; the pieces of a cell keep its position and are ordered
    by decreasing count vector.
    """
    cells = [tuple(sorted(c)) for c in seed if len(c)]
    if sorted(x for c in cells for x in c) != list(range(g.n)):
        raise ValueError("seed does not partition the vertex set")
    a = g.adjacency()
    while True:
        r = characteristic_matrix(g.n, cells)
        counts = a @ r
        new_cells: list[tuple[int, ...]] = []
        for cell in cells:
            groups: dict[tuple[int, ...], list[int]] = {}
            for u in cell:
                groups.setdefault(tuple(counts[u].tolist()), []).append(u)
            for sig in sorted(groups, reverse=True):
                new_cells.append(tuple(groups[sig]))
        if len(new_cells) == len(cells):
            return EquitablePartition(tuple(cells), quotient_matrix(a, cells))
        cells = new_cells


def valency_partition(g: Graph) -> list[tuple[int, ...]]:
    """Vertices grouped by degree, in increasing degree order."""
    deg = g.degrees()
    return [tuple(np.flatnonzero(deg == d).tolist()) for d in sorted(set(deg.tolist()))]


def distance_partition(g: Graph, u: int) -> list[tuple[int, ...]]:
    from .graphcore import distances

    dist = distances(g, u)
    levels = sorted(set(dist) - {-1})
    cells = [tuple(x for x in range(g.n) if dist[x] == d) for d in levels]
    if -1 in dist:
        cells.append(tuple(x for x in range(g.n) if dist[x] == -1))
    return cells


def quotient_walk_check(g: Graph, cells: Sequence[Sequence[int]], k: int) -> bool:
    """(B^j)_{rs} equals the walks of length j from any vertex of cell r
    into cell s, for all j <= k; also AR == RB."""
    a = g.adjacency(object)
    b = quotient_matrix(g.adjacency(), cells).astype(object)
    r = characteristic_matrix(g.n, cells).astype(object)
    if not np.array_equal(a.dot(r), r.dot(b)):
        return False
    walks = r.copy()  # A^j R
    bj = np.eye(len(cells), dtype=object)
    for j in range(k + 1):
        if j > 0:
            walks = a.dot(walks)
            bj = bj.dot(b)
        for ri, cell in enumerate(cells):
            for u in cell:
                if not np.array_equal(walks[u], bj[ri]):
                    return False
    return True


def one_sum_row(g: Graph) -> tuple[int, int]:
    """Cell sizes of the valency partition of X^{2}: (adjacent pairs, non-adjacent pairs)."""
    p = _as_params(g)
    sq = symmetric_power_subsets(g, 2)
    deg = sq.degrees()
    # a pair {u, w} has valency 2k - 2 when u ~ w and 2k otherwise
    return int((deg == 2 * p.k - 2).sum()), int((deg == 2 * p.k).sum())


def one_sum_row_check(g: Graph) -> bool:
    p = _as_params(g)
    expected = (Fraction(p.v * p.k, 2), Fraction(p.v * (p.v - 1 - p.k), 2))
    return one_sum_row(g) == expected
