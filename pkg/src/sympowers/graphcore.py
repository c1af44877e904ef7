"""Simple undirected graphs, standard generators, graph6 I/O and graph products."""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

MAX_VERTICES = 10000


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    The adjacency matrix is stored as a read-only boolean array; equality
    and hashing are on the labeled graph, not its isomorphism class.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, adj):
        a = np.array(adj, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] > MAX_VERTICES:
            raise ValueError(f"at most {MAX_VERTICES} vertices supported")
        if a.diagonal().any():
            raise ValueError("loops are not allowed")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        a.flags.writeable = False
        self.n = a.shape[0]
        self.adj = a
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            a[u, v] = a[v, u] = True
        return cls(a)

    def edges(self) -> list[tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self.adj, 1))
        return list(zip(iu.tolist(), ju.tolist()))

    @property
    def num_edges(self) -> int:
        return int(self.adj.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def neighbors(self, u: int) -> list[int]:
        return np.flatnonzero(self.adj[u]).tolist()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def adjacency(self, dtype=np.int64) -> np.ndarray:
        """Writable adjacency matrix copy with the requested dtype."""
        return self.adj.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, np.packbits(self.adj).tobytes()))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


# --------------------------------------------------------------------------
# graph6
# --------------------------------------------------------------------------


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def write_graph6(g: Graph) -> str:
    """Encode ``g`` as a graph6 line (no header, no newline)."""
    n = g.n
    # column order: x(0,1), x(0,2), x(1,2), x(0,3), ...
    iu, ju = np.triu_indices(n, 1)
    order = np.lexsort((iu, ju))
    bits = g.adj[iu[order], ju[order]].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    values = bits @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return (_encode_n(n) + bytes((values + 63).tolist())).decode("ascii")


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 string.

    Accepts an optional ``>>graph6<<`` header and a trailing newline.
    Raises :class:`Graph6Error` carrying the offending byte offset.
    """
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    start = 0
    if data.startswith(b">>graph6<<"):
        start = 10
    data = data.rstrip(b"\r\n")
    if len(data) <= start:
        raise Graph6Error("empty graph6 string", start)
    for i in range(start, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"non-printable or out-of-range byte {data[i]!r}", i)

    pos = start
    if data[pos] != 126:
        n = data[pos] - 63
        pos += 1
    elif len(data) > pos + 1 and data[pos + 1] == 126:
        if len(data) < pos + 8:
            raise Graph6Error("truncated 8-byte length header", len(data))
        n = 0
        for b in data[pos + 2 : pos + 8]:
            n = (n << 6) | (b - 63)
        pos += 8
        if n <= 258047:
            raise Graph6Error("non-canonical 8-byte length header", start)
    else:
        if len(data) < pos + 4:
            raise Graph6Error("truncated 4-byte length header", len(data))
        n = 0
        for b in data[pos + 1 : pos + 4]:
            n = (n << 6) | (b - 63)
        pos += 4
        if n < 63:
            raise Graph6Error("non-canonical 4-byte length header", start)
    if n > MAX_VERTICES:
        raise Graph6Error(f"graph too large ({n} vertices)", start)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise Graph6Error("truncated edge data", len(data))
    if len(body) > nbytes:
        raise Graph6Error("trailing garbage", pos + nbytes)

    raw = np.frombuffer(body, dtype=np.uint8) - 63
    bits = np.unpackbits(raw.reshape(-1, 1), axis=1)[:, 2:].ravel()
    if bits[nbits:].any():
        raise Graph6Error("non-zero padding bits", len(data) - 1)
    iu, ju = np.triu_indices(n, 1)
    order = np.lexsort((iu, ju))
    a = np.zeros((n, n), dtype=bool)
    a[iu[order], ju[order]] = bits[:nbits].astype(bool)
    return Graph(a | a.T)


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    return [parse_graph6(line) for line in lines if line.strip()]


def to_adjacency_list(g: Graph) -> str:
    """Debug format: ``n`` on the first line, then ``u: v1 v2 ...`` per vertex."""
    out = [str(g.n)]
    for u in range(g.n):
        out.append(f"{u}: " + " ".join(map(str, g.neighbors(u))))
    return "\n".join(out)


def from_adjacency_list(text: str) -> Graph:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        head, _, tail = ln.partition(":")
        u = int(head)
        edges.extend((u, int(v)) for v in tail.split())
    return Graph.from_edges(n, edges)


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def complement(g: Graph) -> Graph:
    a = ~g.adj
    np.fill_diagonal(a, False)
    return Graph(a)


def vertex_set(n: int, vertices: Iterable[int]) -> tuple[int, ...]:
    """Validate and sort a vertex subset of ``range(n)``."""
    vs = tuple(sorted(set(int(v) for v in vertices)))
    if vs and (vs[0] < 0 or vs[-1] >= n):
        raise IndexError(f"vertex out of range for graph on {n} vertices: {vs}")
    return vs


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    vs = list(vertices)
    return Graph(g.adj[np.ix_(vs, vs)])


def delete_vertices(g: Graph, deleted: Iterable[int]) -> Graph:
    """Induced subgraph on the remaining vertices, order preserved."""
    d = set(vertex_set(g.n, deleted))
    return induced_subgraph(g, [u for u in range(g.n) if u not in d])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    a = np.zeros((g.n + h.n, g.n + h.n), dtype=bool)
    a[: g.n, : g.n] = g.adj
    a[g.n :, g.n :] = h.adj
    return Graph(a)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Vertex ``(i, j)`` has index ``i * h.n + j``."""
    a = np.kron(g.adj, np.eye(h.n, dtype=bool)) | np.kron(np.eye(g.n, dtype=bool), h.adj)
    return Graph(a)


def direct_product(g: Graph, h: Graph) -> Graph:
    return Graph(np.kron(g.adj, h.adj))


def line_graph(g: Graph) -> Graph:
    edges = g.edges()
    m = len(edges)
    a = np.zeros((m, m), dtype=bool)
    for x, y in combinations(range(m), 2):
        if set(edges[x]) & set(edges[y]):
            a[x, y] = a[y, x] = True
    return Graph(a)


def distances(g: Graph, source: int) -> list[int]:
    """BFS distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------


def empty(n: int) -> Graph:
    return Graph(np.zeros((n, n), dtype=bool))


def complete(n: int) -> Graph:
    return complement(empty(n))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """K_{1,n}: centre 0 joined to leaves 1..n."""
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def rook4() -> Graph:
    """The 4x4 rook's graph K_4 □ K_4, an SRG(16,6,2,2)."""
    return cartesian_product(complete(4), complete(4))


def cayley_graph_z4z4(connection: Iterable[tuple[int, int]]) -> Graph:
    conn = {(a % 4, b % 4) for a, b in connection}
    if (0, 0) in conn or any(((-a) % 4, (-b) % 4) not in conn for a, b in conn):
        raise ValueError("connection set must be inverse-closed and avoid 0")
    edges = []
    for x in range(16):
        a, b = divmod(x, 4)
        for da, db in conn:
            y = 4 * ((a + da) % 4) + (b + db) % 4
            if x < y:
                edges.append((x, y))
    return Graph.from_edges(16, edges)


def shrikhande() -> Graph:
    """Cayley graph on Z_4 x Z_4 with connection set ±{(1,0),(0,1),(1,1)}."""
    base = [(1, 0), (0, 1), (1, 1)]
    return cayley_graph_z4z4(base + [(-a, -b) for a, b in base])


# --------------------------------------------------------------------------
# partitions
# --------------------------------------------------------------------------


def characteristic_matrix(n: int, cells: Sequence[Sequence[int]], normalized: bool = False) -> np.ndarray:
    """Columns are the indicator vectors of ``cells`` (optionally unit length)."""
    r = np.zeros((n, len(cells)), dtype=float if normalized else np.int64)
    for j, cell in enumerate(cells):
        r[list(cell), j] = 1.0 / np.sqrt(len(cell)) if normalized else 1
    return r


def quotient_matrix(adj: np.ndarray, cells: Sequence[Sequence[int]], check: bool = True) -> np.ndarray:
    """``b[i, j]`` = number of neighbours in cell j of a vertex of cell i.

    With ``check`` every vertex of a cell must give the same counts, i.e.
    the partition must be equitable; otherwise ``ValueError``.
    """
    a = sp.csr_matrix(np.asarray(adj, dtype=np.int64))
    r = sp.csr_matrix(characteristic_matrix(a.shape[0], cells))
    counts = (a @ r).toarray()  # vertex x cell
    b = np.zeros((len(cells), len(cells)), dtype=np.int64)
    for i, cell in enumerate(cells):
        rows = counts[list(cell)]
        if check and not (rows == rows[0]).all():
            raise ValueError(f"partition is not equitable at cell {i}")
        b[i] = rows[0]
    return b
