"""Heuristic search for non-isomorphic graphs with cospectral symmetric squares.

Candidates are produced by random local mutations, bucketed by a modular
fingerprint, and every fingerprint collision is re-checked exactly before
a record is written.
"""
from __future__ import annotations

import hashlib
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from ..exactalg import DEFAULT_PRIME, IntPoly, charpoly_exact, charpoly_mod
from ..graphcore import Graph, complement, delete_vertices, parse_graph6, write_graph6
from ..sympower import symmetric_power_subsets
from ..walkspec import cospectral, pair_deck, vertex_deck
from .iso import nonisomorphism_witness

MUTATIONS = ("edge-swap", "vertex-delete", "edge-delete", "edge-add", "one-factor-toggle")


def square(g: Graph) -> Graph:
    """Symmetric square; graphs with fewer than two vertices give the empty graph."""
    if g.n < 2:
        return Graph(np.zeros((0, 0), dtype=bool))
    return symmetric_power_subsets(g, 2)


def square_charpoly(g: Graph) -> IntPoly:
    return charpoly_exact(square(g).adjacency())


# --------------------------------------------------------------------------
# fingerprints
# --------------------------------------------------------------------------


def _digest(parts: Iterable) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(repr(part).encode())
        h.update(b"|")
    return h.hexdigest()


def fingerprint(g: Graph, primes: tuple[int, ...] = (DEFAULT_PRIME,)) -> str:
    """Hash of the charpolys of g and of its square, reduced mod each prime."""
    a, s = g.adjacency(), square(g).adjacency()
    parts = []
    for p in primes:
        parts.append(charpoly_mod(a, p, check_prime=False).coeffs)
        parts.append(charpoly_mod(s, p, check_prime=False).coeffs)
    return _digest([g.n, *parts])


def square_fingerprint(g: Graph, p: int = DEFAULT_PRIME) -> str:
    """Hash of the charpoly of the square alone, mod p."""
    return _digest([charpoly_mod(square(g).adjacency(), p, check_prime=False).coeffs])


# --------------------------------------------------------------------------
# mutations
# --------------------------------------------------------------------------


def _swap_candidates(g: Graph) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Degree-preserving swaps {ab, cd} -> {ad, cb} that keep the graph simple."""
    edges = g.edges()
    out = []
    for x in range(len(edges)):
        for y in range(x + 1, len(edges)):
            a, b = edges[x]
            for c, d in (edges[y], edges[y][::-1]):
                if len({a, b, c, d}) == 4 and not g.adj[a, d] and not g.adj[c, b]:
                    out.append(((a, b), (c, d)))
    return out


def perfect_matching(g: Graph, rng: random.Random) -> list[tuple[int, int]] | None:
    """A random perfect matching of g, or None if there is none."""
    if g.n % 2:
        return None
    nbrs = [g.neighbors(u) for u in range(g.n)]
    for nb in nbrs:
        rng.shuffle(nb)

    @lru_cache(maxsize=None)
    def match(free: int) -> tuple[tuple[int, int], ...] | None:
        if not free:
            return ()
        u = (free & -free).bit_length() - 1
        for w in nbrs[u]:
            if free >> w & 1:
                rest = match(free & ~(1 << u) & ~(1 << w))
                if rest is not None:
                    return ((u, w),) + rest
        return None

    found = match((1 << g.n) - 1)
    return list(found) if found is not None else None


def mutate(g: Graph, op: str, rng: random.Random) -> Graph | None:
    """One random mutation of g, or None if ``op`` does not apply to g."""
    a = g.adjacency(bool)
    if op == "edge-swap":
        swaps = _swap_candidates(g)
        if not swaps:
            return None
        (x, y), (u, v) = swaps[rng.randrange(len(swaps))]
        a[x, y] = a[y, x] = a[u, v] = a[v, u] = False
        a[x, v] = a[v, x] = a[u, y] = a[y, u] = True
        return Graph(a)
    if op == "vertex-delete":
        if g.n == 0:
            return None
        return delete_vertices(g, [rng.randrange(g.n)])
    if op == "edge-delete":
        edges = g.edges()
        if not edges:
            return None
        u, v = edges[rng.randrange(len(edges))]
        a[u, v] = a[v, u] = False
        return Graph(a)
    if op == "edge-add":
        non_edges = complement(g).edges()
        if not non_edges:
            return None
        u, v = non_edges[rng.randrange(len(non_edges))]
        a[u, v] = a[v, u] = True
        return Graph(a)
    if op == "one-factor-toggle":
        m = perfect_matching(g, rng)
        if m is not None:
            value = False
        else:
            m = perfect_matching(complement(g), rng)
            value = True
        if m is None:
            return None
        for u, v in m:
            a[u, v] = a[v, u] = value
        return Graph(a)
    raise ValueError(f"unknown mutation {op!r}")


# --------------------------------------------------------------------------
# property report
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyFlags:
    cospectral_with_complements: bool
    complement_squares_cospectral: bool
    square_complements_cospectral: bool
    vertex_decks_equal: bool
    pair_decks_equal: bool

    def as_letters(self) -> dict[str, bool]:
        return dict(zip("abcde", asdict(self).values()))

    def all(self) -> bool:
        return all(asdict(self).values())


def property_report(x: Graph, y: Graph) -> PropertyFlags:
    """Exact evaluation of the five companion properties of a pair whose
    squares are cospectral."""
    sx, sy = square(x), square(y)
    if not cospectral(sx, sy):
        raise ValueError("the squares of the two graphs are not cospectral")
    cx, cy = complement(x), complement(y)
    return PropertyFlags(
        cospectral(x, y) and cospectral(cx, cy),
        cospectral(square(cx), square(cy)),
        cospectral(complement(sx), complement(sy)),
        vertex_deck(x) == vertex_deck(y),
        pair_deck(x) == pair_deck(y),
    )


# --------------------------------------------------------------------------
# records and store
# --------------------------------------------------------------------------


@dataclass
class PairRecord:
    x: str
    y: str
    square_charpoly: str
    flags: dict[str, bool]
    witness: str
    step: int
    timestamp: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "PairRecord":
        return cls(**json.loads(line))

    def verify(self) -> bool:
        gx, gy = parse_graph6(self.x), parse_graph6(self.y)
        px = square_charpoly(gx)
        return (
            px == square_charpoly(gy)
            and px.to_text() == self.square_charpoly
            and nonisomorphism_witness(gx, gy) is not None
        )


def append_record(path: str | Path, record: PairRecord) -> None:
    with open(path, "a", encoding="ascii") as fh:
        fh.write(record.to_json() + "\n")


def load_store(path: str | Path, verify: bool = True) -> list[PairRecord]:
    records = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            rec = PairRecord.from_json(line)
            if verify and not rec.verify():
                raise ValueError(f"record on line {lineno} does not re-verify")
            records.append(rec)
    return records


# --------------------------------------------------------------------------
# search
# --------------------------------------------------------------------------


@dataclass
class SearchConfig:
    seeds: list[str]
    budget: int = 0
    weights: dict[str, float] = field(default_factory=lambda: {op: 1.0 for op in MUTATIONS})
    primes: tuple[int, ...] = (DEFAULT_PRIME,)
    seed: int = 0
    workers: int = 1
    batch_size: int = 16
    min_vertices: int = 2
    record_time: bool = False

    def __post_init__(self):
        unknown = set(self.weights) - set(MUTATIONS)
        if unknown:
            raise ValueError(f"unknown mutations {sorted(unknown)}")
        if any(w < 0 for w in self.weights.values()) or not any(w > 0 for w in self.weights.values()):
            raise ValueError("weights must be non-negative with at least one positive")
        if self.budget < 0 or self.workers < 1 or self.batch_size < 1:
            raise ValueError("budget must be >= 0, workers and batch_size >= 1")
        self.primes = tuple(self.primes)

    @classmethod
    def from_file(cls, path: str | Path) -> "SearchConfig":
        return cls(**json.loads(Path(path).read_text()))


def _fingerprint_job(args) -> str:
    g6, primes = args
    return fingerprint(parse_graph6(g6), primes)


class _Searcher:
    def __init__(self, config: SearchConfig):
        self.config = config
        self.rng = random.Random(config.seed)
        self.pool: list[Graph] = []
        self.buckets: dict[str, list[Graph]] = {}
        self.exact: dict[str, IntPoly] = {}
        self.step = 0

    def _square_poly(self, g: Graph) -> IntPoly:
        key = write_graph6(g)
        if key not in self.exact:
            self.exact[key] = square_charpoly(g)
        return self.exact[key]

    def fingerprints(self, graphs: list[Graph], executor) -> list[str]:
        jobs = [(write_graph6(g), self.config.primes) for g in graphs]
        if executor is None:
            return [_fingerprint_job(j) for j in jobs]
        return list(executor.map(_fingerprint_job, jobs))

    def admit(self, g: Graph, fp: str) -> Iterator[PairRecord]:
        self.step += 1
        bucket = self.buckets.setdefault(fp, [])
        witnesses = []
        for h in bucket:
            w = nonisomorphism_witness(h, g)
            if w is None:
                return
            witnesses.append(w)
        for h, w in zip(list(bucket), witnesses):
            poly = self._square_poly(g)
            if poly != self._square_poly(h):
                continue
            flags = property_report(h, g).as_letters()
            yield PairRecord(
                write_graph6(h),
                write_graph6(g),
                poly.to_text(),
                flags,
                w,
                self.step,
                time.time() if self.config.record_time else None,
            )
        bucket.append(g)
        self.pool.append(g)

    def candidates(self, count: int) -> list[Graph]:
        ops = [op for op in MUTATIONS if self.config.weights.get(op, 0) > 0]
        weights = [self.config.weights[op] for op in ops]
        out = []
        for _ in range(count):
            parent = self.pool[self.rng.randrange(len(self.pool))]
            op = self.rng.choices(ops, weights)[0]
            child = mutate(parent, op, self.rng)
            if child is not None and child.n >= self.config.min_vertices:
                out.append(child)
        return out


def search(config: SearchConfig, store: str | Path | None = None) -> Iterator[PairRecord]:
    """Yield verified pairs in a deterministic order, appending each to ``store``.

    Candidates are generated in fixed-size batches from one random stream
    and only their fingerprints are computed in parallel, so the output
    does not depend on the worker count.
    """
    s = _Searcher(config)
    executor = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        seeds = [parse_graph6(x) for x in config.seeds]
        batches = [seeds]
        remaining = config.budget
        while batches:
            graphs = batches.pop()
            for g, fp in zip(graphs, s.fingerprints(graphs, executor)):
                for rec in s.admit(g, fp):
                    if store is not None:
                        append_record(store, rec)
                    yield rec
            if remaining > 0 and s.pool:
                count = min(remaining, config.batch_size)
                remaining -= count
                batches.append(s.candidates(count))
    finally:
        if executor is not None:
            executor.shutdown()


def exhaustive_square_collisions(graphs: Iterable[Graph], p: int = DEFAULT_PRIME) -> list[tuple[Graph, Graph]]:
    """All non-isomorphic pairs among ``graphs`` (one per isomorphism class)
    whose squares are cospectral, found by modular bucketing then exact checks.

    Graphs on fewer than two vertices have no square and are skipped.
    """
    buckets: dict[str, list[Graph]] = {}
    for g in graphs:
        if g.n >= 2:
            buckets.setdefault(square_fingerprint(g, p), []).append(g)
    found = []
    for bucket in buckets.values():
        if len(bucket) < 2:
            continue
        polys = [square_charpoly(g) for g in bucket]
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                if polys[i] == polys[j] and nonisomorphism_witness(bucket[i], bucket[j]) is not None:
                    found.append((bucket[i], bucket[j]))
    return found
