"""The acceptance battery: thirteen end-to-end checks with fixed tolerances.

Each check returns a :class:`CriterionResult`; ``run_all`` runs them in
order. Random inputs come from fixed seeds so results are reproducible.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import graphcore as gc
from .exactalg import charpoly_exact, spectra_close, symmetric_eigenvalues
from .graphcore import Graph
from .harness.certify import certify_distinct
from .harness.enumerate import KNOWN_COUNTS, graphs_by_order
from .harness.search import exhaustive_square_collisions, property_report
from .omegamap import (
    eig_bound_check,
    exchange_hamiltonian,
    hermitian_bound_check,
    omega,
    projector_compression,
    sector_block,
    selector_expansion_check,
    selector_gram_check,
    sharpness_witness,
    trace_identity_check,
)
from .srgtools import diag_walk_check, distance_partition, equitable_refine, quotient_walk_check, valency_partition
from .sympower import (
    cyclic_cube_analog,
    direct_square_analog,
    flip_quotient_combinatorial,
    flip_quotient_full,
    predicted_quotient_spectrum,
    selector_power,
    symmetric_power_quotient,
    symmetric_power_subsets,
)
from .walkspec import cospectral, minor_identity_check, offdiagonal_square_check

SPECTRAL_TOL = 1e-7
BOUND_TOL = 1e-9


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _random_graph(n: int, rng: np.random.Generator, p: float | None = None) -> Graph:
    p = rng.uniform(0.2, 0.8) if p is None else p
    a = np.triu(rng.random((n, n)) < p, 1)
    return Graph(a | a.T)


def _labeled_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for b, e in enumerate(pairs) if mask >> b & 1])


def _star_pair() -> tuple[Graph, Graph]:
    return gc.star(4), gc.disjoint_union(gc.cycle(4), gc.empty(1))


def _cut_square(g: Graph) -> Graph:
    sq = gc.cartesian_product(g, g)
    return gc.delete_vertices(sq, [i * g.n + i for i in range(g.n)])


# --------------------------------------------------------------------------
# criteria
# --------------------------------------------------------------------------


def squares_cospectral() -> tuple[bool, str]:
    px = charpoly_exact(symmetric_power_subsets(gc.shrikhande(), 2).adjacency())
    py = charpoly_exact(symmetric_power_subsets(gc.rook4(), 2).adjacency())
    return px == py, f"degree {px.degree} charpolys {'identical' if px == py else 'differ'}"


def cubes_distinguished() -> tuple[bool, str]:
    a = symmetric_power_subsets(gc.shrikhande(), 3).adjacency()
    b = symmetric_power_subsets(gc.rook4(), 3).adjacency()
    cert = certify_distinct(a, b, trials=20, rng=random.Random(20))
    if cert is None:
        return False, "inconclusive after 20 probes"
    return cert.verify(a, b), f"{a.shape[0]}x{a.shape[0]} certificate p={cert.p} alpha={cert.alpha}"


def no_small_pairs(max_n: int = 8) -> tuple[bool, str]:
    levels = graphs_by_order(max_n)
    counts = [len(lv) for lv in levels]
    if counts != list(KNOWN_COUNTS[: max_n + 1]):
        return False, f"class counts {counts} are wrong"
    found = exhaustive_square_collisions(g for lv in levels for g in lv)
    detail = f"{sum(counts)} graphs on <= {max_n} vertices, {len(found)} pairs with cospectral squares"
    if found:
        pairs = "; ".join(
            f"{gc.write_graph6(x)}/{gc.write_graph6(y)} connected={_connected(x) and _connected(y)} "
            f"cospectral={cospectral(x, y)}"
            for x, y in found
        )
        detail += f" [{pairs}]"
    return not found, detail


def _connected(g: Graph) -> bool:
    return g.n == 0 or min(gc.distances(g, 0)) >= 0


def companion_properties() -> tuple[bool, str]:
    flags = property_report(gc.shrikhande(), gc.rook4()).as_letters()
    return all(flags.values()), " ".join(f"{k}={v}" for k, v in flags.items())


def cut_squares_cospectral() -> tuple[bool, str]:
    px = charpoly_exact(_cut_square(gc.shrikhande()).adjacency())
    py = charpoly_exact(_cut_square(gc.rook4()).adjacency())
    return px == py, f"degree {px.degree} charpolys {'identical' if px == py else 'differ'}"


def square_complements_cospectral() -> tuple[bool, str]:
    cx = gc.complement(symmetric_power_subsets(gc.shrikhande(), 2))
    cy = gc.complement(symmetric_power_subsets(gc.rook4(), 2))
    ok = cospectral(cx, cy)
    return ok, f"complements of the {cx.n}-vertex squares {'are' if ok else 'are not'} cospectral"


def flip_quotient_transfer() -> tuple[bool, str]:
    x, y = _star_pair()
    cx, cy = flip_quotient_full(x), flip_quotient_full(y)
    close = spectra_close(symmetric_eigenvalues(cx).values, symmetric_eigenvalues(cy).values, SPECTRAL_TOL)
    exact = charpoly_exact(flip_quotient_combinatorial(x)) == charpoly_exact(flip_quotient_combinatorial(y))
    return close and exact, f"floating spectra agree={close}, integer quotient charpolys equal={exact}"


def construction_equivalence() -> tuple[bool, str]:
    checked = 0
    for n in range(2, 7):
        for g in _labeled_graphs(n):
            s = symmetric_power_subsets(g, 2)
            if s != symmetric_power_quotient(g) or not np.array_equal(s.adjacency(), selector_power(g, 2)):
                return False, f"mismatch on {gc.write_graph6(g)}"
            checked += 1
    rng = np.random.default_rng(8)
    for _ in range(300):
        g = _random_graph(int(rng.integers(2, 11)), rng)
        s = symmetric_power_subsets(g, 2)
        if s != symmetric_power_quotient(g) or not np.array_equal(s.adjacency(), selector_power(g, 2)):
            return False, f"mismatch on {gc.write_graph6(g)}"
    cubes = 0
    for n in range(3, 6):
        for g in _labeled_graphs(n):
            if not np.array_equal(symmetric_power_subsets(g, 3).adjacency(), selector_power(g, 3)):
                return False, f"k=3 mismatch on {gc.write_graph6(g)}"
            cubes += 1
    return True, f"{checked} labeled graphs n <= 6, 300 random n <= 10, {cubes} cubes n <= 5"


def identity_suites() -> tuple[bool, str]:
    rng = np.random.default_rng(9)
    pyrng = random.Random(9)
    failures = []
    for _ in range(100):
        g = _random_graph(int(rng.integers(2, 9)), rng)
        d = pyrng.sample(range(g.n), pyrng.randint(1, min(3, g.n)))
        i, j = pyrng.sample(range(g.n), 2)
        if not minor_identity_check(g, d):
            failures.append(f"minor {gc.write_graph6(g)} {d}")
        if not offdiagonal_square_check(g, i, j):
            failures.append(f"cofactor {gc.write_graph6(g)} {i},{j}")
    for name in ("petersen", "shrikhande", "rook4"):
        if not diag_walk_check(getattr(gc, name)(), 8):
            failures.append(f"diagonal walks {name}")
    partitions = [
        (gc.petersen(), distance_partition(gc.petersen(), 0)),
        (gc.shrikhande(), distance_partition(gc.shrikhande(), 0)),
        (gc.star(4), valency_partition(gc.star(4))),
        (gc.petersen(), equitable_refine(gc.petersen(), [[0], [1, 4], [2, 3, 5, 6, 7, 8, 9]]).cells),
        (gc.path(7), equitable_refine(gc.path(7), [list(range(7))]).cells),
    ]
    for g, cells in partitions:
        if not quotient_walk_check(g, cells, 8):
            failures.append(f"quotient walks {gc.write_graph6(g)}")
    for v in range(3, 9):
        if not (selector_gram_check(v) and selector_expansion_check(v)):
            failures.append(f"selector identities v={v}")
    for _ in range(100):
        v = int(rng.integers(2, 11))
        m = rng.integers(-20, 21, (v, v))
        if not trace_identity_check(m + m.T):
            failures.append(f"trace v={v}")
    spectra = 0
    for n in range(2, 6):
        for g in _labeled_graphs(n):
            got = symmetric_eigenvalues(flip_quotient_full(g)).values
            if not spectra_close(got, predicted_quotient_spectrum(g), SPECTRAL_TOL):
                failures.append(f"quotient spectrum {gc.write_graph6(g)}")
            spectra += 1
    if failures:
        return False, f"{len(failures)} failures, first: {failures[0]}"
    return True, f"all suites pass ({spectra} quotient spectra)"


def _random_psd(v: int, rng: np.random.Generator, kind: int) -> np.ndarray:
    if kind == 0:
        a = _random_graph(v, rng).adjacency(float)
        return np.diag(a.sum(axis=1)) - a
    if kind == 1:
        x = rng.standard_normal((v, int(rng.integers(1, v + 1))))
        return x @ x.T
    q, _ = np.linalg.qr(rng.standard_normal((v, v)))
    q = q[:, : int(rng.integers(1, v + 1))]
    return q @ q.T


def eigenvalue_bounds() -> tuple[bool, str]:
    rng = np.random.default_rng(10)
    psd_ok = sum(eig_bound_check(_random_psd(int(rng.integers(2, 13)), rng, i % 3), BOUND_TOL) for i in range(200))
    nonneg_ok = 0
    for _ in range(200):
        v = int(rng.integers(2, 13))
        x = rng.random((v, int(rng.integers(1, v + 1))))
        nonneg_ok += eig_bound_check(x @ x.T, BOUND_TOL)
    herm_ok = 0
    for _ in range(200):
        v = int(rng.integers(2, 13))
        m = rng.standard_normal((v, v))
        herm_ok += hermitian_bound_check(m + m.T, BOUND_TOL)
    pyrng = np.random.default_rng(11)
    sharp = []
    for v in range(2, 9):
        for m in range(1, min(v, math.comb(v, 2)) + 1):
            lg, lo = sharpness_witness(v, m, pyrng)
            sharp.append(abs(lg - 1) < 1e-9 and 1 - BOUND_TOL <= lo <= 2 + BOUND_TOL)
    ok = psd_ok == 200 and nonneg_ok == 200 and herm_ok == 200 and all(sharp)
    detail = (
        f"PSD {psd_ok}/200, non-negative PSD {nonneg_ok}/200, "
        f"two-sided bounds {herm_ok}/200, sharpness {sum(sharp)}/{len(sharp)}"
    )
    return ok, detail


def variation_spectra() -> tuple[bool, str]:
    parts = []
    ok = True
    for name, build in (("direct square", direct_square_analog), ("cyclic cube", cyclic_cube_analog)):
        rx, ry = build(gc.shrikhande()), build(gc.rook4())
        ex = symmetric_eigenvalues(rx.quotient.astype(float)).values
        ey = symmetric_eigenvalues(ry.quotient.astype(float)).values
        agree = spectra_close(ex, ey, SPECTRAL_TOL)
        ok &= agree
        parts.append(f"{name} ({rx.quotient.shape[0]} cells) {'agree' if agree else 'differ'}")
    return ok, ", ".join(parts)


def hamiltonian_sectors() -> tuple[bool, str]:
    checked = 0
    for n, level in enumerate(graphs_by_order(7)):
        for g in level:
            h = exchange_hamiltonian(g)
            for k in range(0, min(3, n) + 1):
                want = symmetric_power_subsets(g, k).adjacency() if k else np.zeros((1, 1), dtype=np.int64)
                if not np.array_equal(sector_block(h, n, k), want):
                    return False, f"sector k={k} differs on {gc.write_graph6(g)}"
                checked += 1
    return True, f"{checked} sectors equal, every graph class n <= 7, k <= 3"


def projector_compressions() -> tuple[bool, str]:
    rng = np.random.default_rng(13)
    agree = 0
    for _ in range(50):
        v = int(rng.integers(3, 7))
        m = rng.standard_normal((v, v))
        g1 = m + m.T
        q, _ = np.linalg.qr(rng.standard_normal((v, v)))
        g2 = q.T @ g1 @ q
        same = all(
            spectra_close(
                symmetric_eigenvalues(projector_compression(g1, w, k)).values,
                symmetric_eigenvalues(projector_compression(g2, w, k)).values,
                SPECTRAL_TOL,
            )
            for w in ("sym", "antisym")
            for k in (2, 3)
            if v**k <= 4096
        )
        agree += same
    x, y = _star_pair()
    omega_differs = charpoly_exact(omega(x.adjacency(), 2)) != charpoly_exact(omega(y.adjacency(), 2))
    ok = agree == 50 and omega_differs
    return ok, f"{agree}/50 pairs cospectral under both projectors, selector compressions differ={omega_differs}"


CRITERIA: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("squares of cospectral SRGs are cospectral", squares_cospectral),
    ("symmetric cubes distinguish the SRG pair", cubes_distinguished),
    ("no small pairs with cospectral squares", no_small_pairs),
    ("companion properties (a)-(e)", companion_properties),
    ("Cartesian squares minus diagonal cospectral", cut_squares_cospectral),
    ("complements of squares cospectral", square_complements_cospectral),
    ("flip quotient spectra transfer", flip_quotient_transfer),
    ("three constructions agree", construction_equivalence),
    ("identity suites", identity_suites),
    ("eigenvalue bounds for the compression map", eigenvalue_bounds),
    ("quotient variations cospectral", variation_spectra),
    ("exchange Hamiltonian sectors", hamiltonian_sectors),
    ("projector compressions", projector_compressions),
]


def run_criterion(number: int) -> CriterionResult:
    name, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # report, never hide, a crash
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - start)


def run_all(numbers=None) -> list[CriterionResult]:
    numbers = numbers or range(1, len(CRITERIA) + 1)
    return [run_criterion(i) for i in numbers]
