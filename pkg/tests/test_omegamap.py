from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import graphs, random_graph
from sympowers import graphcore as gc
from sympowers.exactalg import charpoly_exact, spectra_close, symmetric_eigenvalues
from sympowers.omegamap import (
    antisym_projector,
    antisymmetric_basis,
    build_selector,
    eig_bound_check,
    exchange_hamiltonian,
    exchange_hamiltonian_sector,
    hermitian_bound_check,
    omega,
    projector_compression,
    sector_permutation,
    selector_expansion_check,
    selector_gram_check,
    sharpness_witness,
    sym_projector,
    symmetric_basis,
    trace_averages,
    trace_identity_check,
)
from sympowers.sympower import flip_permutation, symmetric_power_subsets


def test_selector_shape_and_identities():
    p = build_selector(3, 2)
    assert p.shape == (3, 9)
    assert np.array_equal((p @ p.T).toarray(), 2 * np.eye(3))
    for v in range(3, 9):
        assert selector_gram_check(v) and selector_expansion_check(v)
    dense = build_selector(4, 3).toarray()
    for col in range(64):
        t = (col // 16, col // 4 % 4, col % 4)
        if len(set(t)) < 3:
            assert not dense[:, col].any()
    with pytest.raises(ValueError):
        build_selector(3, 4)
    with pytest.raises(OverflowError):
        build_selector(200, 4)


def test_omega_examples():
    for v in range(2, 7):
        assert np.array_equal(omega(np.eye(v, dtype=np.int64), 2), 2 * np.eye(math.comb(v, 2)))
    k3 = gc.complete(3).adjacency()
    assert np.array_equal(omega(k3, 2), k3)
    with pytest.raises(ValueError):
        omega(np.zeros((2, 3)))


@settings(max_examples=50)
@given(st.integers(2, 10).flatmap(lambda v: st.lists(st.integers(-30, 30), min_size=v * v, max_size=v * v)))
def test_trace_identity(entries):
    v = int(round(len(entries) ** 0.5))
    m = np.array(entries, dtype=np.int64).reshape(v, v)
    assert trace_identity_check(m + m.T)


def test_trace_averages_differ_by_factor_two():
    m = np.diag([1, 2, 3, 4])
    avg_g, avg_omega = trace_averages(m)
    assert avg_omega == 2 * avg_g
    assert trace_identity_check(np.zeros((4, 4), dtype=np.int64))


def test_omega_preserves_psd():
    rng = np.random.default_rng(0)
    for _ in range(50):
        v = int(rng.integers(2, 10))
        x = rng.standard_normal((v, int(rng.integers(1, v + 1))))
        assert symmetric_eigenvalues(omega(x @ x.T)).values[-1] >= -1e-8


def test_eig_bound_examples():
    assert eig_bound_check(np.eye(6))
    rng = np.random.default_rng(1)
    for _ in range(30):
        a = random_graph(int(rng.integers(2, 13)), rng).adjacency(float)
        assert eig_bound_check(np.diag(a.sum(axis=1)) - a)
    with pytest.raises(ValueError):
        eig_bound_check(-np.eye(3))


def test_eig_bound_on_nonnegative_and_signed_psd():
    rng = np.random.default_rng(2)
    for nonneg in (True, False):
        for _ in range(30):
            v = int(rng.integers(2, 12))
            x = rng.random((v, 3)) if nonneg else rng.standard_normal((v, 3))
            assert eig_bound_check(x @ x.T)


def test_hermitian_bounds():
    assert hermitian_bound_check(gc.petersen().adjacency(float))
    assert hermitian_bound_check(np.zeros((4, 4)))
    rng = np.random.default_rng(3)
    for _ in range(30):
        m = rng.standard_normal((7, 7))
        assert hermitian_bound_check(m + m.T)


def test_sharpness_witness():
    rng = np.random.default_rng(4)
    for v in range(3, 9):
        for m in range(1, v + 1):
            lg, lo = sharpness_witness(v, m, rng)
            assert abs(lg - 1) < 1e-9
            assert 1 - 1e-9 <= lo <= 2 + 1e-9


def test_projectors():
    f = flip_permutation(3).astype(float)
    assert np.allclose(sym_projector(3, 2), (np.eye(9) + f) / 2)
    assert np.allclose(antisym_projector(3, 2), (np.eye(9) - f) / 2)
    for v, k in ((3, 2), (4, 3)):
        for basis, proj in ((symmetric_basis(v, k), sym_projector), (antisymmetric_basis(v, k), antisym_projector)):
            assert np.allclose(basis.T @ basis, np.eye(basis.shape[1]))
            assert np.allclose(basis @ basis.T, proj(v, k))


def test_compressions_of_cospectral_matrices():
    rng = np.random.default_rng(5)
    for _ in range(20):
        m = rng.standard_normal((5, 5))
        g1 = m + m.T
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        g2 = q.T @ g1 @ q
        for which in ("sym", "antisym"):
            a = symmetric_eigenvalues(projector_compression(g1, which)).values
            b = symmetric_eigenvalues(projector_compression(g2, which)).values
            assert spectra_close(a, b, 1e-7)


def test_selector_compression_is_not_spectral():
    x, y = gc.star(4).adjacency(), gc.disjoint_union(gc.cycle(4), gc.empty(1)).adjacency()
    assert charpoly_exact(x) == charpoly_exact(y)
    assert charpoly_exact(omega(x)) != charpoly_exact(omega(y))
    assert np.array_equal(projector_compression(x, "selector"), omega(x))


def test_projector_compression_spectra_are_pair_averages():
    g = gc.petersen().adjacency(float)
    lam = np.linalg.eigvalsh(g)
    v = len(lam)
    wedge = sorted(((lam[i] + lam[j]) / 2 for i in range(v) for j in range(i + 1, v)), reverse=True)
    vee = sorted(((lam[i] + lam[j]) / 2 for i in range(v) for j in range(i, v)), reverse=True)
    assert spectra_close(symmetric_eigenvalues(projector_compression(g, "antisym")).values, wedge)
    assert spectra_close(symmetric_eigenvalues(projector_compression(g, "sym")).values, vee)


def test_hamiltonian_sectors():
    g = gc.cycle(5)
    assert np.array_equal(exchange_hamiltonian_sector(g, 0), np.zeros((1, 1)))
    assert np.array_equal(exchange_hamiltonian_sector(g, 1), g.adjacency())
    h = exchange_hamiltonian(g)
    assert (h != h.T).nnz == 0


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=6))
def test_sectors_match_symmetric_powers(g):
    for k in range(1, min(3, g.n) + 1):
        assert np.array_equal(exchange_hamiltonian_sector(g, k), symmetric_power_subsets(g, k).adjacency())


@settings(max_examples=20, deadline=None)
@given(graphs(min_n=1, max_n=6))
def test_hamiltonian_is_direct_sum_of_sectors(g):
    h = exchange_hamiltonian(g).toarray()
    perm = sector_permutation(g.n)
    blocks = [exchange_hamiltonian_sector(g, k) for k in range(g.n + 1)]
    assert np.array_equal(h[np.ix_(perm, perm)], sp.block_diag(blocks).toarray())
