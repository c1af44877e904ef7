"""The map G -> P (G ⊗ I) P^T on arbitrary real symmetric matrices.

Includes the selector matrices P^(k), trace and eigenvalue-bound checks,
the symmetric/antisymmetric tensor projectors, and the exchange
Hamiltonian whose excitation sectors are the symmetric powers.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations, product

import numpy as np
import scipy.sparse as sp

from .exactalg import symmetric_eigenvalues
from .graphcore import Graph
from .sympower import colex_subsets

MAX_SELECTOR_COLUMNS = 1 << 24


def _tuple_index(t, v: int) -> int:
    # first tensor factor most significant, matching np.kron
    idx = 0
    for x in t:
        idx = idx * v + x
    return idx


def build_selector(v: int, k: int) -> sp.csr_matrix:
    """0/1 matrix with C(v,k) rows (colex k-subsets) and v**k columns
    (k-tuples); entry 1 iff the tuple is an ordering of the subset."""
    if not 1 <= k <= v:
        raise ValueError(f"need 1 <= k <= v, got v={v}, k={k}")
    if v**k > MAX_SELECTOR_COLUMNS:
        raise OverflowError(f"selector with {v**k} columns is too large")
    rows, cols = [], []
    for r, s in enumerate(colex_subsets(v, k)):
        for t in permutations(s):
            rows.append(r)
            cols.append(_tuple_index(t, v))
    data = np.ones(len(rows), dtype=np.int64)
    return sp.csr_matrix((data, (rows, cols)), shape=(math.comb(v, k), v**k))


def selector_gram_check(v: int) -> bool:
    """P^(2) P^(2)^T == 2 I."""
    p = build_selector(v, 2)
    return bool(np.array_equal((p @ p.T).toarray(), 2 * np.eye(p.shape[0], dtype=np.int64)))


def selector_expansion_check(v: int) -> bool:
    """P^(2)^T P^(2) == Σ_{i,j} (E_ii ⊗ E_jj + E_ij ⊗ E_ji) - 2 Σ_i E_ii ⊗ E_ii."""
    p = build_selector(v, 2)
    want = np.zeros((v * v, v * v), dtype=np.int64)
    for i in range(v):
        for j in range(v):
            want[i * v + j, i * v + j] += 1
            want[i * v + j, j * v + i] += 1
        want[i * v + i, i * v + i] -= 2
    return bool(np.array_equal((p.T @ p).toarray(), want))


def _lift(g: np.ndarray, k: int, v: int) -> sp.csr_matrix:
    return sp.kron(sp.csr_matrix(g), sp.identity(v ** (k - 1), dtype=g.dtype, format="csr"), format="csr")


def omega(g, k: int = 2) -> np.ndarray:
    """P^(k) (G ⊗ I^{⊗k-1}) P^(k)^T / (k-1)!.

    Integer input gives an exact int64 result (the division is checked);
    anything else is computed in floating point.
    """
    a = np.asarray(g)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("omega needs a square matrix")
    v = a.shape[0]
    p = build_selector(v, k)
    f = math.factorial(k - 1)
    if np.issubdtype(a.dtype, np.integer) or a.dtype == bool or a.dtype == object:
        ai = np.array(a, dtype=object)
        bound = max((abs(int(x)) for x in ai.flat), default=0) * math.factorial(k) * max(v, 1)
        if bound >= 1 << 62:
            raise OverflowError("entries too large for exact int64 evaluation")
        ai = ai.astype(np.int64)
        m = (p @ _lift(ai, k, v) @ p.T).toarray()
        q, r = np.divmod(m, f)
        if r.any():
            raise ArithmeticError("non-exact division by (k-1)! in omega")
        return q
    m = (p.astype(float) @ _lift(a.astype(float), k, v) @ p.T.astype(float)).toarray()
    return m / f


def trace_identity_check(g) -> bool:
    """Tr[Ω(G)] == (v - 1) Tr[G], exactly for integer G."""
    a = np.asarray(g)
    v = a.shape[0]
    lhs = np.trace(omega(a, 2))
    rhs = (v - 1) * np.trace(a)
    if np.issubdtype(a.dtype, np.integer):
        return int(lhs) == int(rhs)
    return bool(abs(lhs - rhs) <= 1e-9 * (1 + abs(rhs)))


def trace_averages(g) -> tuple[Fraction, Fraction]:
    """(Tr[G]/v, Tr[Ω(G)]/C(v,2)) for integer G; the second is twice the first."""
    a = np.asarray(g, dtype=np.int64)
    v = a.shape[0]
    return Fraction(int(np.trace(a)), v), Fraction(int(np.trace(omega(a, 2))), math.comb(v, 2))


def _is_psd(a: np.ndarray, tol: float = 1e-9) -> bool:
    return symmetric_eigenvalues(a, method="lapack").values[-1] >= -tol * (1 + np.abs(a).max(initial=0))


def _bound_range(v: int) -> int:
    # Ω(G) has only C(v,2) eigenvalues; for v = 2 that is fewer than v
    return min(v, math.comb(v, 2))


def eig_bound_check(g, tol: float = 1e-9) -> bool:
    """λ_m↓(G) <= λ_m↓(Ω(G)) + tol for every comparable m, G PSD."""
    a = np.asarray(g, dtype=float)
    if not _is_psd(a):
        raise ValueError("eig_bound_check needs a positive semidefinite matrix")
    lg = symmetric_eigenvalues(a, method="lapack").values
    lo = symmetric_eigenvalues(omega(a, 2), method="lapack").values
    m = _bound_range(a.shape[0])
    return bool(np.all(lg[:m] <= lo[:m] + tol))


def hermitian_bound_check(g, tol: float = 1e-9) -> bool:
    """Both interlacing-type bounds relating the spectra of G and Ω(G)/2."""
    a = np.asarray(g, dtype=float)
    v = a.shape[0]
    down = symmetric_eigenvalues(a, method="lapack").values
    half = symmetric_eigenvalues(omega(a, 2) / 2, method="lapack").values
    up, half_up = down[::-1], half[::-1]
    m = _bound_range(v)
    lower = (down[:m] + down[v - 1]) / 2 <= half[:m] + tol
    upper = (up[:m] + up[v - 1]) / 2 >= half_up[:m] - tol
    return bool(lower.all() and upper.all())


def partial_isometry(v: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Random rank-m orthogonal projector on R^v."""
    q, _ = np.linalg.qr(rng.standard_normal((v, m)))
    return q @ q.T


def sharpness_witness(v: int, m: int, rng: np.random.Generator) -> tuple[float, float]:
    """(λ_m↓(G), λ_m↓(Ω(G))) for a random rank-m projector G.

    The lower bound forces the second value to be >= 1, and G <= I forces
    it to be <= 2, so the eigenvalue bound cannot improve by more than 2x.
    """
    g = partial_isometry(v, m, rng)
    lg = symmetric_eigenvalues(g, method="lapack").values
    lo = symmetric_eigenvalues(omega(g, 2), method="lapack").values
    return float(lg[m - 1]), float(lo[m - 1])


# --------------------------------------------------------------------------
# symmetric / antisymmetric tensor projectors
# --------------------------------------------------------------------------


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def _tensor_permutation(v: int, k: int, sigma) -> np.ndarray:
    """Matrix of x_1 ⊗ ... ⊗ x_k -> x_{σ(1)} ⊗ ... ⊗ x_{σ(k)}."""
    n = v**k
    m = np.zeros((n, n))
    for t in product(range(v), repeat=k):
        m[_tuple_index([t[s] for s in sigma], v), _tuple_index(t, v)] = 1.0
    return m


def _projector(v: int, k: int, signed: bool) -> np.ndarray:
    if v**k > 4096:
        raise OverflowError("projector too large for dense construction")
    out = np.zeros((v**k, v**k))
    for sigma in permutations(range(k)):
        w = _perm_sign(sigma) if signed else 1
        out += w * _tensor_permutation(v, k, sigma)
    return out / math.factorial(k)


def sym_projector(v: int, k: int) -> np.ndarray:
    return _projector(v, k, signed=False)


def antisym_projector(v: int, k: int) -> np.ndarray:
    return _projector(v, k, signed=True)


def symmetric_basis(v: int, k: int) -> np.ndarray:
    """Orthonormal basis of the symmetric tensors, one column per multiset
    (sorted tuple) in colex order."""
    multisets = sorted(
        (t for t in product(range(v), repeat=k) if list(t) == sorted(t)), key=lambda s: s[::-1]
    )
    basis = np.zeros((v**k, len(multisets)))
    for c, s in enumerate(multisets):
        for t in set(permutations(s)):
            basis[_tuple_index(t, v), c] = 1.0
        basis[:, c] /= np.linalg.norm(basis[:, c])
    return basis


def antisymmetric_basis(v: int, k: int) -> np.ndarray:
    """Columns e_i ∧ e_j ∧ ... for colex k-subsets, unit length."""
    subsets = colex_subsets(v, k)
    basis = np.zeros((v**k, len(subsets)))
    norm = 1.0 / math.sqrt(math.factorial(k))
    for c, s in enumerate(subsets):
        for sigma in permutations(range(k)):
            basis[_tuple_index([s[i] for i in sigma], v), c] = _perm_sign(sigma) * norm
    return basis


def projector_compression(g, which: str = "sym", k: int = 2) -> np.ndarray:
    """G compressed to the range of P_∨ (``"sym"``) or P_∧ (``"antisym"``),
    or Ω^(k)(G) for ``"selector"``."""
    a = np.asarray(g, dtype=float)
    v = a.shape[0]
    if which == "selector":
        return omega(a, k)
    if which == "sym":
        b = symmetric_basis(v, k)
    elif which == "antisym":
        b = antisymmetric_basis(v, k)
    else:
        raise ValueError(f"unknown compression {which!r}")
    lifted = np.kron(a, np.eye(v ** (k - 1)))
    return b.T @ lifted @ b


# --------------------------------------------------------------------------
# exchange Hamiltonian
# --------------------------------------------------------------------------

MAX_QUBITS = 12

_S_PLUS = sp.csr_matrix(np.array([[0, 0], [1, 0]], dtype=np.int64))  # |1><0|
_S_MINUS = sp.csr_matrix(np.array([[0, 1], [0, 0]], dtype=np.int64))  # |0><1|
_ID2 = sp.identity(2, dtype=np.int64, format="csr")


def _site_operator(n: int, ops: dict[int, sp.csr_matrix]) -> sp.csr_matrix:
    # qubit i is bit i of the basis index (little-endian), so qubit n-1 is the
    # leftmost Kronecker factor
    out = sp.identity(1, dtype=np.int64, format="csr")
    for i in range(n - 1, -1, -1):
        out = sp.kron(out, ops.get(i, _ID2), format="csr")
    return out


def exchange_hamiltonian(g: Graph) -> sp.csr_matrix:
    """Σ_{i<j} g_ij (S_i^+ S_j^- + S_i^- S_j^+) on the full 2**n space."""
    if g.n > MAX_QUBITS:
        raise OverflowError(f"{g.n} qubits exceeds the limit of {MAX_QUBITS}")
    dim = 1 << g.n
    h = sp.csr_matrix((dim, dim), dtype=np.int64)
    for i, j in g.edges():
        h = h + _site_operator(g.n, {i: _S_PLUS, j: _S_MINUS}) + _site_operator(g.n, {i: _S_MINUS, j: _S_PLUS})
    return h


def sector_states(n: int, k: int) -> list[int]:
    """Basis states of Hamming weight k, in colex order of their 1-positions."""
    return [s for s in range(1 << n) if bin(s).count("1") == k]


def exchange_hamiltonian_sector(g: Graph, k: int) -> np.ndarray:
    """The block of the exchange Hamiltonian on k-excitation states."""
    if not 0 <= k <= g.n:
        raise ValueError(f"k={k} out of range for {g.n} qubits")
    return sector_block(exchange_hamiltonian(g), g.n, k)


def sector_block(h: sp.csr_matrix, n: int, k: int) -> np.ndarray:
    """Restriction of an n-qubit operator to the weight-k states."""
    states = sector_states(n, k)
    return h[states][:, states].toarray()


def sector_permutation(n: int) -> list[int]:
    """Basis order grouping states by excitation number, each sector in colex."""
    return [s for k in range(n + 1) for s in sector_states(n, k)]
