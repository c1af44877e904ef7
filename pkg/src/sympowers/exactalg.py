"""Exact integer and modular linear algebra.

Characteristic polynomials are computed by Hessenberg reduction modulo a
set of random 62-bit primes and lifted with the Chinese remainder theorem.
Matrices are handled as numpy object arrays so entries stay Python ints.
"""
from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

PRIME_BITS = 62
MR_ROUNDS = 40
# Largest prime below 2**62; used where a fixed prime is wanted.
DEFAULT_PRIME = (1 << 62) - 57

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_probable_prime(n: int, rounds: int = MR_ROUNDS, rng: random.Random | None = None) -> bool:
    """Miller-Rabin with random bases; error probability at most 4**-rounds."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    rng = rng or random.Random(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, bits: int = PRIME_BITS) -> int:
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand, rng=rng):
            return cand


def _require_prime(p: int) -> None:
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


class IntPoly:
    """Polynomial with Python-int coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def t(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, (int, np.integer)):
            return IntPoly((int(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result, base = IntPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        """Quotient when ``other`` divides ``self`` over Z[t]; raises otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        db, lb = other.degree, other.lead()
        if len(rem) - 1 < db:
            if rem:
                raise ArithmeticError("inexact polynomial division")
            return IntPoly()
        q = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f, r = divmod(c, lb)
            if r:
                raise ArithmeticError("inexact polynomial division")
            q[i - db] = f
            for j, y in enumerate(other.coeffs):
                rem[i - db + j] -= f * y
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return IntPoly(q)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = IntPoly((int(other),))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __lt__(self, other: "IntPoly"):
        # lexicographic on coefficient vectors (deck ordering)
        return self.coeffs < other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_text(self) -> str:
        return " ".join(map(str, self.coeffs)) if self.coeffs else "0"

    @classmethod
    def from_text(cls, text: str) -> "IntPoly":
        return cls(int(x) for x in text.split())

    def __repr__(self):
        if not self.coeffs:
            return "IntPoly(0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                coef = str(c) if (abs(c) != 1 or i == 0) else ("-" if c < 0 else "")
                terms.append(f"{coef}{mono}")
        return "IntPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"


@dataclass(frozen=True)
class ModPoly:
    p: int
    coeffs: tuple[int, ...]  # constant term first, length deg+1


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------


def as_int_matrix(m) -> np.ndarray:
    """Square object array of Python ints."""
    a = np.array(m, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return np.vectorize(int, otypes=[object])(a) if a.size else a


def _hessenberg_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Upper Hessenberg matrix similar to ``a`` over GF(p)."""
    h = a % p
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.flatnonzero(h[j + 1 :, j] != 0)
        if nz.size == 0:
            continue
        piv = j + 1 + int(nz[0])
        if piv != j + 1:
            h[[piv, j + 1], :] = h[[j + 1, piv], :]
            h[:, [piv, j + 1]] = h[:, [j + 1, piv]]
        if j + 2 == n:
            continue
        inv = pow(int(h[j + 1, j]), -1, p)
        u = (h[j + 2 :, j] * inv) % p
        if not u.any():
            continue
        h[j + 2 :, j:] = (h[j + 2 :, j:] - np.outer(u, h[j + 1, j:])) % p
        h[:, j + 1] = (h[:, j + 1] + h[:, j + 2 :].dot(u)) % p
    return h


def _charpoly_hessenberg(h: np.ndarray, p: int) -> list[int]:
    n = h.shape[0]
    # row m holds coefficients of the charpoly of the leading m x m block
    polys = np.zeros((n + 1, n + 1), dtype=object)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        prev = polys[m - 1]
        new = np.zeros(n + 1, dtype=object)
        new[1:] = prev[:-1]
        new = (new - h[m - 1, m - 1] * prev) % p
        if m > 1:
            # sum_{i<m} h[i,m] * prod_{k=i+1..m} h[k,k-1] * p_{i-1}, 1-indexed
            sub = h[np.arange(1, m), np.arange(0, m - 1)]
            running = np.empty(m - 1, dtype=object)
            acc = 1
            for idx in range(m - 2, -1, -1):
                acc = acc * sub[idx] % p
                running[idx] = acc
            coef = (h[: m - 1, m - 1] * running) % p
            if coef.any():
                new = (new - coef.dot(polys[: m - 1])) % p
        polys[m] = new
    return [int(x) for x in polys[n]]


def charpoly_mod(m, p: int, check_prime: bool = True) -> ModPoly:
    """Characteristic polynomial det(tI - m) reduced mod ``p``."""
    if check_prime:
        _require_prime(p)
    a = as_int_matrix(m)
    if a.shape[0] == 0:
        return ModPoly(p, (1,))
    return ModPoly(p, tuple(_charpoly_hessenberg(_hessenberg_mod(a, p), p)))


def det_mod(m, p: int, check_prime: bool = True) -> int:
    """Determinant mod ``p`` by Gaussian elimination over GF(p)."""
    if check_prime:
        _require_prime(p)
    a = as_int_matrix(m) % p
    n = a.shape[0]
    det = 1
    for j in range(n):
        nz = np.flatnonzero(a[j:, j] != 0)
        if nz.size == 0:
            return 0
        piv = j + int(nz[0])
        if piv != j:
            a[[piv, j], j:] = a[[j, piv], j:]
            det = -det
        d = int(a[j, j])
        det = det * d % p
        if j + 1 < n:
            u = (a[j + 1 :, j] * pow(d, -1, p)) % p
            if u.any():
                a[j + 1 :, j:] = (a[j + 1 :, j:] - np.outer(u, a[j, j:])) % p
    return det % p


def det_shift_mod(m, alpha: int, p: int, check_prime: bool = True) -> int:
    """det(m + alpha*I) mod ``p``."""
    a = as_int_matrix(m)
    a = a + np.diag(np.full(a.shape[0], int(alpha), dtype=object))
    return det_mod(a, p, check_prime=check_prime)


def coefficient_bound(d: int, maxabs: int) -> int:
    """Integer upper bound binom(d, d//2) * (sqrt(d) * maxabs)**d on |charpoly coefficients|."""
    if d == 0:
        return 1
    maxabs = max(int(maxabs), 1)
    dd = d**d
    root = math.isqrt(dd)
    if root * root < dd:
        root += 1
    return math.comb(d, d // 2) * root * maxabs**d


def crt_symmetric(residues: Sequence[int], primes: Sequence[int]) -> int:
    """Combine residues and lift to the symmetric range (-M/2, M/2]."""
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        # Garner step: x + mod * k == r (mod p)
        k = (r - x) * pow(mod, -1, p) % p
        x += mod * k
        mod *= p
    return x - mod if x > mod // 2 else x


def _charpoly_residues(args) -> list[int]:
    a, p = args
    return _charpoly_hessenberg(_hessenberg_mod(a, p), p)


def charpoly_exact(m, rng: random.Random | None = None, workers: int = 1) -> IntPoly:
    """Exact monic characteristic polynomial det(tI - m).

    Hessenberg reduction modulo random 62-bit primes, enough of them that
    the product exceeds twice :func:`coefficient_bound`, then CRT.
    ``workers > 1`` spreads the primes over processes.
    """
    a = as_int_matrix(m)
    d = a.shape[0]
    if d == 0:
        return IntPoly((1,))
    maxabs = max(abs(int(x)) for x in a.flat)
    target = 2 * coefficient_bound(d, maxabs)
    rng = rng or random.Random(0x5EED ^ d)
    primes: list[int] = []
    modulus = 1
    while modulus <= target:
        p = random_prime(rng)
        if p not in primes:
            primes.append(p)
            modulus *= p
    jobs = [(a, p) for p in primes]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            residues = list(pool.map(_charpoly_residues, jobs))
    else:
        residues = [_charpoly_residues(j) for j in jobs]
    coeffs = [crt_symmetric([r[i] for r in residues], primes) for i in range(d + 1)]
    poly = IntPoly(coeffs)
    if poly.lead() != 1 or poly.degree != d:
        raise ArithmeticError("CRT reconstruction produced a non-monic polynomial")
    return poly


# --------------------------------------------------------------------------
# polynomial matrices
# --------------------------------------------------------------------------


def polydet(m: Sequence[Sequence[IntPoly | int]]) -> IntPoly:
    """Determinant over Z[t] by Bareiss fraction-free elimination."""
    a = [[e if isinstance(e, IntPoly) else IntPoly((int(e),)) for e in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("polydet needs a square matrix")
    if n == 0:
        return IntPoly((1,))
    sign = 1
    prev = IntPoly((1,))
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return IntPoly()
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def char_matrix(m) -> list[list[IntPoly]]:
    """The polynomial matrix tI - m."""
    a = as_int_matrix(m)
    n = a.shape[0]
    return [
        [IntPoly((-int(a[i, j]), 1)) if i == j else IntPoly((-int(a[i, j]),)) for j in range(n)]
        for i in range(n)
    ]


# --------------------------------------------------------------------------
# floating point
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenSpectrum:
    values: np.ndarray  # descending, with multiplicity
    tol: float

    def matches(self, other: "EigenSpectrum | np.ndarray", tol: float = 1e-7) -> bool:
        b = other.values if isinstance(other, EigenSpectrum) else np.sort(np.asarray(other))[::-1]
        return self.values.shape == b.shape and bool(np.all(np.abs(self.values - b) <= tol))

    def __len__(self):
        return len(self.values)


def spectra_close(a, b, tol: float = 1e-7) -> bool:
    """Compare eigenvalue multisets: sort both, then pairwise within ``tol``."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol))


def jacobi_eigenvalues(m, tol: float = 1e-12, max_sweeps: int = 30) -> np.ndarray:
    """Cyclic Jacobi rotations on a dense symmetric matrix. Unsorted output."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0:
        return np.diag(a).copy()
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta  # theta**2 would overflow
                elif theta:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                else:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
    return np.diag(a).copy()


JACOBI_MAX_DIM = 48


def symmetric_eigenvalues(m, method: str = "auto") -> EigenSpectrum:
    """Eigenvalues of a real symmetric matrix, sorted descending.

    ``method`` is ``"jacobi"``, ``"lapack"`` or ``"auto"`` (Jacobi up to
    ``JACOBI_MAX_DIM``, LAPACK's symmetric driver above).
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if a.size and np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a))):
        raise ValueError("matrix is not symmetric")
    if method == "auto":
        method = "jacobi" if a.shape[0] <= JACOBI_MAX_DIM else "lapack"
    if method == "jacobi":
        vals = jacobi_eigenvalues(a)
    elif method == "lapack":
        vals = np.linalg.eigvalsh(a)
    else:
        raise ValueError(f"unknown method {method!r}")
    return EigenSpectrum(np.sort(vals)[::-1], tol=1e-9 * (1 + np.linalg.norm(a)))
