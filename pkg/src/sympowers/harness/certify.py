"""Modular certificates that two integer matrices are not cospectral."""
from __future__ import annotations

import random
from dataclasses import dataclass

from ..exactalg import PRIME_BITS, as_int_matrix, det_shift_mod, is_probable_prime, random_prime


@dataclass(frozen=True)
class Certificate:
    """det(A1 + αI) ≡ r1 and det(A2 + αI) ≡ r2 (mod p) with r1 != r2.

    Since det(A + αI) = (-1)^n φ_A(-α), differing residues prove the two
    characteristic polynomials differ.
    """

    p: int
    alpha: int
    r1: int
    r2: int

    def __post_init__(self):
        if self.r1 == self.r2:
            raise ValueError("a certificate needs distinct residues")

    def verify(self, m1, m2) -> bool:
        if not is_probable_prime(self.p):
            return False
        return (
            det_shift_mod(m1, self.alpha, self.p, check_prime=False) == self.r1
            and det_shift_mod(m2, self.alpha, self.p, check_prime=False) == self.r2
        )

    def to_dict(self) -> dict:
        return {"p": self.p, "alpha": self.alpha, "r1": self.r1, "r2": self.r2}


def certify_distinct(m1, m2, trials: int = 20, rng: random.Random | None = None) -> Certificate | None:
    """Probe det(A + αI) mod p at random (α, p); None means inconclusive.

    Each probe draws a fresh prime and α uniform in [0, p). A None result
    says nothing about cospectrality.
    """
    a1, a2 = as_int_matrix(m1), as_int_matrix(m2)
    if a1.shape != a2.shape:
        raise ValueError(f"dimension mismatch: {a1.shape} vs {a2.shape}")
    rng = rng or random.Random(0)
    for _ in range(trials):
        p = random_prime(rng, PRIME_BITS)
        alpha = rng.randrange(p)
        r1 = det_shift_mod(a1, alpha, p, check_prime=False)
        r2 = det_shift_mod(a2, alpha, p, check_prime=False)
        if r1 != r2:
            return Certificate(p, alpha, r1, r2)
    return None
