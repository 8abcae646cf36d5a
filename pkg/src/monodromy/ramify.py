"""Ordinary ramification witnesses: f = (X - alpha)^2 * f2 mod p, f2 squarefree and coprime."""

from __future__ import annotations

from dataclasses import dataclass

from .ffpoly import FpPolynomial, squarefree_decomposition
from .intpoly import IntPolynomial, discriminant, reduce_mod
from .primes import factorint, is_prime

DEFAULT_DISC_BOUND = 10**7


@dataclass(frozen=True)
class RamificationWitness:
    p: int
    alpha: int
    cofactor: FpPolynomial

    def expand(self) -> FpPolynomial:
        lin = FpPolynomial.x_minus(self.alpha, self.p)
        return lin * lin * self.cofactor

    def to_json(self) -> dict:
        out = {"p": self.p, "alpha": self.alpha, "cofactor": self.cofactor.to_json()}
        if self.p == 2:
            out["char2"] = True
        return out


@dataclass(frozen=True)
class NotFound:
    examined: tuple[int, ...]
    disc_primes: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"status": "not_found", "examined": list(self.examined), "disc_primes": list(self.disc_primes)}


def ordinary_shape(fp: FpPolynomial) -> RamificationWitness | None:
    """Witness for a monic polynomial over F_p of shape (X - a)^2 * squarefree coprime cofactor."""
    n = fp.degree
    if n < 2:
        return None
    parts = squarefree_decomposition(fp)
    doubled = [g for g, m in parts if m == 2]
    if len(doubled) != 1 or doubled[0].degree != 1:
        return None
    if any(m not in (1, 2) for _, m in parts):
        return None
    lin = doubled[0]
    alpha = (-lin.coeffs[0]) % fp.p
    cofactor = fp.monic() // (lin * lin)
    return RamificationWitness(fp.p, alpha, cofactor)


def ordinary_at(f: IntPolynomial, p: int) -> RamificationWitness | None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f.degree < 2:
        raise ValueError("degree must be at least 2")
    return ordinary_shape(reduce_mod(f, p))


def find_ordinary_prime(
    f: IntPolynomial,
    prime_budget: int = DEFAULT_DISC_BOUND,
    disc: int | None = None,
) -> RamificationWitness | NotFound:
    """Test the prime divisors p <= ``prime_budget`` of disc(f) in increasing order.

    A witness forces p | disc(f), so no other prime needs to be scanned.
    """
    if disc is None:
        disc = discriminant(f)
    if disc == 0:
        raise ValueError("f is not squarefree over Q (discriminant 0)")
    disc_primes = tuple(factorint(disc))
    examined = []
    for p in disc_primes:
        if p > prime_budget:
            break
        examined.append(p)
        w = ordinary_at(f, p)
        if w is not None:
            return w
    return NotFound(tuple(examined), disc_primes)
