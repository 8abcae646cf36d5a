"""S_n certification from Frobenius cycle types (Dedekind's theorem).

A cycle type at an unramified prime p is the multiset of irreducible factor
degrees of f mod p. Three kinds of witnesses certify that the splitting field
of f has Galois group S_n:

* an n-cycle: f is irreducible, so the group is transitive;
* an (n-1)-cycle: the point stabilizer is transitive, so the group is
  doubly transitive and hence primitive;
* a cycle type with exactly one 2-cycle and otherwise odd cycles: a suitable
  odd power is a transposition, and a primitive group containing a
  transposition is S_n (Jordan).
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .ffpoly import factor_degrees
from .intpoly import IntPolynomial, discriminant, reduce_mod
from .primes import primes

DEFAULT_BUDGET = 200


class RamifiedPrime(ValueError):
    def __init__(self, p: int):
        self.p = p
        super().__init__(f"f is not squarefree mod {p}")


class WitnessClass(str, enum.Enum):
    N_CYCLE = "NCycle"
    ALMOST_N_CYCLE = "AlmostNCycle"
    TRANSPOSITION = "TranspositionYielding"
    UNINFORMATIVE = "Uninformative"


@dataclass(frozen=True)
class CycleType:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(k < 1 for k in self.parts):
            raise ValueError(f"invalid cycle type {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def key(self) -> str:
        return ",".join(map(str, self.parts))


def is_n_cycle(t: CycleType) -> bool:
    return t.parts == (t.n,)


def is_almost_n_cycle(t: CycleType) -> bool:
    return t.n >= 2 and t.parts == tuple(sorted((1, t.n - 1)))


def yields_transposition(t: CycleType) -> bool:
    twos = t.parts.count(2)
    return twos == 1 and all(k % 2 for k in t.parts if k != 2)


def classify(t: CycleType) -> WitnessClass:
    # {2, 1} is both an almost-n-cycle and transposition-yielding for n = 3; the
    # transposition reading is the one the n = 3 witness rule needs.
    if is_n_cycle(t):
        return WitnessClass.N_CYCLE
    if yields_transposition(t):
        return WitnessClass.TRANSPOSITION
    if is_almost_n_cycle(t):
        return WitnessClass.ALMOST_N_CYCLE
    return WitnessClass.UNINFORMATIVE


_PREDICATES = {
    WitnessClass.N_CYCLE: is_n_cycle,
    WitnessClass.ALMOST_N_CYCLE: is_almost_n_cycle,
    WitnessClass.TRANSPOSITION: yields_transposition,
}


def required_classes(n: int) -> tuple[WitnessClass, ...]:
    if n == 2:
        return (WitnessClass.N_CYCLE,)
    if n == 3:
        return (WitnessClass.N_CYCLE, WitnessClass.TRANSPOSITION)
    return (WitnessClass.N_CYCLE, WitnessClass.ALMOST_N_CYCLE, WitnessClass.TRANSPOSITION)


def cycle_type(f: IntPolynomial, p: int) -> CycleType:
    fp = reduce_mod(f, p)
    if not fp.is_squarefree():
        raise RamifiedPrime(p)
    return CycleType(tuple(factor_degrees(fp)))


@dataclass(frozen=True)
class Witness:
    p: int
    cycle_type: CycleType
    cls: WitnessClass

    def to_json(self) -> dict:
        return {"p": self.p, "cycle_type": list(self.cycle_type.parts), "class": self.cls.value}


@dataclass(frozen=True)
class SnCertificate:
    polynomial: IntPolynomial
    witnesses: tuple[Witness, ...]
    primes_scanned: int

    @property
    def n(self) -> int:
        return self.polynomial.degree

    def to_json(self) -> dict:
        return {
            "poly": self.polynomial.to_json(),
            "group": "Sn",
            "n": self.n,
            "witnesses": [w.to_json() for w in self.witnesses],
            "primes_scanned": self.primes_scanned,
        }


@dataclass(frozen=True)
class Unknown:
    """Not certified within budget. This is not a proof that the group is smaller than S_n."""

    polynomial: IntPolynomial
    histogram: dict[str, int] = field(default_factory=dict)
    primes_scanned: int = 0

    def to_json(self) -> dict:
        return {
            "status": "unknown",
            "poly": self.polynomial.to_json(),
            "n": self.polynomial.degree,
            "histogram": dict(sorted(self.histogram.items())),
            "primes_scanned": self.primes_scanned,
        }


def certify_sn(
    f: IntPolynomial,
    prime_budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    disc: int | None = None,
) -> SnCertificate | Unknown:
    """Search primes 2, 3, 5, ... for witnesses of every required class.

    ``prime_budget`` counts unramified primes examined. ``seed`` is accepted for
    interface stability; cycle types come from distinct-degree factorization,
    which uses no randomness, so the result never depends on it.
    """
    n = f.degree
    if n < 2:
        raise ValueError("certification needs degree >= 2")
    if disc is None:
        disc = discriminant(f)
    if disc == 0:
        raise ValueError("f is not squarefree over Q (discriminant 0)")
    wanted = required_classes(n)
    found: dict[WitnessClass, Witness] = {}
    hist: Counter[str] = Counter()
    scanned = 0
    for p in primes():
        if scanned >= prime_budget:
            break
        if disc % p == 0:
            continue
        scanned += 1
        t = cycle_type(f, p)
        hist[t.key()] += 1
        for cls in wanted:
            if cls not in found and _PREDICATES[cls](t):
                found[cls] = Witness(p, t, cls)
        if len(found) == len(wanted):
            return SnCertificate(f, tuple(found[c] for c in wanted), scanned)
    return Unknown(f, dict(hist), scanned)


def cycle_type_histogram(f: IntPolynomial, count: int) -> Counter[CycleType]:
    """Cycle types at the first ``count`` unramified primes."""
    disc = discriminant(f)
    out: Counter[CycleType] = Counter()
    seen = 0
    for p in primes():
        if seen >= count:
            break
        if disc % p:
            out[cycle_type(f, p)] += 1
            seen += 1
    return out


def verify_certificate(cert: SnCertificate) -> bool:
    """Re-derive every stored witness by recomputing its cycle type."""
    f = cert.polynomial
    disc = discriminant(f)
    classes: Iterable[WitnessClass] = (w.cls for w in cert.witnesses)
    if set(classes) != set(required_classes(f.degree)):
        return False
    for w in cert.witnesses:
        if disc % w.p == 0:
            return False
        if cycle_type(f, w.p) != w.cycle_type or not _PREDICATES[w.cls](w.cycle_type):
            return False
    return True
