"""Characters of F_{l^d}^x written in the fundamental characters.

The character psi_1^a has base-l digits (e_1, ..., e_d) of a; those digits
are the exponents of psi_1, ..., psi_d. Since a lives modulo l^d - 1, the
all-(l-1) digit vector and the zero vector name the same (trivial)
character; the zero vector is the canonical one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence

from .primes import is_prime


def _digits(a: int, l: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        a, r = divmod(a, l)
        out.append(r)
    return tuple(out)


def residue_of(digits: Sequence[int], l: int) -> int:
    return sum(e * l**i for i, e in enumerate(digits))


@dataclass(frozen=True)
class TorusCharacter:
    l: int
    d: int
    residue: int

    def __post_init__(self):
        if self.l == 2 or not is_prime(self.l):
            raise ValueError(f"l = {self.l} must be an odd prime")
        if self.d < 1:
            raise ValueError("d must be at least 1")
        object.__setattr__(self, "residue", self.residue % self.order)

    @property
    def order(self) -> int:
        """Order of the group F_{l^d}^x."""
        return self.l**self.d - 1

    @property
    def digits(self) -> tuple[int, ...]:
        return _digits(self.residue, self.l, self.d)

    def is_trivial(self) -> bool:
        return self.residue == 0

    def to_json(self) -> dict:
        return {"l": self.l, "d": self.d, "digits": list(self.digits)}


def from_residue(a: int, l: int, d: int) -> TorusCharacter:
    return TorusCharacter(l, d, a)


def from_digits(digits: Sequence[int], l: int) -> TorusCharacter:
    return TorusCharacter(l, len(digits), residue_of(digits, l))


def all_characters(l: int, d: int) -> Iterator[TorusCharacter]:
    for a in range(l**d - 1):
        yield TorusCharacter(l, d, a)


def amplitude(chi: TorusCharacter) -> int:
    return max(chi.digits)


def is_l_restricted(digits: Sequence[int], l: int) -> bool:
    return all(0 <= e <= l - 1 for e in digits) and any(e < l - 1 for e in digits)


@dataclass(frozen=True)
class PowerResult:
    character: TorusCharacter
    carry_free: bool


def power(chi: TorusCharacter, c: int) -> PowerResult:
    """chi^c, and whether multiplying each digit by c involved no carries."""
    if c < 1:
        raise ValueError("exponent must be positive")
    result = TorusCharacter(chi.l, chi.d, chi.residue * c)
    carry_free = result.digits == tuple(c * e for e in chi.digits)
    return PowerResult(result, carry_free)


def frobenius_twist(chi: TorusCharacter) -> TorusCharacter:
    """Multiply by l: digits rotate one place, psi_i -> psi_{i+1}."""
    return TorusCharacter(chi.l, chi.d, chi.residue * chi.l)


def representation_amplitude(chars: Iterable[TorusCharacter]) -> int:
    """Amplitude of a representation given by its characters (with multiplicity)."""
    return max((amplitude(x) for x in chars), default=0)


def power_map_injective(l: int, d: int, c: int) -> bool:
    """Decide injectivity of chi -> chi^c by enumerating the character group."""
    images = Counter(power(x, c).character.residue for x in all_characters(l, d))
    return all(v == 1 for v in images.values())


def injectivity_criterion(l: int, d: int, c: int) -> bool:
    return gcd(c, l**d - 1) == 1


def character_table(l: int, d: int) -> list[dict]:
    return [
        {"a": x.residue, "digits": list(x.digits), "amplitude": amplitude(x), "l_restricted": is_l_restricted(x.digits, l)}
        for x in all_characters(l, d)
    ]
