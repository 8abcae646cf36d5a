"""Dense univariate polynomials over prime fields F_p.

Coefficient lists are ascending (``c[i]`` is the coefficient of ``x**i``) and
trimmed, so the zero polynomial is ``[]``. The ``_``-prefixed helpers work on
raw lists for speed; :class:`FpPolynomial` is the immutable public wrapper.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .primes import factorint, is_prime

MAX_MODULUS = 1 << 62
SPLIT_ATTEMPTS = 64


class FactorizationError(RuntimeError):
    """Equal-degree splitting did not succeed within the attempt bound."""


class ModulusMismatch(ValueError):
    pass


# --- raw list arithmetic --------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return _trim(out)


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return _trim(out)


def _mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _scale(a: Sequence[int], s: int, p: int) -> list[int]:
    return _trim([v * s % p for v in a])


def _divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        coef = r[k] * inv % p
        if coef:
            q[k - db] = coef
            off = k - db
            for j in range(db + 1):
                r[off + j] = (r[off + j] - coef * b[j]) % p
    return _trim(q), _trim(r[:db])


def _rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    db = len(b) - 1
    if len(a) - 1 < db:
        return list(a)
    r = list(a)
    inv = pow(b[-1], -1, p)
    for k in range(len(r) - 1, db - 1, -1):
        coef = r[k] * inv % p
        if coef:
            off = k - db
            for j in range(db + 1):
                r[off + j] = (r[off + j] - coef * b[j]) % p
    return _trim(r[:db])


def _monic(a: Sequence[int], p: int) -> list[int]:
    if not a:
        return []
    if a[-1] == 1:
        return list(a)
    return _scale(a, pow(a[-1], -1, p), p)


def _gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _deriv(a: Sequence[int], p: int) -> list[int]:
    return _trim([i * a[i] % p for i in range(1, len(a))])


def _mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    return _rem(_mul(a, b, p), f, p)


def _powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _rem(a, f, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _mulmod(base, base, f, p)
    return result


def _eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _sqf_parts(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Squarefree decomposition of a monic f; multiplicity-ordered, trivial parts dropped."""
    out: list[tuple[list[int], int]] = []
    df = _deriv(f, p)
    c = _gcd(f, df, p)
    w = _divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, p)
        z = _divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = _divmod(c, y, p)[0]
    if len(c) > 1:
        # c has zero derivative, so it is a p-th power; coefficients of F_p are their own p-th roots
        root = c[::p]
        out.extend((g, m * p) for g, m in _sqf_parts(root, p))
    out.sort(key=lambda t: t[1])
    return out


def _ddf(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Distinct-degree factorization of a monic squarefree f: (product of degree-d factors, d)."""
    out = []
    x = [0, 1]
    h = x
    rest = f
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, rest, p)
        g = _gcd(rest, _sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            rest = _divmod(rest, g, p)[0]
            h = _rem(h, rest, p)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _edf(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    for _ in range(SPLIT_ATTEMPTS):
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1)) instead of the quadratic-character power
            t = a
            acc = a
            for _ in range(d - 1):
                t = _mulmod(t, t, f, p)
                acc = _add(acc, t, p)
            g = _gcd(f, acc, p)
        else:
            b = _powmod(a, (p**d - 1) // 2, f, p)
            g = _gcd(f, _sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            h = _divmod(f, g, p)[0]
            return _edf(g, d, p, rng) + _edf(h, d, p, rng)
    raise FactorizationError(f"equal-degree split of degree-{n} polynomial failed after {SPLIT_ATTEMPTS} attempts")


# --- public wrapper --------------------------------------------------------


@dataclass(frozen=True)
class FpPolynomial:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not 2 <= self.p < MAX_MODULUS:
            raise ValueError(f"modulus {self.p} outside [2, 2^62)")
        c = list(v % self.p for v in self.coeffs)
        object.__setattr__(self, "coeffs", tuple(_trim(c)))

    @classmethod
    def from_ints(cls, coeffs: Iterable[int], p: int) -> FpPolynomial:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p, tuple(coeffs))

    @classmethod
    def x_minus(cls, alpha: int, p: int) -> FpPolynomial:
        return cls(p, (-alpha, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def monic(self) -> FpPolynomial:
        return FpPolynomial(self.p, tuple(_monic(self.coeffs, self.p)))

    def _check(self, other: FpPolynomial) -> None:
        if self.p != other.p:
            raise ModulusMismatch(f"moduli differ: {self.p} vs {other.p}")

    def __add__(self, other: FpPolynomial) -> FpPolynomial:
        self._check(other)
        return FpPolynomial(self.p, tuple(_add(self.coeffs, other.coeffs, self.p)))

    def __sub__(self, other: FpPolynomial) -> FpPolynomial:
        self._check(other)
        return FpPolynomial(self.p, tuple(_sub(self.coeffs, other.coeffs, self.p)))

    def __mul__(self, other: FpPolynomial) -> FpPolynomial:
        self._check(other)
        return FpPolynomial(self.p, tuple(_mul(self.coeffs, other.coeffs, self.p)))

    def __pow__(self, e: int) -> FpPolynomial:
        out = [1]
        for _ in range(e):
            out = _mul(out, self.coeffs, self.p)
        return FpPolynomial(self.p, tuple(out))

    def __divmod__(self, other: FpPolynomial) -> tuple[FpPolynomial, FpPolynomial]:
        self._check(other)
        q, r = _divmod(self.coeffs, other.coeffs, self.p)
        return FpPolynomial(self.p, tuple(q)), FpPolynomial(self.p, tuple(r))

    def __floordiv__(self, other: FpPolynomial) -> FpPolynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: FpPolynomial) -> FpPolynomial:
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        return _eval(self.coeffs, x, self.p)

    def derivative(self) -> FpPolynomial:
        return FpPolynomial(self.p, tuple(_deriv(self.coeffs, self.p)))

    def is_squarefree(self) -> bool:
        if self.degree < 1:
            return True
        return len(_gcd(self.coeffs, _deriv(self.coeffs, self.p), self.p)) == 1

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


@dataclass(frozen=True)
class FpFactorization:
    unit: int
    factors: tuple[tuple[FpPolynomial, int], ...]
    p: int

    def expand(self) -> FpPolynomial:
        out = [self.unit % self.p]
        for g, m in self.factors:
            for _ in range(m):
                out = _mul(out, g.coeffs, self.p)
        return FpPolynomial(self.p, tuple(out))

    def degrees(self) -> list[int]:
        """Factor degrees with multiplicity, ascending."""
        return sorted(g.degree for g, m in self.factors for _ in range(m))

    def is_irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1


def gcd(a: FpPolynomial, b: FpPolynomial) -> FpPolynomial:
    a._check(b)
    return FpPolynomial(a.p, tuple(_gcd(a.coeffs, b.coeffs, a.p)))


def squarefree_decomposition(f: FpPolynomial) -> list[tuple[FpPolynomial, int]]:
    """Return ``[(g_i, i), ...]`` with ``f = lc(f) * prod g_i**i``.

    The ``g_i`` are monic, squarefree and pairwise coprime; trivial parts are
    omitted and the list is ordered by multiplicity.
    """
    if f.is_zero:
        raise ValueError("squarefree decomposition of the zero polynomial")
    p = f.p
    parts = _sqf_parts(_monic(f.coeffs, p), p) if f.degree > 0 else []
    return [(FpPolynomial(p, tuple(g)), m) for g, m in parts]


def distinct_degree(f: FpPolynomial) -> list[tuple[FpPolynomial, int]]:
    """Distinct-degree factorization of a squarefree polynomial."""
    if not f.is_squarefree():
        raise ValueError("distinct-degree factorization needs a squarefree polynomial")
    p = f.p
    return [(FpPolynomial(p, tuple(g)), d) for g, d in _ddf(_monic(f.coeffs, p), p)]


def factor_degrees(f: FpPolynomial) -> list[int]:
    """Irreducible factor degrees of a squarefree f, ascending, without equal-degree splitting."""
    degs = []
    for g, d in distinct_degree(f):
        degs += [d] * (g.degree // d)
    return sorted(degs)


def factor(f: FpPolynomial, seed: int = 0) -> FpFactorization:
    """Complete factorization into monic irreducibles.

    Squarefree decomposition, then distinct-degree, then Cantor-Zassenhaus
    equal-degree splitting seeded by ``seed`` (trace variant when p = 2).
    """
    if f.degree < 1:
        raise ValueError("cannot factor a zero or constant polynomial")
    p = f.p
    rng = random.Random(seed)
    factors: list[tuple[FpPolynomial, int]] = []
    for g, m in _sqf_parts(_monic(f.coeffs, p), p):
        for h, d in _ddf(g, p):
            for irr in _edf(h, d, p, rng):
                factors.append((FpPolynomial(p, tuple(irr)), m))
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs[::-1], t[1]))
    return FpFactorization(f.leading, tuple(factors), p)


def is_irreducible(f: FpPolynomial) -> bool:
    if f.degree < 1:
        return False
    if not f.is_squarefree():
        return False
    return factor_degrees(f) == [f.degree]


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    fac = factorint(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def count_monic_irreducible(q: int, m: int) -> int:
    """Number of monic irreducible polynomials of degree m over F_q (1 for m = 0)."""
    if m < 0:
        raise ValueError("degree must be non-negative")
    if m == 0:
        return 1
    total = sum(_mobius(d) * q ** (m // d) for d in _divisors(m))
    return total // m


def count_monic_squarefree(q: int, m: int) -> int:
    if m < 0:
        raise ValueError("degree must be non-negative")
    if m == 0:
        return 1
    if m == 1:
        return q
    return q**m - q ** (m - 1)
