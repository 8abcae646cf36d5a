"""Monic integer polynomials: parsing, height, discriminant, reduction mod p."""

from __future__ import annotations

import re
from math import gcd
from dataclasses import dataclass
from typing import Sequence

from .ffpoly import FpPolynomial
from .primes import is_prime


class PolynomialError(ValueError):
    """Base class for polynomial input errors."""


class ParseError(PolynomialError):
    def __init__(self, message: str, position: int, token: str = ""):
        self.position = position
        self.token = token
        where = f" at position {position}" + (f" near {token!r}" if token else "")
        super().__init__(message + where)


class NonMonicError(PolynomialError):
    def __init__(self, leading: int):
        self.leading = leading
        super().__init__(f"polynomial is not monic (leading coefficient {leading})")


class DegreeError(PolynomialError):
    pass


@dataclass(frozen=True)
class IntPolynomial:
    """Monic polynomial over Z, ascending coefficients ``a_0 .. a_n`` with ``a_n = 1``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        if len(c) < 2:
            raise DegreeError("degree must be at least 1")
        if c[-1] != 1:
            raise NonMonicError(c[-1])
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial(tuple(_zmul(self.coeffs, other.coeffs)))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> IntPolynomial:
        return cls(tuple(int(v) for v in data))

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)


# --- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\^)|(\*)|([+-]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        while text[pos].isspace():
            pos += 1
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", pos, text[pos])
        kind = ("int", "x", "^", "*", "sign")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    return out


def _parse_expression(text: str) -> dict[int, int]:
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression", 0)
    terms: dict[int, int] = {}
    i = 0

    def peek(kind: str) -> bool:
        return i < len(toks) and toks[i][0] == kind

    while i < len(toks):
        sign = 1
        if peek("sign"):
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif terms:
            kind, tok, pos = toks[i]
            raise ParseError("expected '+' or '-'", pos, tok)
        if i >= len(toks):
            raise ParseError("dangling sign", len(text), "")
        coef, power = 1, 0
        if peek("int"):
            coef = int(toks[i][1])
            i += 1
            if peek("*"):
                i += 1
                if not peek("x"):
                    pos = toks[i][2] if i < len(toks) else len(text)
                    raise ParseError("expected 'x' after '*'", pos, toks[i][1] if i < len(toks) else "")
        if peek("x"):
            i += 1
            power = 1
            if peek("^"):
                i += 1
                if not peek("int"):
                    pos = toks[i][2] if i < len(toks) else len(text)
                    raise ParseError("expected integer exponent", pos, toks[i][1] if i < len(toks) else "")
                power = int(toks[i][1])
                i += 1
        elif i < len(toks) and toks[i][0] not in ("sign",):
            kind, tok, pos = toks[i]
            raise ParseError("unexpected token", pos, tok)
        elif i > 0 and toks[i - 1][0] == "sign":
            raise ParseError("missing term after sign", toks[i - 1][2], toks[i - 1][1])
        if i < len(toks) and toks[i][0] in ("int", "x"):
            raise ParseError("implicit multiplication is not allowed", toks[i][2], toks[i][1])
        terms[power] = terms.get(power, 0) + sign * coef
    return terms


def _parse_list(text: str) -> list[int]:
    body = text.strip()[1:-1]
    if not body.strip():
        raise ParseError("empty coefficient list", 1)
    out = []
    offset = text.index("[") + 1
    for item in body.split(","):
        tok = item.strip().strip('"')
        if not re.fullmatch(r"[+-]?\d+", tok):
            raise ParseError("malformed coefficient", offset + len(item) - len(item.lstrip()), item.strip())
        out.append(int(tok))
        offset += len(item) + 1
    return out


def parse(text: str) -> IntPolynomial:
    """Parse ``"x^5 - x - 1"`` or ``"[-1,-1,0,0,0,1]"`` (ascending) into a monic polynomial."""
    stripped = text.strip()
    if stripped.startswith("["):
        if not stripped.endswith("]"):
            raise ParseError("unterminated coefficient list", len(text), "")
        coeffs = _parse_list(stripped)
    else:
        terms = _parse_expression(text)
        deg = max((k for k, v in terms.items() if v), default=0)
        coeffs = [terms.get(k, 0) for k in range(deg + 1)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise DegreeError("degree must be at least 1")
    if coeffs[-1] != 1:
        raise NonMonicError(coeffs[-1])
    return IntPolynomial(tuple(coeffs))


# --- arithmetic over Z -----------------------------------------------------


def height(f: IntPolynomial) -> int:
    return max(abs(a) for a in f.coeffs[:-1])


def _zmul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ztrim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [v * lb for v in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        r.pop()
        _ztrim(r)
        e -= 1
    return [v * lb**e for v in r]


def _content(a: Sequence[int]) -> int:
    g = 0
    for v in a:
        g = gcd(g, v)
    return g


def resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """Res(a, b) over Z by the subresultant pseudo-remainder sequence."""
    A, B = _ztrim(list(a)), _ztrim(list(b))
    if not A or not B:
        return 0
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -1
    ca, cb = _content(A), _content(B)
    A = [v // ca for v in A]
    B = [v // cb for v in B]
    t = ca ** (len(B) - 1) * cb ** (len(A) - 1)
    g = h = 1
    # h tracked as a fraction num/den to stay exact when h^(1-delta) has negative exponent
    while len(B) > 1:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        A = B
        denom = g * h**delta
        B = [v // denom for v in R]
        g = A[-1]
        h = g**delta // h ** (delta - 1) if delta >= 1 else h
        if not B:
            return 0
    da = len(A) - 1
    h = B[-1] ** da // h ** (da - 1) if da >= 1 else h
    return s * t * h


def discriminant(f: IntPolynomial) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f of degree n >= 2."""
    n = f.degree
    if n < 2:
        raise DegreeError("discriminant needs degree >= 2")
    df = [i * f.coeffs[i] for i in range(1, n + 1)]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f.coeffs, df)


def reduce_mod(f: IntPolynomial, p: int) -> FpPolynomial:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return FpPolynomial(p, tuple(c % p for c in f.coeffs))
