"""Similitudes, transvections and matrix-group closure for GSp_2g(Z/l).

The pairing takes values in Z/l (the l-th roots of unity written additively),
so <x, y> = x^T J y for an alternating non-degenerate J.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .primes import is_prime

IRREDUCIBLE_SCALE_LIMIT = 10**6
SIMILITUDE_SCALE_LIMIT = 10**6


class NotSimilitude(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class ScaleLimitExceeded(RuntimeError):
    pass


def _as_matrix(M, l: int) -> np.ndarray:
    return np.asarray(M, dtype=np.int64) % l


def rank_mod(M: np.ndarray, l: int) -> int:
    A = np.array(M, dtype=np.int64) % l
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, l) % l
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % l
        r += 1
        if r == rows:
            break
    return r


def det_mod(M: np.ndarray, l: int) -> int:
    A = np.array(M, dtype=np.int64) % l
    n = A.shape[0]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i, c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
            det = -det
        det = det * int(A[c, c]) % l
        inv = pow(int(A[c, c]), -1, l)
        for i in range(c + 1, n):
            if A[i, c]:
                A[i] = (A[i] - A[i, c] * inv * A[c]) % l
    return det % l


def inverse_mod(M: np.ndarray, l: int) -> np.ndarray:
    n = M.shape[0]
    A = np.concatenate([np.array(M, dtype=np.int64) % l, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i, c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular mod l")
        A[[c, piv]] = A[[piv, c]]
        A[c] = A[c] * pow(int(A[c, c]), -1, l) % l
        for i in range(n):
            if i != c and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[c]) % l
    return A[:, n:]


def standard_form(g: int) -> np.ndarray:
    """Block matrix [[0, I], [-I, 0]], so <e_i, e_{g+i}> = 1."""
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    J[:g, g:] = np.eye(g, dtype=np.int64)
    J[g:, :g] = -np.eye(g, dtype=np.int64)
    return J


@dataclass(frozen=True, eq=False)
class SymplecticSpace:
    g: int
    l: int
    form: np.ndarray | None = None

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("g must be at least 1")
        if self.l == 2 or not is_prime(self.l):
            raise ValueError(f"l = {self.l} must be an odd prime")
        J = standard_form(self.g) if self.form is None else _as_matrix(self.form, self.l)
        J = J % self.l
        if J.shape != (self.dim, self.dim):
            raise ValueError("form has the wrong shape")
        if np.any(np.diag(J)) or np.any((J + J.T) % self.l):
            raise ValueError("form is not alternating")
        if det_mod(J, self.l) == 0:
            raise ValueError("form is degenerate")
        J.setflags(write=False)
        object.__setattr__(self, "form", J)

    @property
    def dim(self) -> int:
        return 2 * self.g

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return int(np.asarray(x) @ self.form @ np.asarray(y)) % self.l

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.int64)

    def basis(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v


def _check_shape(M: np.ndarray, space: SymplecticSpace) -> None:
    if M.shape != (space.dim, space.dim):
        raise ValueError(f"expected a {space.dim}x{space.dim} matrix, got shape {M.shape}")


def multiplier(M, space: SymplecticSpace) -> int:
    """The unique m with M^T J M = m J; raises NotSimilitude if there is none."""
    l, J = space.l, space.form
    M = _as_matrix(M, l)
    _check_shape(M, space)
    P = M.T @ J @ M % l
    i, j = np.argwhere(J)[0]
    m = int(P[i, j]) * pow(int(J[i, j]), -1, l) % l
    if m == 0 or np.any((P - m * J) % l):
        raise NotSimilitude("M does not scale the symplectic form")
    return m


def is_similitude(M, space: SymplecticSpace) -> bool:
    try:
        multiplier(M, space)
    except NotSimilitude:
        return False
    return True


def is_transvection(M, space: SymplecticSpace) -> bool:
    l = space.l
    M = _as_matrix(M, l)
    _check_shape(M, space)
    N = (M - space.identity()) % l
    if rank_mod(N, l) != 1:
        return False
    P = N
    for _ in range(space.dim - 1):
        P = P @ N % l
    return not np.any(P)


def transvection(v, lam: int, space: SymplecticSpace) -> np.ndarray:
    """x -> x + lam * <v, x> * v (the same map as x -> x - lam * <x, v> * v)."""
    l = space.l
    v = _as_matrix(v, l)
    if not np.any(v):
        raise ValueError("transvection direction must be non-zero")
    if lam % l == 0:
        raise ValueError("transvection scalar must be non-zero")
    # <v, x> = v^T J x = (J^T v)^T x
    return (space.identity() + lam * np.outer(v, space.form.T @ v)) % l


def standard_transvections(space: SymplecticSpace, mixing: bool = True) -> list[np.ndarray]:
    """T(e_i, 1) for every basis vector, plus T(e_1 + e_2, 1) when g >= 2 and ``mixing``."""
    gens = [transvection(space.basis(i), 1, space) for i in range(space.dim)]
    if mixing and space.g >= 2:
        gens.append(transvection(space.basis(0) + space.basis(1), 1, space))
    return gens


@dataclass
class GroupEnumeration:
    order: int
    elements: list[np.ndarray] | None = None


def _key_dtype(l: int):
    return np.uint8 if l < 256 else (np.uint16 if l < 65536 else np.uint32)


def generate(
    gens: Iterable,
    space: SymplecticSpace,
    cap: int = 10**6,
    keep_elements: bool = False,
) -> GroupEnumeration:
    """Breadth-first closure of the identity under right multiplication by ``gens``."""
    l, d = space.l, space.dim
    gens = [_as_matrix(G, l) for G in gens]
    for G in gens:
        _check_shape(G, space)
        if not is_similitude(G, space):
            raise NotSimilitude("generator is not a similitude")
    dt = _key_dtype(l)
    ident = space.identity()
    seen = {ident.astype(dt).tobytes()}
    elements = [ident] if keep_elements else None
    frontier = ident[None, :, :]
    while len(frontier) and gens:
        fresh = []
        for G in gens:
            prod = np.matmul(frontier, G) % l
            keys = prod.astype(dt)
            for k in range(len(prod)):
                key = keys[k].tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(prod[k])
                    if len(seen) > cap:
                        raise CapExceeded(f"group has more than {cap} elements")
        if keep_elements:
            elements.extend(fresh)
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, d, d)
    return GroupEnumeration(len(seen), elements)


def sp_order(g: int, l: int) -> int:
    order = l ** (g * g)
    for i in range(1, g + 1):
        order *= l ** (2 * i) - 1
    return order


def gsp_order(g: int, l: int) -> int:
    return (l - 1) * sp_order(g, l)


def enumerate_similitudes(space: SymplecticSpace) -> dict[int, int]:
    """Count every matrix over Z/l by multiplier: {m: count}, exhaustively."""
    l, d = space.l, space.dim
    if l ** (d * d) > SIMILITUDE_SCALE_LIMIT:
        raise ScaleLimitExceeded(f"l^{d * d} matrices is beyond the exhaustive limit")
    J = space.form
    counts: dict[int, int] = {}
    i, j = np.argwhere(J)[0]
    inv = pow(int(J[i, j]), -1, l)
    allm = np.array(list(itertools.product(range(l), repeat=d * d)), dtype=np.int64).reshape(-1, d, d)
    P = np.einsum("kji,jr,krs->kis", allm, J, allm) % l
    m = P[:, i, j] * inv % l
    ok = (m != 0) & ~np.any((P - m[:, None, None] * J) % l, axis=(1, 2))
    for val in m[ok]:
        counts[int(val)] = counts.get(int(val), 0) + 1
    return dict(sorted(counts.items()))


def _spin(v: np.ndarray, gens: list[np.ndarray], l: int) -> int:
    """Dimension of the smallest subspace containing v and stable under gens."""
    basis: list[np.ndarray] = []
    pivots: list[int] = []

    def reduce(w):
        w = w % l
        for b, c in zip(basis, pivots):
            if w[c]:
                w = (w - w[c] * b) % l
        return w

    queue = [v]
    while queue:
        w = reduce(queue.pop())
        nz = np.flatnonzero(w)
        if not len(nz):
            continue
        c = int(nz[0])
        w = w * pow(int(w[c]), -1, l) % l
        for k, b in enumerate(basis):
            if b[c]:
                basis[k] = (b - b[c] * w) % l
        basis.append(w)
        pivots.append(c)
        queue.extend(G @ w % l for G in gens)
    return len(basis)


def is_irreducible(gens: Iterable, space: SymplecticSpace) -> bool:
    """True iff no proper non-zero subspace is stable under every generator.

    Every stable subspace contains a cyclic one, so it suffices to spin one
    vector from each line of V.
    """
    l, d = space.l, space.dim
    if l**d > IRREDUCIBLE_SCALE_LIMIT:
        raise ScaleLimitExceeded(f"l^{d} vectors is beyond the exhaustive limit")
    gens = [_as_matrix(G, l) for G in gens]
    for G in gens:
        _check_shape(G, space)
    for lead in range(d):
        # lines with first non-zero coordinate at index lead, normalized to 1
        for tail in itertools.product(range(l), repeat=d - lead - 1):
            v = np.zeros(d, dtype=np.int64)
            v[lead] = 1
            v[lead + 1 :] = tail
            if _spin(v, gens, l) < d:
                return False
    return True


def matrices_to_json(mats: Iterable, space: SymplecticSpace) -> dict:
    return {"g": space.g, "l": space.l, "matrices": [(_as_matrix(M, space.l)).tolist() for M in mats]}


def matrices_from_json(data, space: SymplecticSpace | None = None) -> tuple[list[np.ndarray], SymplecticSpace | None]:
    """Accept ``{"g", "l", "matrices"}`` or a bare list of row-major matrices."""
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, dict):
        hdr = SymplecticSpace(int(data["g"]), int(data["l"]))
        if space is not None and (space.g, space.l) != (hdr.g, hdr.l):
            raise ValueError(f"file header (g={hdr.g}, l={hdr.l}) does not match (g={space.g}, l={space.l})")
        space = space or hdr
        mats = data["matrices"]
    else:
        mats = data
    l = space.l if space is not None else None
    out = [np.asarray(M, dtype=np.int64) % l if l else np.asarray(M, dtype=np.int64) for M in mats]
    return out, space
