"""Density experiments over the box of monic integer polynomials of bounded height.

Counts how often certification of big monodromy (S_n Galois group) and of
ordinary ramification fails, computes the local densities |Omega_p| / p^n of
the ordinary-ramification shape, and evaluates the squarefree sum that drives
the large-sieve bound.
"""

from __future__ import annotations

import csv
import enum
import io
import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .ffpoly import _deriv, _divmod, _eval, _gcd, count_monic_irreducible, count_monic_squarefree
from .galois import SnCertificate, certify_sn
from .intpoly import IntPolynomial, discriminant
from .primes import is_prime, primes_up_to
from .ramify import RamificationWitness, find_ordinary_prime

DEFAULT_WORK_LIMIT = 10**7
DEFAULT_SN_BUDGET = 200
DEFAULT_RAM_BUDGET = 10**7


class WorkLimitExceeded(RuntimeError):
    pass


class TrendError(ValueError):
    pass


def work_limit() -> int:
    return int(os.environ.get("MONODROMY_WORK_LIMIT", DEFAULT_WORK_LIMIT))


@dataclass(frozen=True)
class FamilySpec:
    """Monic degree-n polynomials with coefficients in [-T, T].

    ``sample=None`` means exhaustive enumeration; otherwise ``sample`` draws
    uniformly with replacement, seeded by ``sample_seed``.
    """

    n: int
    T: int
    sample: int | None = None
    sample_seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.T < 1:
            raise ValueError("T must be at least 1")
        if self.sample is not None and self.sample < 1:
            raise ValueError("sample count must be positive")

    @property
    def exhaustive(self) -> bool:
        return self.sample is None

    @property
    def N(self) -> int:
        return 2 * self.T + 1

    @property
    def size(self) -> int:
        return self.N**self.n if self.exhaustive else self.sample

    def to_json(self) -> dict:
        mode = "exhaustive" if self.exhaustive else {"sample": self.sample, "seed": self.sample_seed}
        return {"n": self.n, "T": self.T, "mode": mode}


def _coefficient_rows(spec: FamilySpec, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """Non-leading coefficient tuples (a_0, ..., a_{n-1}) of the family."""
    rng = range(-spec.T, spec.T + 1)
    if spec.exhaustive:
        limit = work_limit() if limit is None else limit
        if spec.size > limit:
            raise WorkLimitExceeded(f"exhaustive family has {spec.size} members, limit {limit}")
        yield from itertools.product(rng, repeat=spec.n)
    else:
        r = random.Random(spec.sample_seed)
        for _ in range(spec.sample):
            yield tuple(r.randint(-spec.T, spec.T) for _ in range(spec.n))


def enumerate_family(spec: FamilySpec, limit: int | None = None) -> Iterator[IntPolynomial]:
    """Exhaustive mode yields each member once in lexicographic (a_0, ..., a_{n-1}) order."""
    for row in _coefficient_rows(spec, limit):
        yield IntPolynomial(row + (1,))


# --- density experiment ----------------------------------------------------


@dataclass(frozen=True)
class DensityReport:
    spec: FamilySpec
    sn_budget: int
    ram_budget: int
    seed: int
    total: int
    excluded_disc0: int
    failed_big_monodromy: int
    failed_ordinary_ramification: int

    @property
    def squarefree_total(self) -> int:
        return self.total - self.excluded_disc0

    @property
    def frac_sn(self) -> Fraction:
        return Fraction(self.failed_big_monodromy, self.squarefree_total or 1)

    @property
    def frac_ram(self) -> Fraction:
        return Fraction(self.failed_ordinary_ramification, self.squarefree_total or 1)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "budgets": {"sn": self.sn_budget, "ram": self.ram_budget},
            "seed": self.seed,
            "total": self.total,
            "excluded_disc0": self.excluded_disc0,
            "failed_big_monodromy_within_budget": self.failed_big_monodromy,
            "failed_ordinary_ramification_within_budget": self.failed_ordinary_ramification,
            "frac_sn": _ratstr(self.frac_sn),
            "frac_ram": _ratstr(self.frac_ram),
            "frac_sn_decimal": f"{float(self.frac_sn):.6f}",
            "frac_ram_decimal": f"{float(self.frac_ram):.6f}",
        }


def _ratstr(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _poly_seed(seed: int, index: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + index) & ((1 << 64) - 1)


def _classify_chunk(args) -> tuple[int, int, int, int]:
    rows, start, seed, sn_budget, ram_budget = args
    total = disc0 = fail_sn = fail_ram = 0
    for offset, row in enumerate(rows):
        f = IntPolynomial(tuple(row) + (1,))
        total += 1
        disc = discriminant(f)
        if disc == 0:
            disc0 += 1
            continue
        if not isinstance(certify_sn(f, sn_budget, _poly_seed(seed, start + offset), disc=disc), SnCertificate):
            fail_sn += 1
        if not isinstance(find_ordinary_prime(f, ram_budget, disc=disc), RamificationWitness):
            fail_ram += 1
    return total, disc0, fail_sn, fail_ram


def density_experiment(
    spec: FamilySpec,
    sn_budget: int = DEFAULT_SN_BUDGET,
    ram_budget: int = DEFAULT_RAM_BUDGET,
    seed: int = 0,
    jobs: int = 1,
    chunk_size: int = 256,
    limit: int | None = None,
) -> DensityReport:
    """Count certification failures over the family.

    Failures are "not certified within budget", an over-count of true
    failures. Polynomials with zero discriminant are counted in
    ``excluded_disc0`` and left out of the failure denominators. The result is
    independent of ``jobs``: chunks reduce by addition only.
    """
    if sn_budget < 1 or ram_budget < 1:
        raise ValueError("budgets must be at least 1")
    rows = list(_coefficient_rows(spec, limit))
    tasks = [
        (rows[i : i + chunk_size], i, seed, sn_budget, ram_budget) for i in range(0, len(rows), chunk_size)
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_classify_chunk, tasks))
    else:
        parts = [_classify_chunk(t) for t in tasks]
    total, disc0, fail_sn, fail_ram = (sum(col) for col in zip(*parts)) if parts else (0, 0, 0, 0)
    return DensityReport(spec, sn_budget, ram_budget, seed, total, disc0, fail_sn, fail_ram)


# --- local densities -------------------------------------------------------


class OmegaMethod(str, enum.Enum):
    BRUTE_FORCE = "brute"
    FORMULA = "formula"


def _in_omega(f: list[int], p: int) -> bool:
    """Direct membership test by scanning for a double root alpha."""
    n = len(f) - 1
    for alpha in range(p):
        if _eval(f, alpha, p):
            continue
        lin = [(-alpha) % p, 1]
        q, _ = _divmod(f, lin, p)
        if _eval(q, alpha, p):
            continue
        g, _ = _divmod(q, lin, p)
        if n == 2:
            return True
        # g(alpha) != 0 also rules out a second double root at alpha; any other
        # repeated factor makes gcd(g, g') non-trivial
        return bool(_eval(g, alpha, p)) and len(_gcd(g, _deriv(g, p), p)) == 1
    return False


def omega_count_brute(p: int, n: int, limit: int = DEFAULT_WORK_LIMIT) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p**n > limit:
        raise WorkLimitExceeded(f"p^n = {p**n} exceeds limit {limit}")
    count = 0
    for row in itertools.product(range(p), repeat=n):
        if _in_omega(list(row) + [1], p):
            count += 1
    return count


def _squarefree_avoiding_root(p: int, m: int) -> int:
    """Monic squarefree g of degree m over F_p with g(0) != 0."""
    # a squarefree g with g(0) = 0 is x*h with h squarefree of degree m-1 and h(0) != 0
    a = 1
    for k in range(1, m + 1):
        a = count_monic_squarefree(p, k) - a
    return a


def omega_count_formula(p: int, n: int) -> int:
    """|Omega_p| = p * #{monic squarefree g, deg g = n - 2, g(alpha) != 0}."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return p * _squarefree_avoiding_root(p, n - 2)


def omega_lower_bound(p: int, n: int) -> int:
    """p times the number of monic irreducibles of degree n - 2 (minus the root alpha itself when n = 3)."""
    irr = count_monic_irreducible(p, n - 2)
    if n == 3:
        irr -= 1
    return p * irr


def omega_count(p: int, n: int, method: OmegaMethod | str = OmegaMethod.FORMULA, limit: int = DEFAULT_WORK_LIMIT) -> int:
    method = OmegaMethod(method)
    if n < 2:
        raise ValueError("n must be at least 2")
    if method is OmegaMethod.BRUTE_FORCE:
        return omega_count_brute(p, n, limit)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return omega_count_formula(p, n)


def omega_density(p: int, n: int, method: OmegaMethod | str = OmegaMethod.FORMULA, limit: int = DEFAULT_WORK_LIMIT) -> Fraction:
    return Fraction(omega_count(p, n, method, limit), p**n)


# --- large sieve -----------------------------------------------------------


def large_sieve_partial_sums(L: int, c: Fraction | int = 1, P0: int = 1) -> list[Fraction]:
    """[H(1), ..., H(L)] where H(x) sums c^omega(a) / a over squarefree a <= x with no prime factor <= P0."""
    if L < 1:
        raise ValueError("L must be at least 1")
    c = Fraction(c)
    # smallest-prime-factor sieve gives omega and squarefreeness in one pass
    spf = list(range(L + 1))
    for q in primes_up_to(math.isqrt(L)):
        for m in range(q * q, L + 1, q):
            if spf[m] == m:
                spf[m] = q
    powers = [Fraction(1)]
    total = Fraction(1)
    out = [total]
    for a in range(2, L + 1):
        m, w, ok = a, 0, True
        while m > 1:
            q = spf[m]
            m //= q
            if q <= P0 or m % q == 0:
                ok = False
                break
            w += 1
        if ok:
            while len(powers) <= w:
                powers.append(powers[-1] * c)
            total += powers[w] / a
        out.append(total)
    return out


def large_sieve_sum(L: int, c: Fraction | int = 1, P0: int = 1) -> Fraction:
    """Sum of c^omega(a) / a over squarefree a <= L with no prime factor <= P0."""
    return large_sieve_partial_sums(L, c, P0)[-1]


def large_sieve_bound_shape(N: int, n: int, L: int, H: Fraction) -> Fraction:
    """(N^n + L^(2n)) / H: the shape of the sieve upper bound, without its implied constant."""
    return Fraction(N**n + L ** (2 * n)) / H


# --- trends ----------------------------------------------------------------


def envelope_sn(N: int) -> float:
    return math.log(N) / math.sqrt(N)


def envelope_ram(N: int, n: int) -> float:
    c = 1.0 if n == 2 else 1.0 / (n - 2)
    return math.log(N) ** (-c)


@dataclass(frozen=True)
class TrendRow:
    T: int
    N: int
    total: int
    excluded_disc0: int
    fail_sn: int
    fail_ram: int
    frac_sn: Fraction
    frac_ram: Fraction
    envelope_sn: float
    envelope_ram: float
    ratio_sn: float | None
    ratio_ram: float | None


@dataclass(frozen=True)
class TrendVerdict:
    rows: tuple[TrendRow, ...]
    non_increasing_sn: bool
    non_increasing_ram: bool
    below_envelope_sn: bool
    below_envelope_ram: bool

    @property
    def passed(self) -> bool:
        return all((self.non_increasing_sn, self.non_increasing_ram, self.below_envelope_sn, self.below_envelope_ram))

    def to_json(self) -> dict:
        return {
            "rows": [_row_json(r) for r in self.rows],
            "non_increasing_sn": self.non_increasing_sn,
            "non_increasing_ram": self.non_increasing_ram,
            "below_envelope_sn": self.below_envelope_sn,
            "below_envelope_ram": self.below_envelope_ram,
            "passed": self.passed,
        }


CSV_COLUMNS = (
    "T", "N", "total", "excluded_disc0", "fail_sn", "fail_ram",
    "frac_sn", "frac_ram", "envelope_sn", "envelope_ram",
    "frac_sn_decimal", "frac_ram_decimal",
)


def _row_json(r: TrendRow) -> dict:
    return {
        "T": r.T,
        "N": r.N,
        "total": r.total,
        "excluded_disc0": r.excluded_disc0,
        "fail_sn": r.fail_sn,
        "fail_ram": r.fail_ram,
        "frac_sn": _ratstr(r.frac_sn),
        "frac_ram": _ratstr(r.frac_ram),
        "envelope_sn": f"{r.envelope_sn:.6f}",
        "envelope_ram": f"{r.envelope_ram:.6f}",
        "frac_sn_decimal": f"{float(r.frac_sn):.6f}",
        "frac_ram_decimal": f"{float(r.frac_ram):.6f}",
    }


def _ratio(frac: Fraction, frac0: Fraction, env: float, env0: float) -> float | None:
    if frac0 == 0:
        return None
    return float(frac / frac0) / (env / env0)


def _scaled_ok(frac: Fraction, frac0: Fraction, env: float, env0: float) -> bool:
    # compare frac <= frac0 * env / env0 without dividing by frac0
    return float(frac) * env0 <= float(frac0) * env * (1 + 1e-12)


def trend_rows(reports: Sequence[DensityReport]) -> list[TrendRow]:
    """One row per report; ratios are relative to the first report."""
    first = reports[0]
    n = first.spec.n
    e_sn0, e_ram0 = envelope_sn(first.spec.N), envelope_ram(first.spec.N, n)
    rows = []
    for r in reports:
        N = r.spec.N
        e_sn, e_ram = envelope_sn(N), envelope_ram(N, n)
        rows.append(
            TrendRow(
                r.spec.T, N, r.total, r.excluded_disc0, r.failed_big_monodromy, r.failed_ordinary_ramification,
                r.frac_sn, r.frac_ram, e_sn, e_ram,
                _ratio(r.frac_sn, first.frac_sn, e_sn, e_sn0),
                _ratio(r.frac_ram, first.frac_ram, e_ram, e_ram0),
            )
        )
    return rows


def trend_check(reports: Sequence[DensityReport]) -> TrendVerdict:
    """Monotonicity of failure fractions, and comparison with the predicted decay.

    The envelopes are log(N)/sqrt(N) for big monodromy and log(N)^(-c) for
    ramification (c = 1/(n-2), or 1 when n = 2), each scaled to pass through
    the first report's observed fraction.
    """
    if len(reports) < 2:
        raise TrendError("need at least two reports")
    first = reports[0]
    for r in reports[1:]:
        if (r.spec.n, r.sn_budget, r.ram_budget) != (first.spec.n, first.sn_budget, first.ram_budget):
            raise TrendError("reports differ in degree or budgets")
    if any(b.spec.T < a.spec.T for a, b in zip(reports, reports[1:])):
        raise TrendError("reports must be ordered by increasing T")
    rows = trend_rows(reports)
    r0 = rows[0]
    pairs = list(zip(rows, rows[1:]))
    return TrendVerdict(
        tuple(rows),
        non_increasing_sn=all(b.frac_sn <= a.frac_sn for a, b in pairs),
        non_increasing_ram=all(b.frac_ram <= a.frac_ram for a, b in pairs),
        below_envelope_sn=all(_scaled_ok(r.frac_sn, r0.frac_sn, r.envelope_sn, r0.envelope_sn) for r in rows),
        below_envelope_ram=all(_scaled_ok(r.frac_ram, r0.frac_ram, r.envelope_ram, r0.envelope_ram) for r in rows),
    )


def trend_csv(rows: Sequence[TrendRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(_row_json(r))
    return buf.getvalue()
