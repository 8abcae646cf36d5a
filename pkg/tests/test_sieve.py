import itertools
from fractions import Fraction

import pytest

from monodromy.ffpoly import FpPolynomial, count_monic_irreducible
from monodromy.galois import SnCertificate, certify_sn
from monodromy.intpoly import discriminant, height
from monodromy.ramify import RamificationWitness, find_ordinary_prime
from monodromy.sieve import (
    CSV_COLUMNS,
    DensityReport,
    FamilySpec,
    TrendError,
    WorkLimitExceeded,
    density_experiment,
    enumerate_family,
    large_sieve_bound_shape,
    large_sieve_sum,
    omega_count,
    omega_density,
    omega_lower_bound,
    trend_check,
    trend_csv,
    trend_rows,
)

from oracles import is_squarefree_brute


class TestFamily:
    def test_sizes(self):
        assert len(list(enumerate_family(FamilySpec(2, 1)))) == 9
        assert len(list(enumerate_family(FamilySpec(5, 2)))) == 3125

    @pytest.mark.parametrize("n, T", [(2, 1), (2, 3), (3, 2), (4, 1)])
    def test_exhaustive_is_the_height_box(self, n, T):
        fam = list(enumerate_family(FamilySpec(n, T)))
        assert len(fam) == len(set(fam)) == (2 * T + 1) ** n
        assert all(f.degree == n and height(f) <= T for f in fam)
        rows = [f.coeffs[:-1] for f in fam]
        assert rows == sorted(rows)

    def test_sample_is_seeded(self):
        spec = FamilySpec(3, 10, sample=100, sample_seed=7)
        a, b = list(enumerate_family(spec)), list(enumerate_family(spec))
        assert a == b and len(a) == 100
        assert all(height(f) <= 10 for f in a)
        assert a != list(enumerate_family(FamilySpec(3, 10, sample=100, sample_seed=8)))

    def test_work_limit(self):
        with pytest.raises(WorkLimitExceeded):
            list(enumerate_family(FamilySpec(6, 5), limit=10**4))

    def test_env_work_limit(self, monkeypatch):
        monkeypatch.setenv("MONODROMY_WORK_LIMIT", "100")
        with pytest.raises(WorkLimitExceeded):
            list(enumerate_family(FamilySpec(3, 2)))

    @pytest.mark.parametrize("kwargs", [dict(n=1, T=1), dict(n=2, T=0), dict(n=2, T=1, sample=0)])
    def test_invalid_spec(self, kwargs):
        with pytest.raises(ValueError):
            FamilySpec(**kwargs)


class TestDensityExperiment:
    def test_quadratics_height_one(self):
        rep = density_experiment(FamilySpec(2, 1))
        assert rep.total == 9
        # b^2 - 4c = 0 with |b|, |c| <= 1 only for (b, c) = (0, 0)
        assert rep.excluded_disc0 == 1

    def test_counts_match_direct_loop(self):
        spec = FamilySpec(3, 2)
        fail_sn = fail_ram = disc0 = 0
        for f in enumerate_family(spec):
            if discriminant(f) == 0:
                disc0 += 1
                continue
            fail_sn += not isinstance(certify_sn(f, 30), SnCertificate)
            fail_ram += not isinstance(find_ordinary_prime(f, 10**5), RamificationWitness)
        rep = density_experiment(spec, 30, 10**5)
        assert (rep.excluded_disc0, rep.failed_big_monodromy, rep.failed_ordinary_ramification) == (disc0, fail_sn, fail_ram)

    def test_cubic_fractions_below_half(self):
        rep = density_experiment(FamilySpec(3, 5), 50, 10**5)
        assert rep.frac_sn < Fraction(1, 2) and rep.frac_ram < Fraction(1, 2)

    def test_worker_count_independent(self):
        spec = FamilySpec(3, 3, sample=300, sample_seed=1)
        one = density_experiment(spec, 20, 10**5, seed=4, jobs=1, chunk_size=37)
        many = density_experiment(spec, 20, 10**5, seed=4, jobs=4, chunk_size=37)
        assert one == many
        assert one.to_json() == many.to_json()

    def test_budgets_validated(self):
        with pytest.raises(ValueError):
            density_experiment(FamilySpec(2, 1), sn_budget=0)


class TestOmega:
    def test_n2(self):
        assert omega_count(3, 2, "brute") == 3
        assert omega_density(3, 2, "brute") == Fraction(1, 3)

    def test_n3(self):
        assert omega_count(3, 3, "brute") == 6
        assert omega_density(3, 3, "brute") == Fraction(2, 9)

    def test_n4_p5_lower_bound(self):
        brute = omega_count(5, 4, "brute")
        assert count_monic_irreducible(5, 2) == 10
        assert brute >= 5 * 10 == omega_lower_bound(5, 4)
        assert Fraction(brute, 625) >= Fraction(2, 25) >= Fraction(2, 5) / 5

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    def test_cubic_closed_form(self, p):
        assert omega_count(p, 3, "brute") == p * (p - 1) == omega_count(p, 3, "formula")

    @pytest.mark.parametrize("p, n", [(2, 4), (3, 4), (5, 4), (7, 4), (2, 5), (3, 5), (5, 5), (2, 6), (3, 6), (2, 7)])
    def test_formula_matches_brute_force(self, p, n):
        assert omega_count(p, n, "formula") == omega_count(p, n, "brute")

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_constructive_enumeration(self, p):
        # build Omega_p as the set of products (x - a)^2 g, g squarefree with g(a) != 0
        n = 4
        built = set()
        for a in range(p):
            lin = FpPolynomial(p, (-a, 1))
            for row in itertools.product(range(p), repeat=n - 2):
                g = FpPolynomial(p, row + (1,))
                if g(a) and is_squarefree_brute(g):
                    built.add((lin * lin * g).coeffs)
        assert len(built) == omega_count(p, n, "brute")

    @pytest.mark.parametrize("n", [4, 5])
    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_eq_lower(self, n, p):
        c = Fraction(1, 2 * (n - 2))
        if p**n <= 10**5:
            assert omega_density(p, n, "brute") >= c / p
        assert omega_density(p, n, "formula") >= c / p
        assert omega_count(p, n) >= omega_lower_bound(p, n)

    def test_lower_bound_conventions(self):
        # n = 2: "1 is irreducible of degree 0"; n = 3: subtract the root alpha itself
        assert omega_lower_bound(7, 2) == 7
        assert omega_lower_bound(7, 3) == 7 * 6

    def test_limit(self):
        with pytest.raises(WorkLimitExceeded):
            omega_count(101, 4, "brute", limit=10**6)


class TestLargeSieveSum:
    def test_examples(self):
        assert large_sieve_sum(10, 1, 1) == Fraction(513, 210)
        assert large_sieve_sum(1) == 1
        assert large_sieve_sum(10, 1, 2) == Fraction(176, 105)

    def test_against_direct_sum(self):
        def omega_sqfree(a):
            k, w, q = a, 0, 2
            while q * q <= k:
                if k % q == 0:
                    k //= q
                    if k % q == 0:
                        return None, None
                    w += 1
                q += 1
            if k > 1:
                w += 1
            return w, k

        def brute(L, c, P0):
            total = Fraction(0)
            for a in range(1, L + 1):
                w, _ = omega_sqfree(a)
                if w is None:
                    continue
                if any(a % q == 0 for q in range(2, P0 + 1) if all(q % r for r in range(2, q))):
                    continue
                total += Fraction(c) ** w / a
            return total

        for L, c, P0 in [(30, Fraction(1, 2), 1), (60, Fraction(2, 3), 3), (100, 1, 5), (97, Fraction(1, 3), 7)]:
            assert large_sieve_sum(L, c, P0) == brute(L, c, P0)

    def test_monotone(self):
        prev = Fraction(0)
        for L in range(1, 400):
            cur = large_sieve_sum(L, Fraction(1, 2), 3)
            assert cur >= prev
            prev = cur
        vals = [large_sieve_sum(300, 1, P0) for P0 in range(1, 30)]
        assert all(b <= a for a, b in zip(vals, vals[1:]))

    def test_bound_shape(self):
        H = large_sieve_sum(10)
        assert large_sieve_bound_shape(5, 2, 10, H) == Fraction(5**2 + 10**4) / H


def _report(T, fsn, fram, n=3, total=101):
    # fsn / fram are failure counts out of total - 1 squarefree members
    return DensityReport(FamilySpec(n, T), 60, 10**7, 0, total, 1, fsn, fram)


class TestTrend:
    def test_decreasing(self):
        v = trend_check([_report(2, 10, 10), _report(4, 4, 8)])
        assert v.non_increasing_sn and v.non_increasing_ram

    def test_identical(self):
        v = trend_check([_report(2, 10, 10), _report(2, 10, 10)])
        assert v.rows[1].ratio_sn == pytest.approx(1.0) and v.rows[1].ratio_ram == pytest.approx(1.0)
        assert v.passed

    def test_increase_fails(self):
        v = trend_check([_report(2, 1, 1), _report(4, 5, 5)])
        assert not v.non_increasing_sn and not v.passed

    def test_envelope(self):
        # big-monodromy envelope log(N)/sqrt(N) barely moves from N=5 to N=9, so a tiny drop is inside it
        v = trend_check([_report(2, 50, 50), _report(4, 49, 49)])
        assert v.below_envelope_sn
        # the ramification envelope 1/log N shrinks by a factor 0.73, so dropping 50 -> 49 is outside it
        assert not v.below_envelope_ram

    def test_mismatch(self):
        with pytest.raises(TrendError):
            trend_check([_report(2, 1, 1), _report(4, 1, 1, n=4)])
        with pytest.raises(TrendError):
            trend_check([_report(4, 1, 1), _report(2, 1, 1)])
        with pytest.raises(TrendError):
            trend_check([_report(4, 1, 1)])

    def test_ramification_exponent(self):
        rows = trend_rows([_report(2, 1, 1, n=5), _report(4, 1, 1, n=5)])
        import math

        assert rows[0].envelope_ram == pytest.approx(math.log(5) ** (-1 / 3))

    def test_csv(self):
        text = trend_csv(trend_rows([_report(2, 10, 10), _report(4, 4, 8)]))
        lines = text.strip().split("\n")
        assert lines[0].split(",")[:10] == [
            "T", "N", "total", "excluded_disc0", "fail_sn", "fail_ram",
            "frac_sn", "frac_ram", "envelope_sn", "envelope_ram",
        ]
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[2].split(",")[:8] == ["4", "9", "101", "1", "4", "8", "1/25", "2/25"]
