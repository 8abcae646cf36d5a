import random

import pytest

from monodromy.ffpoly import factor
from monodromy.galois import (
    CycleType,
    RamifiedPrime,
    SnCertificate,
    Unknown,
    WitnessClass,
    certify_sn,
    classify,
    cycle_type,
    cycle_type_histogram,
    required_classes,
    verify_certificate,
)
from monodromy.intpoly import IntPolynomial, discriminant, parse, reduce_mod
from monodromy.primes import primes_up_to

F5 = parse("x^5 - x - 1")


def _random_monic(rng, deg, bound=5):
    return IntPolynomial(tuple(rng.randint(-bound, bound) for _ in range(deg)) + (1,))


class TestCycleType:
    def test_examples(self):
        assert cycle_type(F5, 2).parts == (2, 3)
        assert cycle_type(parse("x^2 + 1"), 5).parts == (1, 1)

    def test_ramified(self):
        with pytest.raises(RamifiedPrime):
            cycle_type(F5, 19)

    def test_agrees_with_full_factorization(self):
        d = discriminant(F5)
        for p in primes_up_to(400):
            if d % p:
                assert list(cycle_type(F5, p).parts) == factor(reduce_mod(F5, p), seed=p).degrees()


class TestClassify:
    @pytest.mark.parametrize(
        "parts, cls",
        [
            ((5,), WitnessClass.N_CYCLE),
            ((4, 1), WitnessClass.ALMOST_N_CYCLE),
            ((2, 3), WitnessClass.TRANSPOSITION),
            ((2, 1, 1, 3), WitnessClass.TRANSPOSITION),
            ((2, 2, 1), WitnessClass.UNINFORMATIVE),
            ((2, 4), WitnessClass.UNINFORMATIVE),
            ((1, 1, 1), WitnessClass.UNINFORMATIVE),
            ((2, 1), WitnessClass.TRANSPOSITION),
        ],
    )
    def test_classes(self, parts, cls):
        assert classify(CycleType(parts)) is cls

    def test_transposition_power(self):
        # raising the permutation to the lcm of its odd cycle lengths leaves exactly one 2-cycle
        from math import lcm

        for parts in [(2, 3), (2, 1, 5), (2, 3, 3, 7), (2, 1, 1, 1)]:
            e = lcm(*[k for k in parts if k != 2]) if any(k != 2 for k in parts) else 1
            assert e % 2 == 1
            powered = []
            for k in parts:
                # a k-cycle to the power e splits into gcd(k, e) cycles of length k / gcd(k, e)
                from math import gcd

                g = gcd(k, e)
                powered += [k // g] * g
            assert sorted(x for x in powered if x > 1) == [2]

    def test_required(self):
        assert required_classes(2) == (WitnessClass.N_CYCLE,)
        assert set(required_classes(3)) == {WitnessClass.N_CYCLE, WitnessClass.TRANSPOSITION}
        assert len(required_classes(7)) == 3


class TestCertify:
    def test_x5_x_1(self):
        cert = certify_sn(F5, 100)
        assert isinstance(cert, SnCertificate)
        assert verify_certificate(cert)
        # independent search: full factorizations over primes < 600
        d = discriminant(F5)
        first = {}
        for p in primes_up_to(600):
            if d % p == 0:
                continue
            degs = factor(reduce_mod(F5, p), seed=0).degrees()
            t = CycleType(tuple(degs))
            for cls, ok in (
                (WitnessClass.N_CYCLE, degs == [5]),
                (WitnessClass.ALMOST_N_CYCLE, degs == [1, 4]),
                (WitnessClass.TRANSPOSITION, degs.count(2) == 1 and all(k % 2 for k in degs if k != 2)),
            ):
                if ok:
                    first.setdefault(cls, (p, t))
        assert {w.cls: (w.p, w.cycle_type) for w in cert.witnesses} == first

    def test_reducible_never_certified(self):
        f = parse("x^2 + 1") * parse("x^3 + 2")
        res = certify_sn(f, 10_000)
        assert isinstance(res, Unknown)
        assert res.primes_scanned == 10_000
        assert "5" not in res.histogram
        assert sum(res.histogram.values()) == 10_000

    def test_quadratic(self):
        cert = certify_sn(parse("x^2 + x + 1"), 10)
        assert isinstance(cert, SnCertificate)
        assert [(w.p, w.cycle_type.parts) for w in cert.witnesses] == [(2, (2,))]

    @pytest.mark.parametrize("text", ["x^3 - 3x - 1", "x^4 + 1", "x^4 - x^3 + x^2 - x + 1", "x^4 - 2"])
    def test_smaller_groups_stay_unknown(self, text):
        # A_3, V_4, C_4 and D_4 respectively
        assert isinstance(certify_sn(parse(text), 500), Unknown)

    @pytest.mark.parametrize("text", ["x^3 + 2", "x^4 + x + 1", "x^6 + x + 1", "x^7 - x - 1"])
    def test_symmetric_examples(self, text):
        cert = certify_sn(parse(text), 200)
        assert isinstance(cert, SnCertificate) and verify_certificate(cert)

    def test_errors(self):
        with pytest.raises(ValueError):
            certify_sn(parse("x^2 + 2x + 1"))
        with pytest.raises(ValueError):
            certify_sn(parse("x + 1"))

    def test_seed_independent(self):
        assert certify_sn(F5, 50, seed=1) == certify_sn(F5, 50, seed=99)

    def test_budget_counts_unramified_primes(self):
        # disc(x^2 - 6) = 24: 2 and 3 are skipped, 6 is a square mod 5 but not mod 7
        f = parse("x^2 - 6")
        res = certify_sn(f, 1)
        assert isinstance(res, Unknown) and res.histogram == {"1,1": 1}
        res = certify_sn(f, 2)
        assert isinstance(res, SnCertificate)
        assert res.witnesses[0].p == 7 and res.primes_scanned == 2

    def test_json(self):
        out = certify_sn(F5).to_json()
        assert out["group"] == "Sn" and out["n"] == 5 and out["poly"] == ["-1", "-1", "0", "0", "0", "1"]
        assert {w["class"] for w in out["witnesses"]} == {"NCycle", "AlmostNCycle", "TranspositionYielding"}


def test_refinement_soundness():
    rng = random.Random(7)
    checked = 0
    while checked < 100:
        g = _random_monic(rng, rng.randint(1, 3))
        h = _random_monic(rng, rng.randint(1, 3))
        f = g * h
        d = discriminant(f)
        if d == 0:
            continue
        checked += 1
        assert not isinstance(certify_sn(f, 60), SnCertificate)
        for p in primes_up_to(60):
            if d % p:
                t = cycle_type(f, p)
                assert t.parts != (f.degree,)
                assert t == CycleType(cycle_type(g, p).parts + cycle_type(h, p).parts)


def test_chebotarev_five_cycles():
    hist = cycle_type_histogram(F5, 10_000)
    frac = hist[CycleType((5,))] / sum(hist.values())
    assert abs(frac - 0.20) <= 0.03
