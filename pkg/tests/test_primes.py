import math

import pytest

from monodromy.primes import factorint, is_prime, primes, primes_up_to


def test_is_prime_matches_trial_division():
    for n in range(-5, 5000):
        expected = n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))
        assert is_prime(n) == expected, n


def test_prime_stream_and_sieve_agree():
    it = primes()
    first = [next(it) for _ in range(1229)]
    assert first == primes_up_to(10_000)


@pytest.mark.parametrize(
    "n",
    [2869, -4, 1, 2**61 - 1, (2**31 - 1) * (2**61 - 1), 10403 * 10403 * 7, 600851475143, 1000000016000000063],
)
def test_factorint_reconstructs(n):
    fac = factorint(n)
    assert all(is_prime(p) for p in fac)
    assert math.prod(p**e for p, e in fac.items()) == abs(n)


def test_factorint_zero():
    with pytest.raises(ValueError):
        factorint(0)
