import random

import pytest

from monodromy.ffpoly import FpPolynomial


@pytest.fixture
def rng():
    return random.Random(20261016)


def fp(p, *coeffs):
    """Polynomial over F_p from ascending coefficients."""
    return FpPolynomial(p, tuple(coeffs))
