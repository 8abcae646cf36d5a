import pytest

from monodromy.torus import (
    TorusCharacter,
    all_characters,
    amplitude,
    character_table,
    from_digits,
    frobenius_twist,
    injectivity_criterion,
    is_l_restricted,
    power,
    power_map_injective,
    representation_amplitude,
)

SMALL = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3), (7, 1), (7, 2)]


def test_examples():
    assert TorusCharacter(7, 2, 8).digits == (1, 1)
    assert amplitude(TorusCharacter(7, 2, 8)) == 1
    assert TorusCharacter(7, 2, 48).digits == (0, 0)
    chi = from_digits((1, 0), 5)
    r = power(chi, 3)
    assert r.character.digits == (3, 0) and r.carry_free
    r = power(from_digits((3, 0), 5), 3)
    assert r.character.digits == (4, 1) and not r.carry_free
    assert frobenius_twist(from_digits((1, 2), 5)).digits == (2, 1)
    r = power(from_digits((1, 0), 7), 3)
    assert r.character.digits == (3, 0) and r.carry_free and amplitude(r.character) == 3
    r = power(from_digits((3, 0), 7), 3)
    assert r.character.residue == 9 and r.character.digits == (2, 1) and not r.carry_free


def test_invalid():
    with pytest.raises(ValueError):
        TorusCharacter(2, 1, 0)
    with pytest.raises(ValueError):
        TorusCharacter(9, 1, 0)
    with pytest.raises(ValueError):
        TorusCharacter(3, 0, 0)
    with pytest.raises(ValueError):
        power(TorusCharacter(3, 1, 1), 0)


@pytest.mark.parametrize("l, d", SMALL)
def test_digit_round_trip(l, d):
    for chi in all_characters(l, d):
        assert from_digits(chi.digits, l) == chi
        assert is_l_restricted(chi.digits, l)


@pytest.mark.parametrize("l, d", SMALL)
def test_strict_carry_free_law(l, d):
    for chi in all_characters(l, d):
        e = amplitude(chi)
        for c in range(1, l):
            if c * e < l - 1:
                r = power(chi, c)
                assert r.carry_free
                assert amplitude(r.character) == c * e


@pytest.mark.parametrize("l, d", SMALL)
def test_power_is_multiplication_mod_order(l, d):
    for chi in all_characters(l, d):
        for c in (1, 2, l - 1, l + 1):
            assert power(chi, c).character.residue == chi.residue * c % (l**d - 1)


@pytest.mark.parametrize("l, d", SMALL)
def test_twist_preserves_amplitude(l, d):
    for chi in all_characters(l, d):
        tw = frobenius_twist(chi)
        assert amplitude(tw) == amplitude(chi)
        assert is_l_restricted(tw.digits, l) == is_l_restricted(chi.digits, l)
        assert tw.digits == chi.digits[-1:] + chi.digits[:-1]
        x = chi
        for _ in range(d):
            x = frobenius_twist(x)
        assert x == chi


@pytest.mark.parametrize("l, d", SMALL)
def test_injectivity(l, d):
    for c in range(1, 2 * l + 2):
        assert power_map_injective(l, d, c) == injectivity_criterion(l, d, c)


def test_restricted_digits():
    assert is_l_restricted((4, 4, 0), 5)
    assert not is_l_restricted((4, 4), 5)
    assert not is_l_restricted((5, 0), 5)


def test_representation_amplitude_and_table():
    chars = [from_digits(v, 5) for v in [(1, 0), (0, 3), (2, 2)]]
    assert representation_amplitude(chars) == 3
    assert representation_amplitude([]) == 0
    table = character_table(3, 2)
    assert len(table) == 8
    assert table[4] == {"a": 4, "digits": [1, 1], "amplitude": 1, "l_restricted": True}


def test_amplitude_counts():
    # characters of amplitude <= e: (e+1)^d digit vectors minus the all-(l-1) one when e = l-1
    l, d = 5, 3
    for e in range(l):
        n = sum(1 for x in all_characters(l, d) if amplitude(x) <= e)
        assert n == (e + 1) ** d - (1 if e == l - 1 else 0)
