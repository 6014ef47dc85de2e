from __future__ import annotations

from fractions import Fraction

import pytest

from qbailey.cyclo import (
    I, MINUS_ONE, OMEGA, OMEGA2, ONE, ZERO, ZETA, CycloNumber, CycloZeroDivisionError, cyclo_conj,
    cyclo_inv, cyclo_pow, parse_unit, render
)


def test_roots_of_unity() -> None:
    assert ZETA**12 == ONE
    assert ZETA**6 == MINUS_ONE
    assert ZETA**4 == OMEGA
    assert ZETA**3 == I
    assert I * I == MINUS_ONE
    assert OMEGA**3 == ONE
    assert OMEGA * OMEGA == OMEGA2
    assert ONE + OMEGA + OMEGA2 == ZERO


def test_rational_shortcuts() -> None:
    x = CycloNumber(Fraction(3, 4))
    assert x.rational
    assert x == Fraction(3, 4)
    assert x * 4 == 3
    assert (x + I).rational is False
    assert hash(CycloNumber(2)) == hash(2)


@pytest.mark.parametrize(
    "x", [CycloNumber(2, 1), CycloNumber(0, 1, 1, 1), ONE - I, CycloNumber(Fraction(1, 3), 0, 5)]
)
def test_inverse(x: CycloNumber) -> None:
    assert x * cyclo_inv(x) == ONE
    assert x / x == ONE
    assert cyclo_pow(x, -2) * x * x == ONE


def test_zero_inverse_raises() -> None:
    with pytest.raises(CycloZeroDivisionError):
        cyclo_inv(ZERO)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_conjugation() -> None:
    assert cyclo_conj(I) == -I
    assert cyclo_conj(ZETA) * ZETA == ONE
    assert cyclo_conj(OMEGA) == OMEGA2
    x = CycloNumber(1, 2, 3, 4)
    y = CycloNumber(-2, 0, 1, Fraction(1, 2))
    assert cyclo_conj(x * y) == cyclo_conj(x) * cyclo_conj(y)
    # x times its conjugate is fixed by conjugation
    assert cyclo_conj(x * x.conjugate()) == x * x.conjugate()


def test_as_rational() -> None:
    assert (I * I).as_rational() == -1
    with pytest.raises(ValueError):
        I.as_rational()


@pytest.mark.parametrize(
    "text, expected", [
        ("1", ONE),
        ("-1", MINUS_ONE),
        ("i", I),
        ("-i", -I),
        ("omega", OMEGA),
        ("omega2", OMEGA2),
        ("zeta", ZETA),
        ("3/4", CycloNumber(Fraction(3, 4))),
        ("[1,0,0,1]", ONE + I),
        (5, CycloNumber(5)),
        (["0", "1/2", "0", "0"], ZETA * Fraction(1, 2)),
    ]
)
def test_parse_unit(text, expected: CycloNumber) -> None:
    assert parse_unit(text) == expected


@pytest.mark.parametrize("text", ["x", "[1,2]", "1/0q"])
def test_parse_unit_rejects(text: str) -> None:
    with pytest.raises(ValueError):
        parse_unit(text)


def test_render_uses_tags() -> None:
    assert render(I) == "i"
    assert render(OMEGA) == "omega"
    assert render(CycloNumber(Fraction(-2, 3))) == "-2/3"
