from __future__ import annotations

import math
from fractions import Fraction

import pytest

from qbailey.cyclo import I, ONE, CycloNumber
from qbailey.qseries import (
    EXACT, QSeries, SeriesInversionError, TruncationError, as_exponent, rational_coefficients,
    series_equal_to_order, series_sum
)


def poly(*coefficients: int, order=EXACT) -> QSeries:
    return QSeries(dict(enumerate(coefficients)), order)


def test_construction_drops_zeros_and_tail() -> None:
    f = QSeries({0: 1, 1: 0, 2: 3, 7: 1}, 5)
    assert f.items() == [(0, ONE), (2, CycloNumber(3))]
    assert f.order == 5
    assert QSeries.zero().is_exact()
    assert not QSeries.zero(10)


def test_as_exponent_normalizes() -> None:
    assert as_exponent("4/2") == 2
    assert type(as_exponent(Fraction(6, 3))) is int
    assert as_exponent("1/2") == Fraction(1, 2)
    assert math.isinf(as_exponent(math.inf))


def test_ring_axioms() -> None:
    f = QSeries({0: 1, 1: -2, Fraction(3, 2): I}, 12)
    g = QSeries({0: 3, 2: 1, 5: Fraction(1, 2)}, 10)
    h = QSeries({1: 1, 4: -1}, 11)
    order = 9
    assert series_equal_to_order(f * g, g * f, order)
    assert series_equal_to_order((f * g) * h, f * (g * h), order)
    assert series_equal_to_order(f * (g + h), f * g + f * h, order)
    assert series_equal_to_order(f - f, QSeries.zero(order), order)
    assert series_equal_to_order(f * QSeries.one(), f, order)


def test_product_order_uses_valuations() -> None:
    f = poly(1, 1, 1, order=10)
    g = QSeries.monomial(1, 3)
    assert (f * g).order == 13
    assert (f * QSeries({2: 1}, 8)).order == 8


def test_addition_takes_smaller_order() -> None:
    f = poly(1, 2, 3, order=5)
    g = poly(0, 0, 0, 0, 0, 0, 1, order=20)
    s = f + g
    assert s.order == 5
    assert s.coefficient(4) == 0
    with pytest.raises(TruncationError):
        s.coefficient(6)


def test_invert_round_trip() -> None:
    f = poly(1, -1)  # 1 - q
    inv = f.invert(10)
    assert inv == QSeries({k: 1 for k in range(10)}, 10)
    g = QSeries({0: 2, 1: I, 3: -1, Fraction(7, 2): 5}, 20)
    assert series_equal_to_order(g * g.invert(), QSeries.one(), 20)


def test_invert_with_positive_valuation() -> None:
    f = QSeries({2: 1, 3: -1}, 12)
    inv = f.invert()
    # q^-2 / (1 - q), known to order 12 - 2*2
    assert inv.order == 8
    assert inv.coefficient(-2) == 1
    assert inv.coefficient(5) == 1


def test_invert_errors() -> None:
    with pytest.raises(SeriesInversionError):
        QSeries.zero(10).invert()
    with pytest.raises(TruncationError):
        poly(1, -1).invert()


def test_binomials() -> None:
    f = poly(1, 2, 3, 4, order=10)
    assert f.mul_binomial(1, 2).div_binomial(1, 2) == f
    assert poly(1, order=6).div_binomial(1, 1) == QSeries({k: 1 for k in range(6)}, 6)
    with pytest.raises(TruncationError):
        poly(1).div_binomial(1, 1)


def test_shift_scale_and_truncate() -> None:
    f = poly(1, 1, order=4)
    assert f.shift(2) == QSeries({2: 1, 3: 1}, 6)
    assert f.scale_exponents(Fraction(1, 2)) == QSeries({0: 1, Fraction(1, 2): 1}, 2)
    assert f.truncate(1) == QSeries({0: 1}, 1)
    assert f.truncate(10) is f
    assert (f * 3).coefficient(1) == 3


def test_equal_to_order_reports_first_mismatch() -> None:
    f = poly(1, 2, 3, order=10)
    g = poly(1, 2, 4, order=10)
    comparison = f.equal_to_order(g, 10)
    assert not comparison
    assert comparison.exponent == 2
    assert comparison.left == 3 and comparison.right == 4
    assert f.equal_to_order(g, 2)
    with pytest.raises(TruncationError):
        f.equal_to_order(g, 11)


def test_series_sum() -> None:
    parts = [QSeries({k: 1}, 10) for k in range(12)]
    total = series_sum(parts, 8)
    assert total == QSeries({k: 1 for k in range(8)}, 8)
    with pytest.raises(TruncationError):
        series_sum([poly(1, order=3)], 5)


def test_power() -> None:
    f = poly(1, 1)
    assert f**3 == poly(1, 3, 3, 1)
    assert f**0 == QSeries.one()


def test_rationality_and_denominators() -> None:
    f = QSeries({0: 1, Fraction(1, 3): 2, Fraction(5, 2): 1}, 6)
    assert f.is_rational()
    assert f.exponent_denominator() == 6
    assert not QSeries({1: I}).is_rational()
    assert rational_coefficients(poly(1, 0, 2, order=5), 4) == [1, 0, 2, 0]


def test_text_and_dump() -> None:
    f = QSeries({0: 1, 1: -1, 2: 3}, 4)
    assert str(f) == "1 - q + 3*q^2 (mod q^4)"
    assert f.to_dump()[1] == ["1", ["-1", "0", "0", "0"]]
