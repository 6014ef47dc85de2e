from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qbailey.cyclo import ONE, I
from qbailey.qproducts import INFINITE, PochFactor, poch_ratio, render_product
from qbailey.qseries import QSeries
from qbailey.recognizer import (
    RecognitionError, pattern_to_product, periodicity_fit, product_exponents, recognize,
    recognize_identity, rescale_to_integer_lattice
)


def euler_product(exponents, order: int) -> QSeries:
    """prod (1 - q^n)^(-c_n) for c_1, c_2, ..."""
    factors = [
        PochFactor(ONE, n, ONE, n, 1, -c) for n, c in enumerate(exponents, start=1) if c
    ]
    return poch_ratio(factors, order)


def test_trivial_products() -> None:
    assert product_exponents(QSeries.one(12), 12) == [0] * 11
    partitions = poch_ratio([PochFactor(ONE, 1, ONE, 1, INFINITE, -1)], 15)
    assert product_exponents(partitions, 15) == [1] * 14
    assert product_exponents(QSeries.one(5), 0) == []


def test_round_trip_of_random_exponents() -> None:
    rng = random.Random(11)
    exponents = [rng.randint(-2, 2) for _ in range(15)]
    assert product_exponents(euler_product(exponents, 16), 16) == exponents


def test_periodicity_fit() -> None:
    assert periodicity_fit([1, 0, 0, 1, 0] * 3, 5) == (5, (1, 0, 0, 1, 0))
    assert periodicity_fit([2] * 6, 3) == (1, (2,))
    # each period needs two further confirmations
    assert periodicity_fit([1, 0, 0, 1, 0] * 2, 5) is None
    assert periodicity_fit(list(range(1, 30)), 9) is None
    assert periodicity_fit([], 4) is None


def test_pattern_to_product() -> None:
    product = pattern_to_product(5, (1, 0, 0, 1, 0))
    assert render_product(product) == "(q,q^4;q^5)_{inf}^(-1)"
    assert render_product(pattern_to_product(2, (0, 0))) == "1"
    with pytest.raises(RecognitionError):
        pattern_to_product(3, (1, 0))


def test_recognize_rogers_ramanujan() -> None:
    f = euler_product([1, 0, 0, 1, 0] * 6, 31)
    result = recognize(f)
    assert result.scale == 1
    assert result.fit == (5, (1, 0, 0, 1, 0))
    data = result.to_dict()
    assert data["period"] == 5
    assert data["pattern"] == [1, 0, 0, 1, 0]
    assert data["product"] == "(q,q^4;q^5)_{inf}^(-1)"


def test_recognize_rescales_half_integer_exponents() -> None:
    # 1/(q^(1/2);q^(1/2))_inf becomes 1/(q;q)_inf in q -> q^2
    f = poch_ratio([PochFactor(ONE, Fraction(1, 2), ONE, Fraction(1, 2), INFINITE, -1)], 10)
    g, scale = rescale_to_integer_lattice(f)
    assert scale == 2
    assert g.order == 20
    result = recognize(f)
    assert result.scale == 2
    assert result.fit == (1, (1,))


def test_recognize_without_period() -> None:
    result = recognize(euler_product(list(range(1, 13)), 13))
    assert result.fit is None
    assert result.product is None
    assert result.to_dict()["period"] is None


def test_recognition_errors() -> None:
    with pytest.raises(RecognitionError):
        recognize(QSeries.one())
    with pytest.raises(RecognitionError):
        product_exponents(QSeries({0: 2}, 10), 10)
    with pytest.raises(RecognitionError):
        product_exponents(QSeries({0: 1, 1: Fraction(1, 2)}, 10), 10)
    with pytest.raises(RecognitionError):
        product_exponents(QSeries({0: 1, 1: I}, 10), 10)
    with pytest.raises(RecognitionError):
        product_exponents(QSeries({0: 1}, 10), 12)
    with pytest.raises(RecognitionError):
        product_exponents(QSeries({0: 1, Fraction(1, 2): 1}, 10), 10)


@pytest.mark.parametrize("i_id, pattern", [
    ("RRa1", (1, 0, 0, 1, 0)),
    ("RRa2", (0, 1, 1, 0, 0)),
])
def test_recognize_identity(i_id: str, pattern) -> None:
    result = recognize_identity(i_id, 30)
    assert result.matches
    assert result.lhs.fit == (5, pattern)
    assert result.to_dict()["lhs"]["period"] == 5
