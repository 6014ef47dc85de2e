from __future__ import annotations

from typing import Sequence

import pytest

from qbailey.constants import TRANSFORM_IDS
from qbailey.cyclo import ONE
from qbailey.hypergeom import (
    EXAMPLE_ASSIGNMENTS, AssignmentError, HypergeometricError, MaxTermsError,
    NonTerminatingError, PhiSpec, WSpec, parse_assignment, phi_eval, transformation_sides,
    verify_transformation, vwp_order, w_eval
)
from qbailey.monomial import Monomial
from qbailey.qproducts import INFINITE, PochFactor, ProductTerm, poch_ratio
from qbailey.qseries import Order, QSeries, series_equal_to_order, series_sum

Q = Monomial(ONE, 1)


def m(unit, exp) -> Monomial:
    return Monomial(unit, exp)


def phi_oracle(upper: Sequence[Monomial], lower: Sequence[Monomial], z: Monomial, terms: int,
               order: Order) -> QSeries:
    """Term-by-term summation with every Pochhammer symbol expanded on its own."""
    parts = []
    for r in range(terms):
        factors = [PochFactor.of(u, Q, r) for u in upper]
        factors += [PochFactor.of(l, Q, r, -1) for l in lower]
        factors.append(PochFactor.of(Q, Q, r, -1))
        zr = z**r
        parts.append(ProductTerm(zr.unit, zr.exp, tuple(factors)).evaluate(order))
    return series_sum(parts, order)


def test_phi_against_oracle() -> None:
    s = PhiSpec((Q, Q), (m(1, 2),), Q, Q)
    assert series_equal_to_order(phi_eval(s, 5), phi_oracle(s.upper, s.lower, Q, 6, 5), 5)


def test_terminating_upper_parameter() -> None:
    # (q^-2;q)_r vanishes for r >= 3
    s = PhiSpec((m(1, -2), m(3, 1)), (m(1, 2),), Q, m(1, 2))
    expected = phi_oracle(s.upper, s.lower, s.argument, 3, 20)
    assert series_equal_to_order(phi_eval(s, 20), expected, 20)


def test_q_binomial_theorem() -> None:
    # 1phi0(a;;q,z) = (az;q)_inf/(z;q)_inf with a = q^2, z = q
    s = PhiSpec((m(1, 2),), (), Q, Q)
    rhs = poch_ratio([PochFactor.of(m(1, 3), Q), PochFactor.of(Q, Q, INFINITE, -1)], 20)
    assert series_equal_to_order(phi_eval(s, 20), rhs, 20)


def test_q_chu_vandermonde() -> None:
    # 2phi1(q^-n, b; c; q, q) = (c/b;q)_n b^n / (c;q)_n
    n, b, c = 3, m(2, 1), m(1, 3)
    s = PhiSpec((m(1, -n), b), (c,), Q, Q)
    bn = b**n
    rhs = ProductTerm(bn.unit, bn.exp, (PochFactor.of(c / b, Q, n), PochFactor.of(c, Q, n, -1)))
    assert series_equal_to_order(phi_eval(s, 30), rhs.evaluate(30), 30)


def test_q_gauss() -> None:
    # 2phi1(a, b; c; q, c/(ab)) = (c/a, c/b; q)_inf / (c, c/(ab); q)_inf
    a, b, c = Q, Q, m(1, 3)
    s = PhiSpec((a, b), (c,), Q, c / (a * b))
    rhs = poch_ratio([
        PochFactor.of(c / a, Q), PochFactor.of(c / b, Q), PochFactor.of(c, Q, INFINITE, -1),
        PochFactor.of(c / (a * b), Q, INFINITE, -1)
    ], 25)
    assert series_equal_to_order(phi_eval(s, 25), rhs, 25)
    assert series_equal_to_order(rhs, QSeries({0: 1, 1: 1}), 25)


def test_terminating_very_well_poised_sum() -> None:
    # 6W5(a; b, c, q^-n; q, a q^(n+1)/(bc)) = (aq, aq/(bc); q)_n / (aq/b, aq/c; q)_n
    a, b, c, n = m(1, 2), Q, m(2, 1), 2
    s = WSpec(a, (b, c, m(1, -n)), Q, a * m(1, n + 1) / (b * c))
    aq = a * Q
    rhs = poch_ratio([
        PochFactor.of(aq, Q, n), PochFactor.of(aq / (b * c), Q, n),
        PochFactor.of(aq / b, Q, n, -1), PochFactor.of(aq / c, Q, n, -1)
    ], 30)
    lhs = w_eval(s, 30)
    assert series_equal_to_order(lhs, rhs, 30)
    assert lhs.is_rational()


def test_w_expands_to_phi() -> None:
    s = WSpec(m(1, 2), (m(1, -3), m(3, 1)), Q, m(1, 2))
    expanded = s.expand()
    assert expanded.upper[:3] == (m(1, 2), m(1, 2), m(-1, 2))
    assert expanded.lower[:2] == (Q, m(-1, 1))
    assert w_eval(s, 20) == phi_eval(expanded, 20)
    # empty tail gives a 3phi2
    assert w_eval(WSpec(m(1, 2), (), Q, Q), 10).coefficient(0) == 1


def test_phi_errors() -> None:
    with pytest.raises(HypergeometricError):
        PhiSpec((Q,), (Q,))
    with pytest.raises(NonTerminatingError):
        phi_eval(PhiSpec((m(1, 2),), (), Q, m(1, 0)), 10)
    with pytest.raises(MaxTermsError):
        phi_eval(PhiSpec((m(1, 2),), (), Q, Q), 50, max_terms=3)
    with pytest.raises(HypergeometricError):
        w_eval(WSpec(m(2, 1), (), Q, Q), 10)
    with pytest.raises(HypergeometricError):
        phi_eval(PhiSpec((m(1, 2),), (), Q, Q), float("inf"))


EXAMPLES = [(t_id, values, n) for t_id in TRANSFORM_IDS for values, n in EXAMPLE_ASSIGNMENTS[t_id]]


@pytest.mark.parametrize("t_id, values, n", EXAMPLES)
def test_transformations(t_id: str, values, n) -> None:
    result = verify_transformation(t_id, parse_assignment(values), n, 40)
    assert result.equal, result.comparison


@pytest.mark.parametrize("t_id", ["VJ3", "VJ4"])
def test_cubic_transformations_are_rational(t_id: str) -> None:
    values, n = EXAMPLE_ASSIGNMENTS[t_id][0]
    result = verify_transformation(t_id, parse_assignment(values), n, 20)
    assert result.equal
    assert result.rational


@pytest.mark.parametrize("t_id, values, n", [e for e in EXAMPLES if e[0] in ("VJ2", "VJ4")])
def test_left_side_depends_on_argument(t_id: str, values, n) -> None:
    # more than the constant term of the very-well-poised side falls below the order
    sides = transformation_sides(t_id, parse_assignment(values), n)
    lhs = w_eval(sides.lhs, 40)
    assert not series_equal_to_order(lhs, QSeries.one(), 40)


def test_each_transformation_has_three_assignments() -> None:
    for t_id in TRANSFORM_IDS:
        assert len(EXAMPLE_ASSIGNMENTS[t_id]) >= 3


def test_perturbed_side_is_detected() -> None:
    values = {"a": "q^4", "b": "q", "c": "q^2", "d": "q^3", "e": "q"}
    perturbed = dict(values, d="2*q^3")
    result = verify_transformation(
        "WQW", parse_assignment(values), 3, 20, rhs_assignment=parse_assignment(perturbed)
    )
    assert not result.equal
    assert result.comparison.exponent is not None


def test_assignment_errors() -> None:
    with pytest.raises(AssignmentError):
        transformation_sides("NOSUCH", {}, 2)
    with pytest.raises(AssignmentError):
        transformation_sides("WQW", parse_assignment({"a": "q^4"}), 2)
    with pytest.raises(AssignmentError):
        transformation_sides("VJ3", parse_assignment({"a": "q^6", "x": "q", "y": "q"}), None)
    with pytest.raises(AssignmentError):
        parse_assignment({"a": "inf"})


@pytest.mark.parametrize("dek, t", [((2, 1, 5), 9), ((1, 1, 2), 5), ((1, 2, 3), 7), ((3, 1, 4), 5)])
def test_vwp_order(dek, t: int) -> None:
    assert vwp_order(*dek) == t
