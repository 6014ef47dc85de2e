"""The six transformation formulas checked at monomial specializations.

Each formula is a builder from an assignment of its symbols to monomials (and the terminating
index n) to the two sides: a very-well-poised series on the left, a Pochhammer prefactor times a
balanced phi series on the right.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from qbailey.constants import DEFAULT_MAX_TERMS
from qbailey.cyclo import OMEGA, OMEGA2, ONE
from qbailey.hypergeom.series import HypergeometricError, PhiSpec, WSpec, phi_eval, w_eval
from qbailey.monomial import Monomial, parse_monomial
from qbailey.qproducts import INFINITE, ZERO_DIVISOR, PochFactor, ZeroDivisorError, poch_ratio
from qbailey.qseries import Comparison, Order, QSeries, as_exponent, series_equal_to_order

logger = logging.getLogger(__name__)

Q = Monomial(ONE, 1)
Q2 = Monomial(ONE, 2)
Q3 = Monomial(ONE, 3)


class AssignmentError(KeyError):
    """Raised when an assignment misses a symbol of the formula or a root leaves the field."""


@dataclass(frozen=True)
class TransformationSides:
    lhs: WSpec
    prefactor: Tuple[PochFactor, ...]
    rhs: PhiSpec


@dataclass(frozen=True)
class TransformationResult:
    t_id: str
    comparison: Comparison
    lhs: QSeries
    rhs: QSeries

    @property
    def equal(self) -> bool:
        return self.comparison.equal

    @property
    def rational(self) -> bool:
        return self.lhs.is_rational() and self.rhs.is_rational()


def _root(m: Monomial, k: int, name: str) -> Monomial:
    root = m.root(k)
    if root is None:
        raise AssignmentError(f"{name} = {m} has no {k}-th root in Q(zeta_12)")
    return root


def _ratio(num: List[Monomial], den: List[Monomial], step: Monomial, n) -> Tuple[PochFactor, ...]:
    return tuple(PochFactor.of(m, step, n, 1) for m in num) + tuple(
        PochFactor.of(m, step, n, -1) for m in den)


def _wqw(v: Mapping[str, Monomial], n: int) -> TransformationSides:
    a, b, c, d, e = (v[k] for k in "abcde")
    qn = Monomial(ONE, -n)
    lhs = WSpec(a, (b, c, d, e, qn), Q, a * a * Monomial(ONE, n + 2) / (b * c * d * e))
    prefactor = _ratio([a * Q, a * Q / (d * e)], [a * Q / d, a * Q / e], Q, n)
    rhs = PhiSpec((a * Q / (b * c), d, e, qn), (a * Q / b, a * Q / c, d * e * qn / a), Q, Q)
    return TransformationSides(lhs, prefactor, rhs)


def _vj1(v: Mapping[str, Monomial], n: int) -> TransformationSides:
    a, b, x, y = (v[k] for k in "abxy")
    qn = Monomial(ONE, -n)
    tail = (b, x, -x, y, -y, qn, -qn)
    argument = -(a**3 * Monomial(ONE, 2 * n + 3) / (b * x * x * y * y))
    q2n = Monomial(ONE, -2 * n)
    a2q2 = a * a * Q2
    prefactor = _ratio([a2q2, a2q2 / (x * x * y * y)], [a2q2 / (x * x), a2q2 / (y * y)], Q2, n)
    rhs = PhiSpec(
        (q2n, x * x, y * y, -(a * Q / b), -(a * Q2 / b)),
        (x * x * y * y * q2n / (a * a), a2q2 / (b * b), -(a * Q), -(a * Q2)),
        Q2, Q2
    )
    return TransformationSides(WSpec(a, tail, Q, argument), prefactor, rhs)


def _vj2(v: Mapping[str, Monomial], n: int) -> TransformationSides:
    a, b, x, y = (v[k] for k in "abxy")
    qn = Monomial(ONE, -n)
    # x, xq and q^(1-n), q^-n pair up well-poised in base q^2
    tail = (b, x, x * Q, y, y * Q, qn * Q, qn)
    argument = a**3 * Monomial(ONE, 2 * n + 3) / (b * x * x * y * y)
    prefactor = _ratio([a * Q, a * Q / (x * y)], [a * Q / x, a * Q / y], Q, n)
    s = _root(a * Q / b, 2, "aq/b")
    t = _root(a * Q, 2, "aq")
    rhs = PhiSpec((x, y, s, -s, qn), (t, -t, a * Q / b, x * y * qn / a), Q, Q)
    return TransformationSides(WSpec(a, tail, Q2, argument), prefactor, rhs)


def _vj3(v: Mapping[str, Monomial], n: int) -> TransformationSides:
    a, x, y = (v[k] for k in "axy")
    qn = Monomial(ONE, -n)
    w, w2 = Monomial(OMEGA, 0), Monomial(OMEGA2, 0)
    tail = (x, w * x, w2 * x, y, w * y, w2 * y, qn, w * qn, w2 * qn)
    argument = a**4 * Monomial(ONE, 3 * n + 4) / (x**3 * y**3)
    a3q3 = a**3 * Q3
    prefactor = _ratio([a3q3, a3q3 / (x**3 * y**3)], [a3q3 / x**3, a3q3 / y**3], Q3, n)
    aq32 = _root((a * Q)**3, 2, "(aq)^3")
    a32q3 = _root(a**3, 2, "a^3") * Q3
    q3n = Monomial(ONE, -3 * n)
    rhs = PhiSpec(
        (q3n, x**3, y**3, a * Q, a * Q2, a * Q3),
        (aq32, -aq32, a32q3, -a32q3, x**3 * y**3 * q3n / a**3),
        Q3, Q3
    )
    return TransformationSides(WSpec(a, tail, Q, argument), prefactor, rhs)


def _vj4(v: Mapping[str, Monomial], n: int) -> TransformationSides:
    a, x, y = (v[k] for k in "axy")
    qn = Monomial(ONE, -n)
    # the triples x, xq, xq^2 pair up well-poised in base q^3
    tail = (x, x * Q, x * Q2, y, y * Q, y * Q2, qn * Q2, qn * Q, qn)
    argument = a**4 * Monomial(ONE, 3 * n + 3) / (x**3 * y**3)
    prefactor = _ratio([a * Q, a * Q / (x * y)], [a * Q / x, a * Q / y], Q, n)
    cube = _root(a, 3, "a")
    w, w2 = Monomial(OMEGA, 0), Monomial(OMEGA2, 0)
    sa = _root(a, 2, "a")
    saq = _root(a * Q, 2, "aq")
    rhs = PhiSpec((cube, w * cube, w2 * cube, x, y, qn), (sa, -sa, saq, -saq, x * y * qn / a), Q, Q)
    return TransformationSides(WSpec(a, tail, Q3, argument), prefactor, rhs)


def _vwp87(v: Mapping[str, Monomial], n: Optional[int]) -> TransformationSides:
    a, x, y = (v[k] for k in "axy")
    sy = _root(y, 2, "y")
    syq = _root(y * Q, 2, "yq")
    argument = a * a * Q / (y * y * x)
    lhs = WSpec(a, (sy, -sy, syq, -syq, x), Q, argument)
    prefactor = _ratio([a * Q, a * a * Q / (y * y)], [a * Q / y, a * a * Q / y], Q, INFINITE)
    rhs = PhiSpec((y, x * y / a), (a * Q / x,), Q, argument)
    return TransformationSides(lhs, prefactor, rhs)


# id -> (symbols, terminating, builder)
TRANSFORMATIONS: Dict[str, Tuple[str, bool, Callable]] = {
    "WQW": ("abcde", True, _wqw),
    "VJ1": ("abxy", True, _vj1),
    "VJ2": ("abxy", True, _vj2),
    "VJ3": ("axy", True, _vj3),
    "VJ4": ("axy", True, _vj4),
    "VWP87": ("axy", False, _vwp87),
}

# Assignments that avoid vanishing denominators before termination
EXAMPLE_ASSIGNMENTS: Dict[str, List[Tuple[Dict[str, str], Optional[int]]]] = {
    "WQW": [
        ({"a": "q^4", "b": "q", "c": "q^2", "d": "q^3", "e": "q"}, 3),
        ({"a": "q^2", "b": "2*q", "c": "q^2", "d": "q", "e": "-q^2"}, 4),
        ({"a": "q^6", "b": "q^2", "c": "3*q", "d": "q^2", "e": "q^3"}, 2),
    ],
    "VJ1": [
        ({"a": "q^2", "b": "q", "x": "q", "y": "2*q^2"}, 2),
        ({"a": "q^4", "b": "3*q^2", "x": "2*q^2", "y": "q^3"}, 3),
        ({"a": "q^6", "b": "q", "x": "q^2", "y": "q"}, 4),
    ],
    "VJ2": [
        ({"a": "q", "b": "q", "x": "2*q^2", "y": "3*q^3"}, 2),
        ({"a": "q^4", "b": "q^2", "x": "q", "y": "q^2"}, 3),
        ({"a": "q^3", "b": "4*q", "x": "q", "y": "-q^2"}, 4),
    ],
    "VJ3": [
        ({"a": "q^6", "x": "q", "y": "q^2"}, 2),
        ({"a": "q^4", "x": "q^2", "y": "2*q"}, 3),
        ({"a": "q^2", "x": "q", "y": "q"}, 2),
    ],
    "VJ4": [
        ({"a": "q^6", "x": "q", "y": "q^2"}, 3),
        ({"a": "q^3", "x": "2*q", "y": "q"}, 4),
        ({"a": "q^3", "x": "q", "y": "3*q^2"}, 6),
    ],
    "VWP87": [
        ({"a": "q^4", "x": "q", "y": "q^2"}, None),
        ({"a": "q^3", "x": "2*q", "y": "q"}, None),
        ({"a": "q^4", "x": "q^2", "y": "4*q^2"}, None),
    ],
}


def parse_assignment(values: Mapping[str, str]) -> Dict[str, Monomial]:
    result = {}
    for key, text in values.items():
        value = parse_monomial(text)
        if not isinstance(value, Monomial):
            raise AssignmentError(f"{key} cannot be sent to infinity here")
        result[key] = value
    return result


def transformation_sides(t_id: str, assignment: Mapping[str, Monomial],
                         n: Optional[int] = None) -> TransformationSides:
    try:
        symbols, terminating, builder = TRANSFORMATIONS[t_id]
    except KeyError:
        raise AssignmentError(f"unknown transformation {t_id!r}") from None
    missing = [s for s in symbols if s not in assignment]
    if missing:
        raise AssignmentError(f"{t_id} assignment misses {', '.join(missing)}")
    if terminating and (n is None or n < 0):
        raise AssignmentError(f"{t_id} needs a nonnegative terminating index n")
    return builder(assignment, n)


def _prefactor(factors: Tuple[PochFactor, ...], order: Order) -> QSeries:
    result = poch_ratio(factors, order)
    if result is ZERO_DIVISOR:
        raise ZeroDivisorError("transformation prefactor has a vanishing denominator factor")
    return result


def evaluate_sides(sides: TransformationSides, order: Order,
                   max_terms: int = DEFAULT_MAX_TERMS) -> Tuple[QSeries, QSeries]:
    order = as_exponent(order)
    lhs = w_eval(sides.lhs, order, max_terms)

    pre = _prefactor(sides.prefactor, order)
    if not pre.terms:
        return lhs, pre
    v_pre = pre.valuation()
    phi = phi_eval(sides.rhs, order - v_pre, max_terms)
    v_phi = phi.valuation()
    if phi.terms and v_phi < 0:
        pre = _prefactor(sides.prefactor, order - v_phi)
    return lhs, (pre * phi).truncate(order)


def verify_transformation(t_id: str, assignment: Mapping[str, Monomial], n: Optional[int],
                          order: Order, rhs_assignment: Optional[Mapping[str, Monomial]] = None,
                          max_terms: int = DEFAULT_MAX_TERMS) -> TransformationResult:
    """Evaluate both sides and compare them to the given order.

    `rhs_assignment` replaces the assignment on the right-hand side only.
    """
    sides = transformation_sides(t_id, assignment, n)
    lhs, _ = evaluate_sides(sides, order, max_terms)
    if rhs_assignment is not None:
        sides = transformation_sides(t_id, rhs_assignment, n)
    _, rhs = evaluate_sides(sides, order, max_terms)

    comparison = series_equal_to_order(lhs, rhs, order)
    if comparison.equal:
        logger.info(f"Transformation {t_id} n={n} equal to order {order}")
    else:
        logger.warning(
            f"Transformation {t_id} n={n} differs at q^{comparison.exponent}: "
            f"{comparison.left} != {comparison.right}"
        )
    return TransformationResult(t_id, comparison, lhs, rhs)


def vwp_order(d: int, e: int, k: int) -> int:
    """Size t of the very-well-poised t+1 phi t whose limit gives the (d,e,k) pair."""
    if min(d, e, k) < 1:
        raise HypergeometricError(f"(d,e,k) must be positive, got {(d, e, k)}")
    return e * d + abs(2 * k - e * d - 2 * d + 1) + 2


__all__ = (
    "AssignmentError", "EXAMPLE_ASSIGNMENTS", "TRANSFORMATIONS", "TransformationResult",
    "TransformationSides", "evaluate_sides", "parse_assignment", "transformation_sides",
    "verify_transformation", "vwp_order"
)
