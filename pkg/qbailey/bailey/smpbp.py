"""The standard multiparameter Bailey pair and the definitional beta.

Everything here lives in the rescaled variables: a and q are already replaced by a^e and q^e, so
an alpha term at index n = d*r is a monomial in a, q times Pochhammer symbols in the bases q^d
and q^(2d), and beta is summed over (q^e;q^e) and (a^e q^e;q^e).
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Tuple, Union

from qbailey.cyclo import MINUS_ONE, ONE, cyclo_pow
from qbailey.monomial import Monomial
from qbailey.qproducts import (
    ZERO_DIVISOR, PochFactor, ProductTerm, ZeroDivisorError, poch_lead, poch_ratio
)
from qbailey.qseries import (
    Comparison, Order, QSeries, as_exponent, series_equal_to_order, series_sum
)

logger = logging.getLogger(__name__)

AlphaFunction = Callable[[int, Order], QSeries]


class BaileyError(ValueError):
    """Raised when a Bailey pair, transform or lemma cannot be evaluated."""


class LimitError(BaileyError):
    """Raised when a limiting case of the lemma is undefined for the given parameters."""


class _BLimit:

    def __init__(self, name: str) -> None:
        self.name = name

    def __repr__(self) -> str:
        return self.name

    def __str__(self) -> str:
        return "0" if self.name == "B_TO_ZERO" else "inf"


B_TO_ZERO = _BLimit("B_TO_ZERO")
B_TO_INFINITY = _BLimit("B_TO_INFINITY")

BMode = Union[_BLimit, Monomial]


@dataclass(frozen=True)
class BaileyPairSpec:
    d: int
    e: int
    k: int
    a_spec: Monomial = field(default_factory=lambda: Monomial(ONE, 0))
    b_mode: BMode = B_TO_ZERO

    def __post_init__(self) -> None:
        if any(not isinstance(x, int) or x < 1 for x in (self.d, self.e, self.k)):
            raise BaileyError(f"(d,e,k) must be positive integers, got {(self.d, self.e, self.k)}")
        if not isinstance(self.b_mode, (_BLimit, Monomial)):
            raise BaileyError(f"invalid b mode {self.b_mode!r}")
        if isinstance(self.b_mode, Monomial) and self.b_mode.is_zero():
            raise BaileyError("a finite b must be nonzero, use B_TO_ZERO")

    @property
    def dek(self) -> Tuple[int, int, int]:
        return self.d, self.e, self.k

    @property
    def frame_a(self) -> Monomial:
        """a^e, the first argument of the Bailey pair."""
        return self.a_spec**self.e

    @property
    def frame_q(self) -> Monomial:
        return Monomial(ONE, self.e)

    def __str__(self) -> str:
        return f"({self.d},{self.e},{self.k}) a={self.a_spec} b={self.b_mode}"


def alpha_term(p: BaileyPairSpec, r: int) -> ProductTerm:
    """alpha at index n = d*r as a monomial times Pochhammer symbols.

    The ratio (a;q^d)_r / (a;q^(2d))_r is left to the binomial cancellation of the Pochhammer
    product, which keeps a = 1 regular.
    """
    if r < 0:
        raise BaileyError(f"alpha index must be nonnegative, got {r}")
    d, k = p.d, p.k
    a = p.a_spec
    qd = Monomial(ONE, d)
    q2d = Monomial(ONE, 2 * d)
    factors = [
        PochFactor.of(a * q2d, q2d, r, 1),
        PochFactor.of(a, qd, r, 1),
        PochFactor.of(a, q2d, r, -1),
        PochFactor.of(qd, qd, r, -1),
    ]

    if p.b_mode is B_TO_ZERO:
        half = Fraction(d, 2)
        mono = a**((k - d) * r) * Monomial(ONE, (d * k - d * d + half) * r * r - half * r)
        sign = cyclo_pow(MINUS_ONE, r)
    elif p.b_mode is B_TO_INFINITY:
        exp = (k - d + 1) * d * r * r + Fraction(d * r * (r - 1), 2)
        mono = a**((k - d + 1) * r) * Monomial(ONE, exp)
        sign = cyclo_pow(MINUS_ONE, r)
    else:
        b = p.b_mode
        mono = a**((k - d + 1) * r) * Monomial(ONE, (k - d + 1) * d * r * r) / b**r
        sign = ONE
        factors.append(PochFactor.of(b, qd, r, 1))
        factors.append(PochFactor.of(a * qd / b, qd, r, -1))
    return ProductTerm(sign * mono.unit, mono.exp, tuple(factors))


def smpbp_alpha(p: BaileyPairSpec, n: int, order: Order) -> QSeries:
    if n < 0:
        raise BaileyError(f"alpha index must be nonnegative, got {n}")
    order = as_exponent(order)
    if n % p.d:
        return QSeries.zero(order)
    result = alpha_term(p, n // p.d).evaluate(order)
    if result is ZERO_DIVISOR:
        raise BaileyError(f"alpha_{n} of {p} has a vanishing denominator factor")
    return result


def beta_denominators(a_spec: Monomial, e: int, n: int, s: int) -> Tuple[PochFactor, PochFactor]:
    """(q^e;q^e)_(n-s) (a^e q^e;q^e)_(n+s) as denominator factors."""
    q = Monomial(ONE, e)
    return (
        PochFactor.of(q, q, n - s, -1),
        PochFactor.of(a_spec**e * q, q, n + s, -1),
    )


def beta_from_alpha(alpha_fn: AlphaFunction, a_spec: Monomial, e: int, n: int,
                    order: Order) -> QSeries:
    """beta_n as the sum over s <= n of alpha_s / ((q^e;q^e)_(n-s) (a^e q^e;q^e)_(n+s))."""
    if n < 0:
        raise BaileyError(f"beta index must be nonnegative, got {n}")
    order = as_exponent(order)
    if math.isinf(order):
        raise BaileyError("beta needs a finite order")

    parts = []
    for s in range(n + 1):
        den = beta_denominators(a_spec, e, n, s)
        lead = poch_lead(den)
        if lead is ZERO_DIVISOR:
            raise ZeroDivisorError(f"beta_{n} at a = {a_spec}: vanishing denominator at s = {s}")
        alpha = alpha_fn(s, order - lead[1])
        if not alpha.terms:
            continue
        ratio = poch_ratio(den, order - alpha.valuation())
        parts.append((alpha * ratio).truncate(order))
    return series_sum(parts, order)


def smpbp_beta(p: BaileyPairSpec, n: int, order: Order) -> QSeries:
    return beta_from_alpha(lambda s, o: smpbp_alpha(p, s, o), p.a_spec, p.e, n, order)


@dataclass(frozen=True)
class AlphaLimitCheck:
    n: int
    label: str
    comparison: Comparison


@dataclass
class AlphaLimitReport:
    dek: Tuple[int, int, int]
    a_spec: Monomial
    order: Order
    checks: List[AlphaLimitCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.comparison.equal for c in self.checks)


def _extreme_b(term: ProductTerm, a_spec: Monomial, d: int, r: int, order: Order) -> int:
    """An exponent M so that b = q^M and b = q^(-M) agree with the limits below the order."""
    lead = term.lead()
    lead_exp = lead[1] if lead else 0
    return (math.ceil(order) + math.ceil(abs(a_spec.exp)) + d * (r + 1)
            + max(0, -math.floor(lead_exp)) + 1)


def alpha_limit_check(d: int, e: int, k: int, a_spec: Monomial, n_max: int,
                      order: Order) -> AlphaLimitReport:
    """Compare the b -> 0 alpha at (d,e,k) with the b -> infinity alpha at (d,e,k-1).

    Both limits are also compared with the finite-b alpha at b = q^M and b = q^(-M).
    """
    if k < 2:
        raise BaileyError(f"the limit comparison needs k >= 2, got k = {k}")
    order = as_exponent(order)
    report = AlphaLimitReport((d, e, k), a_spec, order)
    to_zero = BaileyPairSpec(d, e, k, a_spec, B_TO_ZERO)
    to_infinity = BaileyPairSpec(d, e, k - 1, a_spec, B_TO_INFINITY)

    for n in range(0, n_max + 1, d):
        r = n // d
        zero_term = alpha_term(to_zero, r)
        zero_value = smpbp_alpha(to_zero, n, order)
        report.checks.append(AlphaLimitCheck(
            n, "b->0 at k vs b->inf at k-1",
            series_equal_to_order(zero_value, smpbp_alpha(to_infinity, n, order), order)
        ))

        m = _extreme_b(zero_term, a_spec, d, r, order)
        small_b = BaileyPairSpec(d, e, k, a_spec, Monomial(ONE, m))
        large_b = BaileyPairSpec(d, e, k - 1, a_spec, Monomial(ONE, -m))
        report.checks.append(AlphaLimitCheck(
            n, f"b->0 vs b=q^{m}",
            series_equal_to_order(zero_value, smpbp_alpha(small_b, n, order), order)
        ))
        report.checks.append(AlphaLimitCheck(
            n, f"b->inf vs b=q^-{m}",
            series_equal_to_order(
                smpbp_alpha(to_infinity, n, order), smpbp_alpha(large_b, n, order), order
            )
        ))

    for c in report.checks:
        if not c.comparison.equal:
            logger.warning(
                f"Alpha limit ({d},{e},{k}) a={a_spec} n={c.n} {c.label}: differs at "
                f"q^{c.comparison.exponent}"
            )
    if report.passed:
        logger.info(f"Alpha limits ({d},{e},{k}) a={a_spec} agree for n <= {n_max}")
    return report


__all__ = (
    "AlphaFunction", "AlphaLimitCheck", "AlphaLimitReport", "BMode", "B_TO_INFINITY", "B_TO_ZERO",
    "BaileyError", "BaileyPairSpec", "LimitError", "alpha_limit_check", "alpha_term",
    "beta_denominators", "beta_from_alpha", "smpbp_alpha", "smpbp_beta"
)
