"""Bailey transform check for finitely supported alpha and delta sequences."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence

from qbailey.bailey.smpbp import BaileyError
from qbailey.cyclo import ONE
from qbailey.monomial import Monomial
from qbailey.qproducts import ZERO_DIVISOR, PochFactor, ZeroDivisorError, poch_ratio
from qbailey.qseries import Comparison, Order, QSeries, as_exponent, series_sum

logger = logging.getLogger(__name__)

IndexedSeries = Callable[[int, Order], QSeries]

Q = Monomial(ONE, 1)


def _poch_inverse(base: Monomial, n: int, order: Order) -> QSeries:
    result = poch_ratio([PochFactor.of(base, Q, n, -1)], order)
    if result is ZERO_DIVISOR:
        raise ZeroDivisorError(f"1/({base};q)_{n} has a vanishing factor")
    return result


def canonical_u() -> IndexedSeries:
    """u_n = 1/(q;q)_n."""
    return lambda n, order: _poch_inverse(Q, n, order)


def canonical_v(a_spec: Monomial) -> IndexedSeries:
    """v_n = 1/(aq;q)_n."""
    return lambda n, order: _poch_inverse(a_spec * Q, n, order)


@dataclass
class TransformSequences:
    alpha: List[QSeries]
    delta: List[QSeries]
    u: IndexedSeries
    v: IndexedSeries

    @classmethod
    def canonical(cls, alpha: Sequence[QSeries], delta: Sequence[QSeries],
                  a_spec: Monomial = Monomial(ONE, 0)) -> "TransformSequences":
        return cls(list(alpha), list(delta), canonical_u(), canonical_v(a_spec))


@dataclass(frozen=True)
class TransformCheck:
    comparison: Comparison
    lhs: QSeries
    rhs: QSeries

    @property
    def equal(self) -> bool:
        return self.comparison.equal


def _min_valuation(series: Sequence[QSeries]) -> Order:
    values = [s.valuation() for s in series if s.terms]
    return min(values) if values else 0


def bailey_transform_check(s: TransformSequences, n_max: int, order: Order) -> TransformCheck:
    """Check sum alpha_n gamma_n = sum beta_n delta_n for delta supported on 0..n_max.

    beta_n = sum_(r<=n) alpha_r u_(n-r) v_(n+r) and gamma_n = sum_(r>=n) delta_r u_(r-n) v_(r+n).
    """
    order = as_exponent(order)
    if math.isinf(order):
        raise BaileyError("the transform check needs a finite order")
    if len(s.delta) > n_max + 1 and any(d.terms for d in s.delta[n_max + 1:]):
        raise BaileyError(f"delta must vanish beyond n = {n_max}")
    zero = QSeries.zero()
    alpha = [s.alpha[n] if n < len(s.alpha) else zero for n in range(n_max + 1)]
    delta = [s.delta[n] if n < len(s.delta) else zero for n in range(n_max + 1)]

    # u and v are unit series, so only alpha and delta can lower a valuation
    alpha_val = min(0, _min_valuation(alpha))
    delta_val = min(0, _min_valuation(delta))
    work = order - alpha_val - delta_val
    u = [s.u(n, work) for n in range(n_max + 1)]
    v = [s.v(n, work) for n in range(2 * n_max + 1)]

    # alpha_r u v is known to work + val(alpha_r), and likewise for delta
    beta = [
        series_sum([alpha[r] * u[n - r] * v[n + r] for r in range(n + 1)], work + alpha_val)
        for n in range(n_max + 1)
    ]
    gamma = [
        series_sum([delta[r] * u[r - n] * v[r + n] for r in range(n, n_max + 1)],
                   work + delta_val) for n in range(n_max + 1)
    ]
    lhs = series_sum([(alpha[n] * gamma[n]).truncate(order) for n in range(n_max + 1)], order)
    rhs = series_sum([(beta[n] * delta[n]).truncate(order) for n in range(n_max + 1)], order)
    comparison = lhs.equal_to_order(rhs, order)
    if not comparison.equal:
        logger.warning(
            f"Bailey transform differs at q^{comparison.exponent}: "
            f"{comparison.left} != {comparison.right}"
        )
    return TransformCheck(comparison, lhs, rhs)


__all__ = (
    "IndexedSeries", "TransformCheck", "TransformSequences", "bailey_transform_check",
    "canonical_u", "canonical_v"
)
