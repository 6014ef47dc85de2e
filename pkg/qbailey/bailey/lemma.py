"""Bailey's lemma with the standard multiparameter pair inserted, including its limiting cases.

A parameter rho given in the bracket convention enters the frame (A, Q) = (a^e, q^e) as R, rho with
q replaced by q^e, so rho = -q^(1/2) at e = 2 becomes R = -q. Infinite rho and N follow the limit
rules (rho;Q)_j rho^(-j) -> (-1)^j Q^(j(j-1)/2), (x/rho;Q)_j -> 1 and
(y;Q)_(N-j)/(Q;Q)_(N-j) -> (y;Q)_inf/(Q;Q)_inf.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Callable, List, Optional, Sequence, Tuple, Union

from qbailey.bailey.pairs import resolve_pair
from qbailey.bailey.smpbp import (
    B_TO_ZERO, BaileyError, BaileyPairSpec, LimitError, alpha_term, smpbp_beta
)
from qbailey.constants import DEFAULT_MAX_TERMS
from qbailey.cyclo import MINUS_ONE, ONE, cyclo_pow
from qbailey.monomial import INFINITY, Monomial, MonomialOrInfinity, render_parameter
from qbailey.qproducts import (
    INFINITE, ZERO_DIVISOR, DivergentProductError, PochFactor, ProductTerm, poch_lead, poch_ratio,
    product_spec_eval
)
from qbailey.qseries import (
    Comparison, Order, QSeries, as_exponent, fmt_exponent, series_equal_to_order, series_sum
)
from qbailey.registry.spec import IdentitySpec, PairSpec, get_identity, pairs as registered_pairs
from qbailey.registry.terms import eval_rhs, pair_beta, sum_lhs

logger = logging.getLogger(__name__)

BetaFunction = Callable[[int, Order], QSeries]
PairSelector = Union[str, Tuple[int, int, int], BaileyPairSpec]


@dataclass(frozen=True)
class LemmaSpec:
    rho1: MonomialOrInfinity = INFINITY
    rho2: MonomialOrInfinity = INFINITY
    N: Union[int, object] = INFINITY
    order: Order = 40

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", as_exponent(self.order))
        for name in ("rho1", "rho2"):
            rho = getattr(self, name)
            if rho is not INFINITY and (not isinstance(rho, Monomial) or rho.is_zero()):
                raise BaileyError(f"{name} must be a nonzero monomial or infinity, got {rho!r}")
        if self.N is not INFINITY and (not isinstance(self.N, int) or self.N < 0):
            raise BaileyError(f"N must be a nonnegative integer or infinity, got {self.N!r}")
        if not 0 < self.order < math.inf:
            raise BaileyError(f"lemma order must be positive and finite, got {self.order}")

    @property
    def finite_rhos(self) -> Tuple[Monomial, ...]:
        return tuple(rho for rho in (self.rho1, self.rho2) if rho is not INFINITY)

    def __str__(self) -> str:
        n_text = "inf" if self.N is INFINITY else str(self.N)
        return (f"rho1={render_parameter(self.rho1)} rho2={render_parameter(self.rho2)} "
                f"N={n_text}")


@dataclass(frozen=True)
class LemmaSides:
    lhs: QSeries
    rhs: QSeries
    normalized: bool = False

    def compare(self, order: Order) -> Comparison:
        return series_equal_to_order(self.lhs, self.rhs, order)


@dataclass(frozen=True)
class _Frame:
    """The lemma in the variables A = a^e, Q = q^e with the finite parameters R."""
    pair: BaileyPairSpec
    A: Monomial
    Q: Monomial
    R: Tuple[Monomial, ...]
    N: Union[int, object]

    @property
    def AQ(self) -> Monomial:
        return self.A * self.Q

    @property
    def Z(self) -> Optional[Monomial]:
        if len(self.R) < 2:
            return None
        return self.AQ / (self.R[0] * self.R[1])

    @property
    def infinite(self) -> bool:
        return self.N is INFINITY


def _frame(pair: BaileyPairSpec, L: LemmaSpec) -> _Frame:
    e = pair.e
    frame = _Frame(
        pair, pair.frame_a, pair.frame_q,
        tuple(Monomial(rho.unit, rho.exp * e) for rho in L.finite_rhos), L.N
    )
    if frame.AQ.exp <= 0:
        raise LimitError(f"a^e q^e = {frame.AQ} must have a positive exponent")
    if frame.infinite and frame.Z is not None and frame.Z.exp <= 0:
        raise LimitError(f"aq/(rho1 rho2) = {frame.Z} needs a positive exponent when N = inf")
    if frame.infinite:
        for r in frame.R:
            if (frame.AQ / r).exp <= 0:
                raise LimitError(f"aq/rho = {frame.AQ / r} needs a positive exponent when N = inf")
    return frame


def _poch(base: Monomial, step: Monomial, length, power: int = 1) -> PochFactor:
    return PochFactor.of(base, step, length, power)


def _weight(f: _Frame, j: int) -> ProductTerm:
    """The rho-dependent weight of beta_j (or alpha_j) without the N-dependent factors."""
    Q = f.Q
    if len(f.R) == 2:
        z = f.Z**j
        return ProductTerm(z.unit, z.exp, (_poch(f.R[0], Q, j), _poch(f.R[1], Q, j)))
    if len(f.R) == 1:
        x = (f.AQ / f.R[0])**j
        return ProductTerm(
            cyclo_pow(MINUS_ONE, j) * x.unit, x.exp + Q.exp * Fraction(j * (j - 1), 2),
            (_poch(f.R[0], Q, j),)
        )
    x = f.AQ**j
    return ProductTerm(x.unit, x.exp + Q.exp * j * (j - 1))


def lhs_weight(f: _Frame, j: int) -> ProductTerm:
    term = _weight(f, j)
    if f.infinite:
        return term
    extra = [_poch(f.Q, f.Q, f.N - j, -1)]
    if f.Z is not None:
        extra.append(_poch(f.Z, f.Q, f.N - j))
    return term * ProductTerm(ONE, 0, tuple(extra))


def rhs_weight(f: _Frame, m: int) -> ProductTerm:
    term = _weight(f, m)
    factors = [_poch(f.AQ / r, f.Q, m, -1) for r in f.R]
    if not f.infinite:
        factors.append(_poch(f.Q, f.Q, f.N - m, -1))
        factors.append(_poch(f.AQ, f.Q, f.N + m, -1))
    return term * ProductTerm(ONE, 0, tuple(factors))


def lhs_prefactor(f: _Frame, normalized: bool = False) -> List[PochFactor]:
    if not f.infinite:
        factors = [_poch(f.AQ / r, f.Q, f.N, -1) for r in f.R]
    else:
        factors = [_poch(f.Q, f.Q, INFINITE, -1)]
        factors.extend(_poch(f.AQ / r, f.Q, INFINITE, -1) for r in f.R)
        if f.Z is not None:
            factors.append(_poch(f.Z, f.Q, INFINITE))
    if normalized:
        factors.extend(normalizer_factors(f))
    return factors


def rhs_prefactor(f: _Frame, normalized: bool = False) -> List[PochFactor]:
    factors = []
    if f.infinite:
        factors = [_poch(f.Q, f.Q, INFINITE, -1), _poch(f.AQ, f.Q, INFINITE, -1)]
    if normalized:
        factors.extend(normalizer_factors(f))
    return factors


def normalizer_factors(f: _Frame) -> List[PochFactor]:
    """(Q;Q)_inf times (AQ/R;Q)_inf for every finite R."""
    return [_poch(f.Q, f.Q, INFINITE)] + [_poch(f.AQ / r, f.Q, INFINITE) for r in f.R]


def _alpha_lead(f: _Frame, r: int) -> Order:
    lead = alpha_term(f.pair, r).lead()
    if lead is ZERO_DIVISOR:
        raise BaileyError(f"alpha_{f.pair.d * r} of {f.pair} has a vanishing denominator")
    return math.inf if lead is None else lead[1]


def _lhs_sum(f: _Frame, beta: BetaFunction, order: Order, max_terms: int) -> QSeries:
    parts = []
    prev = None
    # beta_j starts no lower than the alpha_s with s <= j, the denominators being unit series
    floor = math.inf
    j_range = count() if f.infinite else range(f.N + 1)
    for j in j_range:
        if j >= max_terms:
            raise BaileyError(f"lemma sum side did not reach q^{order} within {max_terms} terms")
        if j % f.pair.d == 0:
            floor = min(floor, _alpha_lead(f, j // f.pair.d))
        weight = lhs_weight(f, j)
        lead = weight.lead()
        if lead is None:
            if f.infinite:
                break
            continue
        if lead is ZERO_DIVISOR:
            raise BaileyError(f"weight of beta_{j} has a vanishing denominator")
        if floor < 0:
            raise LimitError(f"beta_{j} of {f.pair} may start below q^0; the sum side is unbounded")
        exp = lead[1]
        if f.infinite and exp >= order and prev is not None and exp >= prev:
            break
        prev = exp
        if exp >= order:
            continue
        b = beta(j, order - exp)
        if not b.terms:
            continue
        parts.append((weight.evaluate(order - b.valuation()) * b).truncate(order))
    return series_sum(parts, order)


def _rhs_sum(f: _Frame, order: Order, max_terms: int) -> QSeries:
    parts = []
    prev = None
    d = f.pair.d
    for r in count():
        m = d * r
        if not f.infinite and m > f.N:
            break
        if r >= max_terms:
            raise BaileyError(f"lemma alpha side did not reach q^{order} within {max_terms} terms")
        term = rhs_weight(f, m) * alpha_term(f.pair, r)
        lead = term.lead()
        if lead is None:
            continue
        if lead is ZERO_DIVISOR:
            raise BaileyError(f"alpha side term at n = {m} has a vanishing denominator")
        exp = lead[1]
        if f.infinite and exp >= order and prev is not None and exp >= prev:
            break
        prev = exp
        if exp < order:
            parts.append(term.evaluate(order))
    return series_sum(parts, order)


def _with_prefactor(factors: Sequence[PochFactor], total: Callable[[Order], QSeries],
                    order: Order) -> QSeries:
    lead = poch_lead(factors)
    if lead is None:
        return QSeries.zero(order)
    if lead is ZERO_DIVISOR:
        raise BaileyError("lemma prefactor has a vanishing denominator factor")
    s = total(order - lead[1])
    if not s.terms:
        return QSeries.zero(order)
    pre = poch_ratio(factors, order - s.valuation())
    return (pre * s).truncate(order)


def _pair_spec(pair: PairSelector, a_spec: Monomial,
               pairs: Optional[Sequence[PairSpec]]) -> Tuple[BaileyPairSpec, Optional[PairSpec]]:
    """The alpha side parameters and, for b -> 0, a registered closed form for beta if any."""
    if isinstance(pair, BaileyPairSpec):
        spec = pair
    elif isinstance(pair, str):
        formula = resolve_pair(pair, pairs)
        return BaileyPairSpec(*formula.dek, a_spec), formula
    else:
        spec = BaileyPairSpec(*pair, a_spec)
    if spec.b_mode is not B_TO_ZERO:
        return spec, None
    candidates = registered_pairs() if pairs is None else pairs
    formula = next((p for p in candidates if p.dek == spec.dek), None)
    return spec, formula


def beta_function(spec: BaileyPairSpec, formula: Optional[PairSpec]) -> BetaFunction:
    if formula is not None:
        return lambda j, o: pair_beta(formula, spec.a_spec, j, o)
    return lambda j, o: smpbp_beta(spec, j, o)


def bailey_lemma_sides(pair: PairSelector, a_spec: Monomial, L: LemmaSpec,
                       pairs: Optional[Sequence[PairSpec]] = None, normalized: bool = False,
                       max_terms: int = DEFAULT_MAX_TERMS) -> LemmaSides:
    """Both sides of the lemma to L.order.

    `normalized` multiplies both by (Q;Q)_inf (AQ/R;Q)_inf..., which turns the all-infinite sides
    into the sum and product sides of a Rogers-Ramanujan type identity.
    """
    spec, formula = _pair_spec(pair, a_spec, pairs)
    beta = beta_function(spec, formula)
    order = L.order
    try:
        f = _frame(spec, L)
        lhs = _with_prefactor(
            lhs_prefactor(f, normalized), lambda o: _lhs_sum(f, beta, o, max_terms), order
        )
        rhs = _with_prefactor(
            rhs_prefactor(f, normalized), lambda o: _rhs_sum(f, o, max_terms), order
        )
    except DivergentProductError as e:
        raise LimitError(str(e)) from None
    logger.debug(
        f"Lemma {spec} {L}: beta from {formula.id if formula else 'the definition'}"
    )
    return LemmaSides(lhs, rhs, normalized)


def lemma_normalizer(pair: PairSelector, a_spec: Monomial, L: LemmaSpec,
                     order: Optional[Order] = None) -> QSeries:
    spec = pair if isinstance(pair, BaileyPairSpec) else _pair_spec(pair, a_spec, ())[0]
    try:
        f = _frame(spec, L)
        return poch_ratio(normalizer_factors(f), L.order if order is None else order)
    except DivergentProductError as e:
        raise LimitError(str(e)) from None


@dataclass(frozen=True)
class CrossCheck:
    id: str
    order: Order
    lhs: Comparison
    rhs: Comparison
    balance: Comparison

    @property
    def passed(self) -> bool:
        return self.lhs.equal and self.rhs.equal and self.balance.equal


def lemma_cross_check(identity: Union[str, IdentitySpec], order: Order,
                      pairs: Optional[Sequence[PairSpec]] = None,
                      max_terms: int = DEFAULT_MAX_TERMS) -> CrossCheck:
    """Rebuild a registered identity from its lemma specialization and compare both sides."""
    if isinstance(identity, str):
        identity = get_identity(identity)
    lm = identity.lemma
    if lm is None:
        raise BaileyError(f"identity {identity.id} records no lemma specialization")
    order = as_exponent(order)
    scale = as_exponent(lm.scale)
    L = LemmaSpec(lm.rho1, lm.rho2, lm.N, as_exponent(Fraction(order) / Fraction(scale)))
    sides = bailey_lemma_sides(lm.dek, lm.a, L, pairs, normalized=True, max_terms=max_terms)

    factor = product_spec_eval(lm.factor, order)
    lhs = (factor * sides.lhs.scale_exponents(scale)).truncate(order)
    rhs = (factor * sides.rhs.scale_exponents(scale)).truncate(order)
    check = CrossCheck(
        identity.id, order,
        series_equal_to_order(lhs, sum_lhs(identity.lhs, order), order),
        series_equal_to_order(rhs, eval_rhs(identity, order), order),
        series_equal_to_order(lhs, rhs, order),
    )
    if check.passed:
        logger.info(f"Lemma reproduces identity {identity.id} to order {fmt_exponent(order)}")
    else:
        failed = [name for name in ("lhs", "rhs", "balance") if not getattr(check, name).equal]
        logger.warning(f"Lemma disagrees with identity {identity.id} on {', '.join(failed)}")
    return check


__all__ = (
    "BetaFunction", "CrossCheck", "LemmaSides", "LemmaSpec", "bailey_lemma_sides",
    "beta_function", "lemma_cross_check", "lemma_normalizer", "lhs_prefactor", "lhs_weight",
    "normalizer_factors", "rhs_prefactor", "rhs_weight"
)
