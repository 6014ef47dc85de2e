"""Closed-form beta sequences checked against the definitional sum."""

import logging
import time
import traceback
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from qbailey.bailey.smpbp import BaileyError, BaileyPairSpec, smpbp_beta
from qbailey.constants import STANDARD_A_SPECS, Status
from qbailey.monomial import Monomial, parse_monomial
from qbailey.qseries import Order, QSeries, as_exponent, fmt_exponent
from qbailey.registry.spec import PairSpec, get_pair, parse_term
from qbailey.registry.terms import pair_beta
from qbailey.registry.verify import mismatch_dict

logger = logging.getLogger(__name__)

PairRef = Union[str, PairSpec]


def standard_a_specs() -> Tuple[Monomial, ...]:
    """a in {1, q, q^2, 3q}; the non-power 3q keeps coincidences at roots of unity out."""
    return tuple(parse_monomial(a) for a in STANDARD_A_SPECS)


def resolve_pair(pair: PairRef, pairs: Optional[Sequence[PairSpec]] = None) -> PairSpec:
    if isinstance(pair, PairSpec):
        return pair
    if pairs is not None:
        for p in pairs:
            if p.id == pair:
                return p
    return get_pair(pair)


def printed_variant(pair: PairSpec) -> Optional[PairSpec]:
    """The pair as printed in its source when the entry records a typesetting error."""
    typo = pair.meta.get("source_typo")
    if not typo:
        return None
    return PairSpec(f"{pair.id}-printed", pair.dek, parse_term(typo["term"], ("n", "r")), {})


def beta_formula_eval(pair: PairRef, a_spec: Monomial, n: int, order: Order,
                      pairs: Optional[Sequence[PairSpec]] = None) -> QSeries:
    """The registered closed form beta_n(a^e, 0, q^e) with a = a_spec."""
    if n < 0:
        raise BaileyError(f"beta index must be nonnegative, got {n}")
    return pair_beta(resolve_pair(pair, pairs), a_spec, n, order)


def beta_definitional(pair: PairRef, a_spec: Monomial, n: int, order: Order,
                      pairs: Optional[Sequence[PairSpec]] = None) -> QSeries:
    d, e, k = resolve_pair(pair, pairs).dek
    return smpbp_beta(BaileyPairSpec(d, e, k, a_spec), n, order)


@dataclass(frozen=True)
class PairCheck:
    a_spec: Monomial
    n: int
    status: str
    first_mismatch: Optional[Dict[str, str]] = None
    error: Optional[str] = None

    def to_dict(self) -> Dict:
        data = {"a": str(self.a_spec), "n": self.n, "status": self.status}
        if self.first_mismatch is not None:
            data["first_mismatch"] = self.first_mismatch
        if self.error is not None:
            data["error"] = self.error
        return data


@dataclass
class PairReport:
    id: str
    dek: Tuple[int, int, int]
    order: Order
    checks: List[PairCheck] = field(default_factory=list)
    millis: float = 0.0

    @property
    def status(self) -> str:
        for c in self.checks:
            if c.status == Status.ERROR:
                return Status.ERROR
        for c in self.checks:
            if c.status == Status.FAIL:
                return Status.FAIL
        return Status.PASS

    @property
    def passed(self) -> bool:
        return self.status == Status.PASS

    @property
    def first_failure(self) -> Optional[PairCheck]:
        return next((c for c in self.checks if c.status != Status.PASS), None)

    def to_dict(self, timing: bool = True) -> Dict:
        data = {
            "id": self.id,
            "dek": list(self.dek),
            "status": self.status,
            "order": fmt_exponent(as_exponent(self.order)).strip("()"),
            "checks": [c.to_dict() for c in self.checks],
        }
        if timing:
            data["millis"] = round(self.millis, 3)
        return data


def _check(pair: PairSpec, a_spec: Monomial, n: int, order: Order) -> PairCheck:
    try:
        formula = pair_beta(pair, a_spec, n, order)
        definition = beta_definitional(pair, a_spec, n, order)
    except Exception as e:
        logger.error(
            f"Error evaluating {pair.id} at a = {a_spec}, n = {n}:\n" +
            "".join(traceback.format_exception(type(e), e, e.__traceback__))
        )
        return PairCheck(a_spec, n, Status.ERROR, error=f"{e.__class__.__name__}: {e}")

    comparison = formula.equal_to_order(definition, order)
    if comparison.equal:
        return PairCheck(a_spec, n, Status.PASS)
    logger.warning(
        f"{pair.id} at a = {a_spec}, n = {n} differs at q^{fmt_exponent(comparison.exponent)}: "
        f"{comparison.left} != {comparison.right}"
    )
    return PairCheck(a_spec, n, Status.FAIL, mismatch_dict(comparison))


def verify_bailey_pair(pair: PairRef, a_specs: Optional[Sequence[Monomial]] = None,
                       n_max: int = 10, order: Order = 40,
                       pairs: Optional[Sequence[PairSpec]] = None) -> PairReport:
    """Compare the closed form with the definitional beta for every a and 0 <= n <= n_max."""
    spec = resolve_pair(pair, pairs)
    order = as_exponent(order)
    a_specs = standard_a_specs() if a_specs is None else tuple(a_specs)
    start = time.perf_counter()
    report = PairReport(spec.id, spec.dek, order)
    for a_spec in a_specs:
        for n in range(n_max + 1):
            report.checks.append(_check(spec, a_spec, n, order))
    report.millis = (time.perf_counter() - start) * 1000
    logger.info(f"Bailey pair {spec.id} {report.status.upper()}, {report.millis / 1000:.3f}s")
    return report


__all__ = (
    "PairCheck", "PairReport", "beta_definitional", "beta_formula_eval", "printed_variant",
    "resolve_pair", "standard_a_specs", "verify_bailey_pair"
)
