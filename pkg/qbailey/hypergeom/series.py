"""Basic hypergeometric series p+1 phi p and the very-well-poised abbreviation r+1 W r."""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

from qbailey.constants import DEFAULT_MAX_TERMS
from qbailey.cyclo import ONE, CycloNumber, cyclo_pow
from qbailey.monomial import Monomial
from qbailey.qseries import Exponent, Order, QSeries, as_exponent, series_sum

logger = logging.getLogger(__name__)

Q = Monomial(ONE, 1)


class HypergeometricError(ValueError):
    """Raised when a hypergeometric series cannot be evaluated."""


class NonTerminatingError(HypergeometricError):
    """Raised when a non-terminating series has an argument without positive exponent."""


class MaxTermsError(HypergeometricError):
    """Raised when summation does not settle within max_terms terms."""


@dataclass(frozen=True)
class PhiSpec:
    upper: Tuple[Monomial, ...]
    lower: Tuple[Monomial, ...]
    base: Monomial = Q
    argument: Monomial = Q

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.upper) != len(self.lower) + 1:
            raise HypergeometricError(
                f"phi needs p+1 upper and p lower parameters, got {len(self.upper)} and "
                f"{len(self.lower)}"
            )
        if self.base.exp <= 0:
            raise HypergeometricError(f"base {self.base} needs a positive exponent")

    def __str__(self) -> str:
        upper = ", ".join(map(str, self.upper))
        lower = ", ".join(map(str, self.lower))
        head = f"{len(self.upper)}phi{len(self.lower)}"
        return f"{head}({upper}; {lower}; {self.base}, {self.argument})"


@dataclass(frozen=True)
class WSpec:
    a: Monomial
    tail: Tuple[Monomial, ...] = field(default_factory=tuple)
    base: Monomial = Q
    argument: Monomial = Q

    def __post_init__(self) -> None:
        object.__setattr__(self, "tail", tuple(self.tail))

    def expand(self) -> PhiSpec:
        """The phi series with q*a^(1/2), -q*a^(1/2) over a^(1/2), -a^(1/2) and lower aq/a_i."""
        root = self.a.sqrt()
        if root is None:
            raise HypergeometricError(f"a = {self.a} has no square root in Q(zeta_12)")
        p = self.base
        upper = (self.a, p * root, -(p * root)) + self.tail
        lower = (root, -root) + tuple(self.a * p / t for t in self.tail)
        return PhiSpec(upper, lower, p, self.argument)

    def __str__(self) -> str:
        r = len(self.tail) + 3
        tail = ", ".join(map(str, self.tail))
        return f"{r + 1}W{r}({self.a}; {tail}; {self.base}, {self.argument})"


def _leading(c: CycloNumber, e: Exponent) -> Tuple[CycloNumber, Exponent, bool]:
    """Leading monomial of 1 - c*q^e and whether the rest is a unit binomial to track."""
    if e > 0:
        return ONE, 0, True
    if e == 0:
        return ONE - c, 0, False
    return -c, e, True


def phi_eval(s: PhiSpec, order: Order, max_terms: int = DEFAULT_MAX_TERMS) -> QSeries:
    """Sum of the series to the given order.

    Term r+1 is term r times z*prod(1 - u*p^r) / ((1 - p^(r+1))*prod(1 - l*p^r)). A vanishing
    upper factor terminates the sum; it is checked before the lower factors.
    """
    order = as_exponent(order)
    if math.isinf(order):
        raise HypergeometricError("phi_eval needs a finite order")
    p = s.base
    z = s.argument

    # First pass: leading monomials and the binomials each step contributes
    leads: List[Tuple[CycloNumber, Exponent]] = [(ONE, 0)]
    steps: List[List[Tuple[CycloNumber, Exponent, int]]] = [[]]
    lead, lead_exp = ONE, as_exponent(0)
    r = 0
    while True:
        if r >= max_terms:
            raise MaxTermsError(f"{s} did not settle within {max_terms} terms")
        shift = cyclo_pow(p.unit, r)
        factors = [(u.unit * shift, u.exp + r * p.exp, 1) for u in s.upper]
        if any(c == ONE and e == 0 for c, e, _ in factors):
            break
        factors.append((p.unit * shift, (r + 1) * p.exp, -1))
        factors.extend((l.unit * shift, l.exp + r * p.exp, -1) for l in s.lower)
        if any(c == ONE and e == 0 for c, e, _ in factors):
            raise HypergeometricError(f"{s} has a vanishing denominator factor at term {r + 1}")

        step = []
        lead = lead * z.unit
        lead_exp = lead_exp + z.exp
        for c, e, sign in factors:
            head, head_exp, track = _leading(c, e)
            if sign > 0:
                lead, lead_exp = lead * head, lead_exp + head_exp
            else:
                lead, lead_exp = lead / head, lead_exp - head_exp
            if track:
                step.append((c, e, sign) if e > 0 else (c.inverse(), -e, sign))
        r += 1
        leads.append((lead, lead_exp))
        steps.append(step)

        # Beyond this index every binomial is 1 + O(q) and the valuation grows by z.exp per step
        settled = all(u.exp + r * p.exp > 0 for u in s.upper + s.lower)
        if settled and z.exp <= 0:
            raise NonTerminatingError(f"{s} does not terminate and its argument is {z}")
        if settled and lead_exp >= order:
            break

    min_exp = min(e for _, e in leads)
    work = order - min_exp
    logger.debug(f"{s}: {len(leads)} terms, working order {work}")

    parts = []
    unit_part = QSeries.one(work)
    for (c, e), step in zip(leads, steps):
        for b_c, b_e, sign in step:
            if b_e < work:
                if sign > 0:
                    unit_part = unit_part.mul_binomial(b_c, b_e)
                else:
                    unit_part = unit_part.div_binomial(b_c, b_e)
        if e < order:
            parts.append(unit_part.shift(e).scale(c).truncate(order))
    return series_sum(parts, order)


def w_eval(s: WSpec, order: Order, max_terms: int = DEFAULT_MAX_TERMS) -> QSeries:
    return phi_eval(s.expand(), order, max_terms)


__all__ = (
    "HypergeometricError", "MaxTermsError", "NonTerminatingError", "PhiSpec", "Q", "WSpec",
    "phi_eval", "w_eval"
)
