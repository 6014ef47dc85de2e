"""Euler-product exponents of unit q-series and their periodic patterns.

A series f with constant term 1 is written as f = prod_(n>=1) (1 - q^n)^(-c_n) modulo q^T. When c_n
depends only on n mod p the series is conjecturally the product (q^r;q^p)_inf^(-c_r) over the
residues r.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from qbailey.cyclo import ONE
from qbailey.qproducts import INFINITE, PochFactor, ProductSpec, render_product
from qbailey.qseries import Order, QSeries, as_exponent, fmt_exponent, rational_coefficients
from qbailey.registry.spec import IdentitySpec, get_identity
from qbailey.registry.terms import eval_rhs, sum_lhs

logger = logging.getLogger(__name__)

Pattern = Tuple[int, Tuple[int, ...]]


class RecognitionError(ValueError):
    """Raised when a series is not a unit Euler product on the integer exponent lattice."""


def rescale_to_integer_lattice(f: QSeries) -> Tuple[QSeries, int]:
    """Substitute q -> q^L, L the lcm of the exponent denominators, and return (f', L)."""
    lcm = f.exponent_denominator()
    if not f.is_exact():
        lcm = lcm * Fraction(f.order).denominator // math.gcd(lcm, Fraction(f.order).denominator)
    if lcm == 1:
        return f, 1
    logger.info(f"Rescaled q -> q^{lcm}; periods refer to the rescaled variable")
    return f.scale_exponents(lcm), lcm


def product_exponents(f: QSeries, T_int: int) -> List[int]:
    """c_1, ..., c_(T_int - 1) with f = prod (1 - q^n)^(-c_n) mod q^T_int."""
    if f.exponent_denominator() != 1:
        raise RecognitionError("series has fractional exponents, rescale it first")
    if T_int > f.order:
        raise RecognitionError(
            f"series is known to order {fmt_exponent(f.order)}, sieve needs {T_int}"
        )
    if T_int < 1:
        return []
    try:
        work = rational_coefficients(f, T_int)
    except ValueError:
        raise RecognitionError("series has non-rational coefficients") from None
    if work[0] != 1:
        raise RecognitionError(f"constant term must be 1, got {work[0]}")

    exponents = []
    for n in range(1, T_int):
        c = Fraction(work[n])
        if c.denominator != 1:
            raise RecognitionError(f"exponent of (1 - q^{n}) would be {c}, not an integer")
        c = int(c)
        exponents.append(c)
        # Multiply by (1 - q^n)^c, which clears the coefficient of q^n
        for _ in range(abs(c)):
            if c > 0:
                for k in range(T_int - 1, n - 1, -1):
                    work[k] -= work[k - n]
            else:
                for k in range(n, T_int):
                    work[k] += work[k - n]
    return exponents


def periodicity_fit(c: Sequence[int], max_period: int) -> Optional[Pattern]:
    """The least period p <= max_period of c_1, c_2, ... confirmed by at least 2p further entries.

    The pattern is (c_1, ..., c_p), indexed from residue 1.
    """
    c = list(c)
    for p in range(1, max_period + 1):
        if len(c) < 3 * p:
            break
        if all(c[i] == c[i - p] for i in range(p, len(c))):
            return p, tuple(c[:p])
    return None


def pattern_to_product(period: int, pattern: Sequence[int]) -> ProductSpec:
    """prod over residues r of (q^r;q^p)_inf^(-c_r), the residue p written as q^p."""
    if len(pattern) != period:
        raise RecognitionError(f"pattern of length {len(pattern)} for period {period}")
    factors = [
        PochFactor(ONE, r, ONE, period, INFINITE, -c)
        for r, c in enumerate(pattern, start=1) if c
    ]
    # Group equal powers so the rendering reads (q,q^4;q^5)_{inf}^(-1)
    factors.sort(key=lambda f: (f.power, f.base_exp))
    return ProductSpec(tuple(factors))


@dataclass(frozen=True)
class Recognition:
    scale: int
    exponents: List[int]
    fit: Optional[Pattern]

    @property
    def product(self) -> Optional[ProductSpec]:
        return pattern_to_product(*self.fit) if self.fit else None

    def to_dict(self) -> Dict:
        data = {"scale": self.scale, "exponents": self.exponents, "period": None}
        if self.fit:
            data["period"] = self.fit[0]
            data["pattern"] = list(self.fit[1])
            data["product"] = render_product(self.product)
        return data


def recognize(f: QSeries, order: Optional[Order] = None,
              max_period: Optional[int] = None) -> Recognition:
    """Rescale, sieve and fit a period; the default period bound uses every sieved entry."""
    if order is not None:
        f = f.truncate(as_exponent(order))
    if f.is_exact():
        raise RecognitionError("recognition needs a truncated series")
    g, scale = rescale_to_integer_lattice(f)
    exponents = product_exponents(g, math.floor(g.order))
    fit = periodicity_fit(exponents, len(exponents) // 3 if max_period is None else max_period)
    if fit:
        logger.info(
            f"Euler exponents have period {fit[0]}: {render_product(pattern_to_product(*fit))}"
        )
    else:
        logger.info(f"No period found among {len(exponents)} Euler exponents")
    return Recognition(scale, exponents, fit)


@dataclass(frozen=True)
class IdentityRecognition:
    id: str
    lhs: Recognition
    rhs: Recognition

    @property
    def matches(self) -> bool:
        return self.lhs.scale == self.rhs.scale and self.lhs.exponents == self.rhs.exponents

    def to_dict(self) -> Dict:
        return {
            "id": self.id, "matches": self.matches, "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict()
        }


def recognize_identity(identity: Union[str, IdentitySpec], order: Order,
                       max_period: Optional[int] = None) -> IdentityRecognition:
    """Sieve the computed sum side of a registry entry against the sieve of its product side."""
    if isinstance(identity, str):
        identity = get_identity(identity)
    order = as_exponent(order)
    lhs = recognize(sum_lhs(identity.lhs, order), max_period=max_period)
    rhs = recognize(eval_rhs(identity, order), max_period=max_period)
    result = IdentityRecognition(identity.id, lhs, rhs)
    if not result.matches:
        logger.warning(f"Euler exponents of {identity.id} differ between its two sides")
    return result


__all__ = (
    "IdentityRecognition", "Pattern", "Recognition", "RecognitionError", "pattern_to_product",
    "periodicity_fit", "product_exponents", "recognize", "recognize_identity",
    "rescale_to_integer_lattice"
)
