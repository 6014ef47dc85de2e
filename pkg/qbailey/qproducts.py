"""q-Pochhammer symbols, product specs and the Jacobi triple product oracle."""

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from qbailey.cyclo import MINUS_ONE, ONE, CycloNumber, cyclo_pow
from qbailey.monomial import Monomial
from qbailey.qseries import Exponent, Order, QSeries, TruncationError, as_exponent

INFINITE = math.inf


class DivergentProductError(ValueError):
    """Raised when an infinite product has a factor that is not 1 + O(q)."""


class ZeroDivisorError(ZeroDivisionError):
    """Raised when a Pochhammer symbol with a vanishing factor ends up in a denominator."""


class _ZeroDivisor:
    """Flag returned instead of a series when a vanishing factor would be inverted."""

    def __repr__(self) -> str:
        return "ZERO_DIVISOR"

    def __bool__(self) -> bool:
        return False


ZERO_DIVISOR = _ZeroDivisor()


@dataclass(frozen=True)
class PochFactor:
    """((base_unit*q^base_exp); (step_unit*q^step_exp))_length ^ power.

    Factor j of a finite symbol is 1 - base_unit*step_unit^j*q^(base_exp + j*step_exp).
    """
    base_unit: CycloNumber
    base_exp: Exponent
    step_unit: CycloNumber = ONE
    step_exp: Exponent = 1
    length: Union[int, float] = INFINITE
    power: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "base_unit", CycloNumber.coerce(self.base_unit))
        object.__setattr__(self, "step_unit", CycloNumber.coerce(self.step_unit))
        object.__setattr__(self, "base_exp", as_exponent(self.base_exp))
        object.__setattr__(self, "step_exp", as_exponent(self.step_exp))
        if self.power == 0:
            raise ValueError("Pochhammer power must be nonzero")
        if self.is_infinite and self.step_exp <= 0:
            raise DivergentProductError(f"infinite product with step exponent {self.step_exp}")

    @classmethod
    def of(cls, base: Monomial, step: Monomial, length: Union[int, float] = INFINITE,
           power: int = 1) -> "PochFactor":
        return cls(base.unit, base.exp, step.unit, step.exp, length, power)

    @property
    def is_infinite(self) -> bool:
        return isinstance(self.length, float) and math.isinf(self.length)

    def factor(self, j: int) -> Tuple[CycloNumber, Exponent]:
        return self.base_unit * cyclo_pow(self.step_unit, j), self.base_exp + j * self.step_exp

    def __str__(self) -> str:
        base = str(Monomial(self.base_unit, self.base_exp))
        step = str(Monomial(self.step_unit, self.step_exp))
        length = "inf" if self.is_infinite else str(self.length)
        text = f"({base};{step})_{{{length}}}"
        return text if self.power == 1 else f"{text}^{self.power}"


@dataclass(frozen=True)
class ProductSpec:
    factors: Tuple[PochFactor, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))

    def __str__(self) -> str:
        return render_product(self)


def _binomials(f: PochFactor, order: Order) -> Iterable[Tuple[CycloNumber, Exponent, int]]:
    """Yield (c, e, multiplicity) for the binomials 1 - c*q^e of a symbol.

    Negative lengths follow (a;q)_{-m} = 1/((a*q^{-m*step});q)_m.
    """
    if f.is_infinite:
        if f.base_exp <= 0:
            raise DivergentProductError(
                f"infinite product {f} needs a positive base exponent, got {f.base_exp}"
            )
        j = 0
        while True:
            c, e = f.factor(j)
            if e >= order:
                return
            yield c, e, f.power
            j += 1
    n = f.length
    if n >= 0:
        for j in range(n):
            c, e = f.factor(j)
            yield c, e, f.power
    else:
        m = -n
        shifted = replace(
            f,
            base_unit=f.base_unit * cyclo_pow(f.step_unit, n),
            base_exp=f.base_exp + n * f.step_exp,
            length=m,
            power=-f.power
        )
        yield from _binomials(shifted, order)


_Split = Tuple[CycloNumber, Exponent, Dict[Tuple[CycloNumber, Exponent], int]]


def _split_finite(factors: Sequence[PochFactor]) -> Union[_Split, None, "_ZeroDivisor"]:
    """Cancel the finite binomials and split them into a leading monomial and unit binomials.

    Returns None when a numerator zero survives the cancellation.
    """
    counts: Dict[Tuple[CycloNumber, Exponent], int] = defaultdict(int)
    for f in factors:
        if not f.is_infinite:
            for c, e, mult in _binomials(f, INFINITE):
                if c:
                    counts[(c, e)] += mult

    zeros = counts.pop((ONE, 0), 0)
    if zeros > 0:
        return None
    if zeros < 0:
        return ZERO_DIVISOR

    # Leading monomial of each binomial: 1 for e > 0, (1 - c) for e == 0, -c*q^e for e < 0
    lead = ONE
    lead_exp: Exponent = 0
    units: Dict[Tuple[CycloNumber, Exponent], int] = defaultdict(int)
    for (c, e), mult in counts.items():
        if mult == 0:
            continue
        if e > 0:
            units[(c, e)] += mult
        elif e == 0:
            lead = lead * cyclo_pow(ONE - c, mult)
        else:
            lead = lead * cyclo_pow(-c, mult)
            lead_exp += e * mult
            units[(c.inverse(), -e)] += mult
    return lead, lead_exp, units


def poch_lead(factors: Sequence[PochFactor]) -> Union[Tuple[CycloNumber, Exponent], None,
                                                      "_ZeroDivisor"]:
    """Leading monomial of a Pochhammer product, None if it vanishes identically.

    Infinite symbols have positive exponents and contribute 1.
    """
    split = _split_finite(factors)
    if split is None or split is ZERO_DIVISOR:
        return split
    return split[0], split[1]


def poch_ratio(factors: Sequence[PochFactor], order: Order) -> Union[QSeries, "_ZeroDivisor"]:
    """Product of Pochhammer symbols (powers give numerator/denominator placement).

    Identical binomials are cancelled between numerator and denominator first, which includes
    the exactly vanishing factors (1 - 1): leftover numerator zeros give the zero series and
    leftover denominator zeros give ZERO_DIVISOR.
    """
    order = as_exponent(order)
    split = _split_finite(factors)
    if split is None:
        return QSeries.zero(order)
    if split is ZERO_DIVISOR:
        return ZERO_DIVISOR
    lead, lead_exp, units = split

    work = order - lead_exp
    if work <= 0:
        return QSeries.zero(order)
    if math.isinf(work) and any(f.is_infinite for f in factors):
        raise TruncationError("an infinite Pochhammer symbol needs a finite order")
    # Infinite symbols only have positive exponents, so they never move the leading monomial
    for f in factors:
        if f.is_infinite:
            for c, e, mult in _binomials(f, work):
                if c:
                    units[(c, e)] += mult

    pending = sorted(
        ((c, e, mult) for (c, e), mult in units.items() if mult and e < work),
        key=lambda t: (t[2] < 0, t[1])
    )
    if math.isinf(work) and any(mult < 0 for _, _, mult in pending):
        raise TruncationError("a denominator Pochhammer symbol needs a finite order")

    # Multiply first so that divisions act on the sparsest possible series
    series = QSeries.one(work)
    for c, e, mult in pending:
        if mult > 0:
            for _ in range(mult):
                series = series.mul_binomial(c, e)
        else:
            for _ in range(-mult):
                series = series.div_binomial(c, e)
    return series.shift(lead_exp).scale(lead)


@dataclass(frozen=True)
class ProductTerm:
    """unit * q^exp * product of Pochhammer factors, the shape of every summand."""
    unit: CycloNumber
    exp: Exponent
    factors: Tuple[PochFactor, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit", CycloNumber.coerce(self.unit))
        object.__setattr__(self, "exp", as_exponent(self.exp))
        object.__setattr__(self, "factors", tuple(self.factors))

    def __mul__(self, other: "ProductTerm") -> "ProductTerm":
        return ProductTerm(self.unit * other.unit, self.exp + other.exp,
                           self.factors + other.factors)

    def lead(self) -> Union[Tuple[CycloNumber, Exponent], None, "_ZeroDivisor"]:
        """Exact leading monomial; None for a vanishing term."""
        if self.unit.is_zero():
            return None
        lead = poch_lead(self.factors)
        if lead is None or lead is ZERO_DIVISOR:
            return lead
        return self.unit * lead[0], self.exp + lead[1]

    def evaluate(self, order: Order) -> Union[QSeries, "_ZeroDivisor"]:
        order = as_exponent(order)
        if self.unit.is_zero():
            return QSeries.zero(order)
        result = poch_ratio(self.factors, order - self.exp)
        if result is ZERO_DIVISOR:
            return result
        return result.shift(self.exp).scale(self.unit)


def poch_eval(f: PochFactor, order: Order) -> Union[QSeries, "_ZeroDivisor"]:
    """Finite q-Pochhammer symbol to the given order, or ZERO_DIVISOR."""
    if f.is_infinite:
        raise ValueError("poch_eval takes a finite symbol, use poch_inf")
    return poch_ratio([f], order)


def poch_inf(f: PochFactor, order: Order) -> QSeries:
    """Infinite q-Pochhammer symbol: the factors with exponent below the order."""
    if not f.is_infinite:
        raise ValueError("poch_inf takes an infinite symbol, use poch_eval")
    if f.base_exp <= 0:
        raise DivergentProductError(
            f"infinite product {f} needs a positive base exponent, got {f.base_exp}"
        )
    if math.isinf(order):
        raise TruncationError("an infinite product needs a finite order")
    result = poch_ratio([f], order)
    assert isinstance(result, QSeries)
    return result


def product_spec_eval(p: ProductSpec, order: Order) -> QSeries:
    result = poch_ratio(p.factors, order)
    if result is ZERO_DIVISOR:
        raise ZeroDivisorError(f"product {p} has a vanishing denominator factor")
    return result


def pentagonal_inverse(order: int) -> QSeries:
    """1/(q;q)_inf by the pentagonal recurrence for the partition numbers."""
    order = math.ceil(order)
    p = [0] * max(order, 1)
    p[0] = 1
    for n in range(1, order):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return QSeries.from_list(p[:order], order)


def jtp_theta_oracle(a: Union[int, Fraction], m: Union[int, Fraction], order: Order) -> QSeries:
    """Sum over j in Z of (-1)^j q^(m*j*(j-1)/2 + a*j), equal to (q^a, q^(m-a), q^m; q^m)_inf."""
    a, m = as_exponent(a), as_exponent(m)
    if not 0 < a < m:
        raise ValueError(f"triple product needs 0 < a < m, got a={a}, m={m}")
    terms: Dict[Exponent, CycloNumber] = defaultdict(lambda: CycloNumber(0))

    # The exponent is convex in j with its minimum in (-1/2, 1/2), so both directions increase
    for direction in (1, -1):
        j = 0 if direction == 1 else -1
        while True:
            e = as_exponent(Fraction(m * j * (j - 1), 2) + a * j)
            if e >= order:
                break
            terms[e] = terms[e] + (ONE if j % 2 == 0 else MINUS_ONE)
            j += direction
    return QSeries(dict(terms), order)


def triple_product_blocks(p: ProductSpec) -> List[Tuple[Exponent, Exponent]]:
    """Find blocks (q^a, q^(m-a), q^m; q^m)_inf with a <= m/2 among the numerator factors."""
    by_step: Dict[Exponent, Counter] = defaultdict(Counter)
    for f in p.factors:
        if f.is_infinite and f.power == 1 and f.base_unit == ONE and f.step_unit == ONE:
            by_step[f.step_exp][f.base_exp] += 1

    blocks = []
    for m, bases in sorted(by_step.items()):
        bases = Counter(bases)
        for a in sorted(bases):
            while bases[a] and bases[m] and 0 < a <= m - a:
                if a == m - a:
                    if bases[a] < 2:
                        break
                    bases[a] -= 2
                elif bases[m - a]:
                    bases[a] -= 1
                    bases[m - a] -= 1
                else:
                    break
                bases[m] -= 1
                blocks.append((a, m))
    return blocks


def render_product(p: ProductSpec) -> str:
    """Group factors sharing step, length and power into the (a1,a2,...;q)_n notation."""
    groups: Dict[Tuple, List[str]] = defaultdict(list)
    for f in p.factors:
        key = (f.step_unit, f.step_exp, "inf" if f.is_infinite else f.length, f.power)
        groups[key].append(str(Monomial(f.base_unit, f.base_exp)))
    parts = []
    for (step_unit, step_exp, length, power), bases in groups.items():
        step = Monomial(step_unit, step_exp)
        text = f"({','.join(bases)};{step})_{{{length}}}"
        parts.append(text if power == 1 else f"{text}^({power})")
    return " ".join(parts) if parts else "1"


__all__ = (
    "DivergentProductError", "INFINITE", "PochFactor", "ProductSpec", "ProductTerm", "ZERO_DIVISOR",
    "ZeroDivisorError", "jtp_theta_oracle", "pentagonal_inverse", "poch_eval", "poch_inf",
    "poch_lead", "poch_ratio", "product_spec_eval", "render_product", "triple_product_blocks"
)
