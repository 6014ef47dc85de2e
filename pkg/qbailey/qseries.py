"""Truncated generalized power series in q with exact rational exponents.

A QSeries is "known modulo q^order": every stored exponent is below the order and no stored
coefficient is zero. An order of `EXACT` marks a finite expression known exactly.
"""

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from qbailey.cyclo import ONE, ZERO, CycloNumber, Rational

Exponent = Union[int, Fraction]
Order = Union[int, Fraction, float]
Coefficient = Union[CycloNumber, int, Fraction]

EXACT = math.inf


class TruncationError(ValueError):
    """Raised when a coefficient is requested outside the known region of a series."""


class SeriesInversionError(ZeroDivisionError):
    """Raised when inverting a series without an invertible leading term."""


def as_exponent(x: Union[Exponent, str, float]) -> Exponent:
    if isinstance(x, str):
        x = Fraction(x)
    elif isinstance(x, float):
        if math.isinf(x):
            return x
        x = Fraction(x)
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def fmt_exponent(e: Exponent) -> str:
    if isinstance(e, Fraction) and e.denominator != 1:
        return f"({e})"
    return str(e)


@dataclass(frozen=True)
class Comparison:
    equal: bool
    order: Order
    exponent: Optional[Exponent] = None
    left: Optional[CycloNumber] = None
    right: Optional[CycloNumber] = None

    def __bool__(self) -> bool:
        return self.equal


class QSeries:
    __slots__ = ("terms", "order")

    def __init__(
        self, terms: Optional[Mapping[Exponent, Coefficient]] = None, order: Order = EXACT
    ):
        self.order: Order = as_exponent(order)
        self.terms: Dict[Exponent, CycloNumber] = {}
        if terms:
            for e, c in terms.items():
                e = as_exponent(e)
                c = CycloNumber.coerce(c)
                if c and e < self.order:
                    self.terms[e] = c

    @classmethod
    def _raw(cls, terms: Dict[Exponent, CycloNumber], order: Order) -> "QSeries":
        # Caller guarantees normalized exponents, nonzero coefficients and e < order
        s = cls.__new__(cls)
        s.terms = terms
        s.order = order
        return s

    @classmethod
    def zero(cls, order: Order = EXACT) -> "QSeries":
        return cls._raw({}, order)

    @classmethod
    def one(cls, order: Order = EXACT) -> "QSeries":
        return cls({0: ONE}, order)

    @classmethod
    def monomial(cls, coefficient: Coefficient, exponent: Exponent,
                 order: Order = EXACT) -> "QSeries":
        return cls({exponent: coefficient}, order)

    @classmethod
    def from_list(
        cls, coefficients: Iterable[Coefficient], order: Optional[Order] = None
    ) -> "QSeries":
        """Series with integer exponents 0, 1, 2, ... read from a coefficient list."""
        coefficients = list(coefficients)
        return cls(dict(enumerate(coefficients)), len(coefficients) if order is None else order)

    # Inspection

    def is_exact(self) -> bool:
        return math.isinf(self.order)

    def valuation(self) -> Order:
        """Least stored exponent; the order itself for the zero series."""
        return min(self.terms) if self.terms else self.order

    def coefficient(self, e: Union[Exponent, str]) -> CycloNumber:
        return series_coefficient(self, e)

    def items(self) -> List[Tuple[Exponent, CycloNumber]]:
        return sorted(self.terms.items())

    def is_rational(self) -> bool:
        return all(c.rational for c in self.terms.values())

    def exponent_denominator(self) -> int:
        lcm = 1
        for e in self.terms:
            if isinstance(e, Fraction):
                lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
        return lcm

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    __hash__ = None

    # Arithmetic

    def truncate(self, order: Order) -> "QSeries":
        order = as_exponent(order)
        if order >= self.order:
            return self
        return QSeries._raw({e: c for e, c in self.terms.items() if e < order}, order)

    def shift(self, e: Exponent) -> "QSeries":
        """Multiply by q^e."""
        e = as_exponent(e)
        if e == 0:
            return self
        return QSeries._raw({x + e: c for x, c in self.terms.items()}, self.order + e)

    def scale(self, c: Coefficient) -> "QSeries":
        c = CycloNumber.coerce(c)
        if c.is_zero():
            return QSeries.zero(self.order)
        if c == ONE:
            return self
        return QSeries._raw({e: v * c for e, v in self.terms.items()}, self.order)

    def __neg__(self) -> "QSeries":
        return QSeries._raw({e: -c for e, c in self.terms.items()}, self.order)

    def __add__(self, other: Union["QSeries", Coefficient]) -> "QSeries":
        if not isinstance(other, QSeries):
            other = QSeries({0: other})
        order = min(self.order, other.order)
        terms = {e: c for e, c in self.terms.items() if e < order}
        for e, c in other.terms.items():
            if e >= order:
                continue
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return QSeries._raw(terms, order)

    __radd__ = __add__

    def __sub__(self, other: Union["QSeries", Coefficient]) -> "QSeries":
        if not isinstance(other, QSeries):
            other = QSeries({0: other})
        return self + (-other)

    def __rsub__(self, other: Coefficient) -> "QSeries":
        return QSeries({0: other}) - self

    def __mul__(self, other: Union["QSeries", Coefficient]) -> "QSeries":
        if isinstance(other, QSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["QSeries", Coefficient]) -> "QSeries":
        if isinstance(other, QSeries):
            return series_mul(self, series_invert(other, self.order))
        return self.scale(CycloNumber.coerce(other).inverse())

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return series_invert(self) ** (-n)
        result = QSeries.one()
        for _ in range(n):
            result = result * self
        return result

    def mul_binomial(self, c: Coefficient, e: Exponent) -> "QSeries":
        """Multiply by (1 - c*q^e) for e > 0; the order is unchanged."""
        c = CycloNumber.coerce(c)
        order = self.order
        terms = dict(self.terms)
        for x, v in self.terms.items():
            y = x + e
            if y >= order:
                continue
            s = terms.get(y)
            s = -(v * c) if s is None else s - v * c
            if s:
                terms[y] = s
            else:
                del terms[y]
        return QSeries._raw(terms, order)

    def div_binomial(self, c: Coefficient, e: Exponent) -> "QSeries":
        """Divide by (1 - c*q^e) for e > 0 using g[x] = f[x] + c*g[x - e]."""
        if math.isinf(self.order) and self.terms:
            raise TruncationError("division by a binomial needs a finite working order")
        c = CycloNumber.coerce(c)
        order = self.order
        f = self.terms
        result: Dict[Exponent, CycloNumber] = {}
        heap = list(f)
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            x = heapq.heappop(heap)
            if x >= order:
                break
            prev = result.get(x - e)
            v = f.get(x, ZERO) if prev is None else f.get(x, ZERO) + c * prev
            if not v:
                continue
            result[x] = v
            y = x + e
            if y < order and y not in queued:
                queued.add(y)
                heapq.heappush(heap, y)
        return QSeries._raw(result, order)

    def scale_exponents(self, c: Union[Exponent, str]) -> "QSeries":
        return series_scale_exponents(self, c)

    def invert(self, order: Optional[Order] = None) -> "QSeries":
        return series_invert(self, order)

    def equal_to_order(self, other: "QSeries", order: Order) -> Comparison:
        return series_equal_to_order(self, other, order)

    # Rendering

    def __repr__(self) -> str:
        return f"QSeries({str(self)!r})"

    def __str__(self) -> str:
        parts = []
        for e, c in self.items():
            if e == 0:
                parts.append(f"({c})" if not c.rational else str(c))
                continue
            power = "q" if e == 1 else f"q^{fmt_exponent(e)}"
            if c == ONE:
                parts.append(power)
            elif c == -ONE:
                parts.append(f"-{power}")
            elif c.rational:
                parts.append(f"{c}*{power}")
            else:
                parts.append(f"({c})*{power}")
        text = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if not self.is_exact():
            text += f" (mod q^{fmt_exponent(self.order)})"
        return text

    def to_dump(self) -> List[List]:
        """Machine-readable form: [exponent, [c0, c1, c2, c3]] pairs, fractions as strings."""
        return [[str(e), [str(x) for x in c.coords]] for e, c in self.items()]


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    """Product truncated at min(T_f + val(g), T_g + val(f))."""
    order = min(f.order + g.valuation(), g.order + f.valuation())
    if not f.terms or not g.terms:
        return QSeries._raw({}, order)
    if len(f.terms) > len(g.terms):
        f, g = g, f
    g_items = sorted(g.terms.items())
    terms: Dict[Exponent, CycloNumber] = {}
    for x, a in f.terms.items():
        limit = order - x
        for y, b in g_items:
            if y >= limit:
                break
            z = x + y
            p = a * b
            s = terms.get(z)
            terms[z] = p if s is None else s + p
    return QSeries._raw({e: c for e, c in terms.items() if c}, order)


def series_invert(f: QSeries, order: Optional[Order] = None) -> QSeries:
    """Inverse of f, known modulo q^(T - 2*val(f)) or the requested order if smaller.

    The leading monomial is factored out and the remaining unit series is inverted by the
    standard recurrence over the exponent lattice of f.
    """
    if not f.terms:
        raise SeriesInversionError("cannot invert the zero series")
    v = f.valuation()
    lead = f.terms[v]
    if lead.is_zero():
        raise SeriesInversionError("leading coefficient is zero")
    target = f.order - 2 * v
    if order is not None:
        target = min(target, as_exponent(order))
    if math.isinf(target):
        raise TruncationError("inverting needs a finite working order")

    # h = f / (lead * q^v) is a unit series known modulo q^(T - v); its inverse is needed to
    # order target + v before shifting back by -v
    work = target + v
    inv_lead = lead.inverse()
    h = [(e - v, c * inv_lead) for e, c in sorted(f.terms.items()) if e != v and e - v < work]
    result: Dict[Exponent, CycloNumber] = {0: ONE}
    # Exponents of 1/h lie in the additive monoid generated by the exponents of h
    heap = [0]
    queued = {0}
    while heap:
        x = heapq.heappop(heap)
        if x > 0:
            total = ZERO
            for e, c in h:
                if e > x:
                    break
                prev = result.get(x - e)
                if prev is not None:
                    total = total - c * prev
            if not total:
                continue
            result[x] = total
        for e, _ in h:
            y = x + e
            if y >= work:
                break
            if y not in queued:
                queued.add(y)
                heapq.heappush(heap, y)
    return QSeries._raw({e - v: c * inv_lead for e, c in result.items()}, target)


def series_scale_exponents(f: QSeries, c: Union[Exponent, str]) -> QSeries:
    """The substitution q -> q^c for c > 0."""
    c = as_exponent(c)
    if c <= 0:
        raise ValueError(f"exponent scale must be positive, got {c}")
    terms = {as_exponent(e * c): v for e, v in f.terms.items()}
    return QSeries._raw(terms, as_exponent(f.order * c))


def series_coefficient(f: QSeries, e: Union[Exponent, str]) -> CycloNumber:
    e = as_exponent(e)
    if e >= f.order:
        raise TruncationError(f"coefficient of q^{fmt_exponent(e)} is beyond the known order "
                              f"{fmt_exponent(f.order)}")
    return f.terms.get(e, ZERO)


def series_equal_to_order(f: QSeries, g: QSeries, order: Union[Order, str]) -> Comparison:
    order = as_exponent(order)
    if f.order < order or g.order < order:
        raise TruncationError(
            f"series known to orders {fmt_exponent(f.order)} and {fmt_exponent(g.order)}, "
            f"comparison needs {fmt_exponent(order)}"
        )
    exponents = sorted(e for e in set(f.terms) | set(g.terms) if e < order)
    for e in exponents:
        left = f.terms.get(e, ZERO)
        right = g.terms.get(e, ZERO)
        if left != right:
            return Comparison(False, order, e, left, right)
    return Comparison(True, order)


def series_sum(parts: Iterable[QSeries], order: Order) -> QSeries:
    """Sum of many series into a single accumulator, truncated at `order`."""
    terms: Dict[Exponent, CycloNumber] = {}
    for part in parts:
        if part.order < order:
            raise TruncationError(
                f"summand known to order {fmt_exponent(part.order)} < {fmt_exponent(order)}"
            )
        for e, c in part.terms.items():
            if e < order:
                s = terms.get(e)
                terms[e] = c if s is None else s + c
    return QSeries._raw({e: c for e, c in terms.items() if c}, as_exponent(order))


def rational_coefficients(f: QSeries, length: int) -> List[Rational]:
    """Dense list of the rational coefficients of q^0 .. q^(length-1)."""
    return [series_coefficient(f, k).as_rational() for k in range(length)]


__all__ = (
    "Comparison", "EXACT", "QSeries", "SeriesInversionError", "TruncationError", "as_exponent",
    "fmt_exponent", "rational_coefficients", "series_coefficient", "series_equal_to_order",
    "series_invert", "series_mul", "series_scale_exponents", "series_sum"
)
