"""Monomials unit*q^exp, the specialized values of a, b, x, y, rho1, rho2, ..."""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from qbailey.cyclo import ONE, ZETA, CycloNumber, cyclo_pow, parse_unit, render
from qbailey.qseries import EXACT, Exponent, Order, QSeries, as_exponent, fmt_exponent


class MonomialSyntaxError(ValueError):
    """Raised when a monomial string cannot be parsed."""


class _Infinity:
    """Marker for a parameter sent to infinity (rho1, rho2, N, b)."""
    _instance = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


@dataclass(frozen=True)
class Monomial:
    unit: CycloNumber
    exp: Exponent = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit", CycloNumber.coerce(self.unit))
        object.__setattr__(self, "exp", as_exponent(self.exp))

    def is_zero(self) -> bool:
        return self.unit.is_zero()

    def __mul__(self, other: Union["Monomial", CycloNumber, int, Fraction]) -> "Monomial":
        if isinstance(other, Monomial):
            return Monomial(self.unit * other.unit, self.exp + other.exp)
        return Monomial(self.unit * CycloNumber.coerce(other), self.exp)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Monomial", CycloNumber, int, Fraction]) -> "Monomial":
        if isinstance(other, Monomial):
            return Monomial(self.unit / other.unit, self.exp - other.exp)
        return Monomial(self.unit / CycloNumber.coerce(other), self.exp)

    def __rtruediv__(self, other: Union[CycloNumber, int, Fraction]) -> "Monomial":
        return Monomial(CycloNumber.coerce(other) / self.unit, -self.exp)

    def __neg__(self) -> "Monomial":
        return Monomial(-self.unit, self.exp)

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(cyclo_pow(self.unit, n), self.exp * n)

    def root(self, k: int) -> Optional["Monomial"]:
        """A k-th root inside Q(zeta_12) when one is found, else None.

        Units are tried as zeta^j times a positive rational with exact k-th roots on top and bottom.
        """
        zeta_power = ONE
        for _ in range(12):
            rest = self.unit / cyclo_pow(zeta_power, k)
            if rest.rational and rest.coords[0] > 0:
                r = Fraction(rest.coords[0])
                num, den = _int_root(r.numerator, k), _int_root(r.denominator, k)
                if num is not None and den is not None:
                    return Monomial(zeta_power * Fraction(num, den), Fraction(self.exp) / k)
            zeta_power = zeta_power * ZETA
        return None

    def sqrt(self) -> Optional["Monomial"]:
        return self.root(2)

    def series(self, order: Order = EXACT) -> QSeries:
        return QSeries.monomial(self.unit, self.exp, order)

    def __str__(self) -> str:
        if self.exp == 0:
            return render(self.unit)
        power = "q" if self.exp == 1 else f"q^{fmt_exponent(self.exp)}"
        if self.unit == ONE:
            return power
        if self.unit == -ONE:
            return f"-{power}"
        unit = render(self.unit)
        if not self.unit.rational and " " in unit:
            unit = f"({unit})"
        return f"{unit}*{power}"


MonomialOrInfinity = Union[Monomial, _Infinity]


def _int_root(n: int, k: int) -> Optional[int]:
    r = round(n**(1 / k)) if k != 2 else math.isqrt(n)
    for candidate in (r - 1, r, r + 1):
        if candidate >= 0 and candidate**k == n:
            return candidate
    return None

_MONOMIAL_RE = re.compile(
    r"^(?P<sign>[+-])?"
    r"(?P<coef>\d+(?:/\d+)?|omega2|omega|zeta|i|\[[^\]]*\])?"
    r"\*?"
    r"(?P<a>a(?:\^(?P<apow>-?\d+|\(-?\d+\)))?)?"
    r"\*?"
    r"(?P<q>q(?:\^(?P<exp>-?\d+(?:/\d+)?|\(-?\d+(?:/\d+)?\)))?)?$"
)


def parse_symbolic_monomial(text: str) -> Tuple[Monomial, int]:
    """Parse "c*a^m*q^(p/r)" into (c*q^(p/r), m); m = 0 when a does not occur."""
    if not isinstance(text, str):
        if isinstance(text, (int, Fraction)):
            return Monomial(CycloNumber(text), 0), 0
        raise MonomialSyntaxError(f"invalid monomial {text!r}")
    compact = text.replace(" ", "")
    m = _MONOMIAL_RE.match(compact)
    if not compact or not m or not (m.group("coef") or m.group("a") or m.group("q")):
        raise MonomialSyntaxError(f"invalid monomial {text!r}")

    unit = parse_unit(m.group("coef")) if m.group("coef") else ONE
    if m.group("sign") == "-":
        unit = -unit

    a_power = 0
    if m.group("a"):
        a_power = int(m.group("apow").strip("()")) if m.group("apow") else 1

    exp: Exponent = 0
    if m.group("q"):
        exp = as_exponent(Fraction(m.group("exp").strip("()"))) if m.group("exp") else 1
    return Monomial(unit, exp), a_power


def parse_monomial(text: Union[str, int]) -> MonomialOrInfinity:
    """Parse the CLI syntax "c*q^(p/r)"; "inf" gives INFINITY."""
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity"):
        return INFINITY
    monomial, a_power = parse_symbolic_monomial(text)
    if a_power:
        raise MonomialSyntaxError(f"symbol a is not allowed here: {text!r}")
    return monomial


def render_parameter(value: MonomialOrInfinity) -> str:
    return "inf" if value is INFINITY else str(value)


__all__ = (
    "INFINITY", "Monomial", "MonomialOrInfinity", "MonomialSyntaxError", "parse_monomial",
    "parse_symbolic_monomial", "render_parameter"
)
