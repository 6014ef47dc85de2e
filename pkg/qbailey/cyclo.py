"""Exact arithmetic in the cyclotomic field Q(zeta), zeta a primitive 12th root of unity.

Elements are stored as c0 + c1*zeta + c2*zeta^2 + c3*zeta^3 with rational coordinates, reduced
with zeta^4 = zeta^2 - 1. The field contains i = zeta^3 and omega = zeta^4 = zeta^2 - 1.
"""

from fractions import Fraction
from typing import Iterable, Tuple, Union

import ujson as json

Rational = Union[int, Fraction]


class CycloZeroDivisionError(ZeroDivisionError):
    """Raised when inverting the zero element."""


def _norm(x: Rational) -> Rational:
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class CycloNumber:
    __slots__ = ("coords", "rational")

    def __init__(self, c0: Rational = 0, c1: Rational = 0, c2: Rational = 0, c3: Rational = 0):
        self.coords: Tuple[Rational, Rational, Rational, Rational] = (
            _norm(c0), _norm(c1), _norm(c2), _norm(c3)
        )
        self.rational = not (c1 or c2 or c3)

    @classmethod
    def coerce(cls, x: Union["CycloNumber", Rational]) -> "CycloNumber":
        if isinstance(x, CycloNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycloNumber")

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return self.rational

    def as_rational(self) -> Rational:
        if not self.rational:
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.rational and self.coords[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        if self.rational:
            return hash(self.coords[0])
        return hash(self.coords)

    def __neg__(self) -> "CycloNumber":
        c = self.coords
        return CycloNumber(-c[0], -c[1], -c[2], -c[3])

    def __add__(self, other: Union["CycloNumber", Rational]) -> "CycloNumber":
        other = CycloNumber.coerce(other)
        a, b = self.coords, other.coords
        if self.rational and other.rational:
            return CycloNumber(a[0] + b[0])
        return CycloNumber(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    __radd__ = __add__

    def __sub__(self, other: Union["CycloNumber", Rational]) -> "CycloNumber":
        return self + (-CycloNumber.coerce(other))

    def __rsub__(self, other: Rational) -> "CycloNumber":
        return CycloNumber.coerce(other) - self

    def __mul__(self, other: Union["CycloNumber", Rational]) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            c = self.coords
            return CycloNumber(c[0] * other, c[1] * other, c[2] * other, c[3] * other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self.coords, other.coords
        if other.rational:
            s = b[0]
            if self.rational:
                return CycloNumber(a[0] * s)
            return CycloNumber(a[0] * s, a[1] * s, a[2] * s, a[3] * s)
        if self.rational:
            s = a[0]
            return CycloNumber(b[0] * s, b[1] * s, b[2] * s, b[3] * s)

        p = [0] * 7
        for i in range(4):
            if a[i]:
                for j in range(4):
                    if b[j]:
                        p[i + j] += a[i] * b[j]
        # zeta^4 = zeta^2 - 1, zeta^5 = zeta^3 - zeta, zeta^6 = -1
        return CycloNumber(p[0] - p[4] - p[6], p[1] - p[5], p[2] + p[4], p[3] + p[5])

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        return cyclo_inv(self)

    def __truediv__(self, other: Union["CycloNumber", Rational]) -> "CycloNumber":
        return self * cyclo_inv(CycloNumber.coerce(other))

    def __rtruediv__(self, other: Rational) -> "CycloNumber":
        return CycloNumber.coerce(other) * cyclo_inv(self)

    def __pow__(self, n: int) -> "CycloNumber":
        return cyclo_pow(self, n)

    def conjugate(self) -> "CycloNumber":
        return cyclo_conj(self)

    def __repr__(self) -> str:
        return f"CycloNumber{tuple(str(c) for c in self.coords)}"

    def __str__(self) -> str:
        return render(self)


ZERO = CycloNumber(0)
ONE = CycloNumber(1)
MINUS_ONE = CycloNumber(-1)
ZETA = CycloNumber(0, 1)
I = CycloNumber(0, 0, 0, 1)
OMEGA = CycloNumber(-1, 0, 1, 0)
OMEGA2 = CycloNumber(0, 0, -1, 0)

UNIT_TAGS = {
    "1": ONE,
    "-1": MINUS_ONE,
    "i": I,
    "-i": -I,
    "omega": OMEGA,
    "-omega": -OMEGA,
    "omega2": OMEGA2,
    "-omega2": -OMEGA2,
    "zeta": ZETA,
    "-zeta": -ZETA,
}


def cyclo_mul(x: CycloNumber, y: CycloNumber) -> CycloNumber:
    return x * y


def cyclo_inv(x: CycloNumber) -> CycloNumber:
    """Solve x * y = 1 by Gaussian elimination on the multiplication-by-x matrix."""
    if x.is_zero():
        raise CycloZeroDivisionError("inverse of zero in Q(zeta_12)")
    if x.rational:
        return CycloNumber(Fraction(1) / x.coords[0])

    # Column j holds the coordinates of x * zeta^j
    columns = []
    power = ONE
    for _ in range(4):
        columns.append((x * power).coords)
        power = power * ZETA
    rows = [[Fraction(columns[j][i]) for j in range(4)] + [Fraction(int(i == 0))] for i in range(4)]

    for col in range(4):
        pivot = next(r for r in range(col, 4) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(4):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
    return CycloNumber(*(rows[i][4] for i in range(4)))


def cyclo_pow(x: CycloNumber, n: int) -> CycloNumber:
    if n < 0:
        return cyclo_pow(cyclo_inv(x), -n)
    result = ONE
    base = x
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def cyclo_conj(x: CycloNumber) -> CycloNumber:
    """The automorphism zeta -> zeta^-1 = zeta - zeta^3, i.e. complex conjugation."""
    c0, c1, c2, c3 = x.coords
    return CycloNumber(c0 + c2, c1, -c2, -c1 - c3)


def render(x: CycloNumber) -> str:
    """Canonical text form, using the unit tags where one applies."""
    if x.rational:
        return str(x.coords[0])
    for tag, unit in UNIT_TAGS.items():
        if unit == x:
            return tag
    parts = []
    for k, c in enumerate(x.coords):
        if not c:
            continue
        monomial = "" if k == 0 else ("ζ" if k == 1 else f"ζ^{k}")
        parts.append(str(c) if k == 0 else f"({c}){monomial}")
    return " + ".join(parts)


def parse_unit(value: Union[str, int, Iterable[Union[str, int]]]) -> CycloNumber:
    """Parse a coefficient given as a tag, an integer, a "p/q" string or a 4-tuple."""
    if isinstance(value, CycloNumber):
        return value
    if isinstance(value, bool):
        raise ValueError(f"invalid unit {value!r}")
    if isinstance(value, (int, Fraction)):
        return CycloNumber(value)
    if isinstance(value, str):
        text = value.strip()
        if text in UNIT_TAGS:
            return UNIT_TAGS[text]
        if text.startswith("["):
            return parse_unit(json.loads(text))
        try:
            return CycloNumber(Fraction(text))
        except ValueError:
            raise ValueError(f"invalid unit {value!r}") from None
    coords = [Fraction(str(c)) for c in value]
    if len(coords) != 4:
        raise ValueError(f"unit tuple must have 4 coordinates, got {len(coords)}")
    return CycloNumber(*coords)


__all__ = (
    "CycloNumber", "CycloZeroDivisionError", "I", "MINUS_ONE", "OMEGA", "OMEGA2", "ONE",
    "UNIT_TAGS", "ZERO", "ZETA", "cyclo_conj", "cyclo_inv", "cyclo_mul", "cyclo_pow",
    "parse_unit", "render"
)
