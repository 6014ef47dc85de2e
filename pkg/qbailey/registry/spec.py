"""Registry schema: linear and quadratic index forms, Pochhammer templates, terms, identities."""

import asyncio
import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import aiofiles
import ujson as json
from aiocache import cached

from qbailey.constants import DEFAULT_PAIRS_PATH, DEFAULT_REGISTRY_PATH
from qbailey.cyclo import ONE, CycloNumber, cyclo_pow, parse_unit
from qbailey.monomial import (
    INFINITY, Monomial, MonomialOrInfinity, parse_monomial, parse_symbolic_monomial
)
from qbailey.qproducts import INFINITE, PochFactor, ProductSpec, ProductTerm
from qbailey.qseries import Exponent, as_exponent, fmt_exponent

logger = logging.getLogger(__name__)

A_ONE = Monomial(ONE, 0)


class RegistryError(ValueError):
    """Raised when a registry entry is malformed, invalid or unknown."""

    def __init__(self, message: str, entry: Optional[str] = None, field: Optional[str] = None):
        self.entry = entry
        self.field = field
        context = ", ".join(
            part for part in (f"entry {entry}" if entry else "", f"field {field}" if field else "")
            if part
        )
        super().__init__(f"{message} ({context})" if context else message)


_FORM_TERM_RE = re.compile(
    r"([+-])\s*(\(?-?\d+(?:/\d+)?\)?)?\s*\*?\s*(n\^2|r\^2|nr|rn|n|r)?"
)
_FORM_KEYS = {"n^2": "A", "nr": "B", "rn": "B", "r^2": "C", "n": "D", "r": "E", None: "F"}


def _parse_form(text: str) -> Dict[str, Fraction]:
    """Parse "2n^2+4nr+(5/2)r^2-(1/2)r" style sums into coefficients keyed A..F."""
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty form")
    if compact[0] not in "+-":
        compact = "+" + compact
    coefficients: Dict[str, Fraction] = {}
    pos = 0
    while pos < len(compact):
        m = _FORM_TERM_RE.match(compact, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse {text!r} at {compact[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2).strip("()")) if m.group(2) else Fraction(1)
        key = _FORM_KEYS[m.group(3)]
        coefficients[key] = coefficients.get(key, Fraction(0)) + sign * coef
        pos = m.end()
    return coefficients


def _fmt_form(parts: Sequence[Tuple[Fraction, str]]) -> str:
    text = ""
    for coef, var in parts:
        if not coef:
            continue
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        if var and mag == 1:
            body = var
        else:
            body = fmt_exponent(as_exponent(mag)) + var
        text += sign + body
    if not text:
        return "0"
    return text[1:] if text[0] == "+" else text


@dataclass(frozen=True)
class LinearForm:
    coeff_n: int = 0
    coeff_r: int = 0
    constant: int = 0

    def __call__(self, n: int, r: int = 0) -> int:
        return self.coeff_n * n + self.coeff_r * r + self.constant

    @classmethod
    def parse(cls, value: Union[str, int, Mapping[str, int]]) -> "LinearForm":
        if isinstance(value, int):
            return cls(0, 0, value)
        if isinstance(value, Mapping):
            return cls(int(value.get("n", 0)), int(value.get("r", 0)), int(value.get("c", 0)))
        coefficients = _parse_form(str(value))
        if set(coefficients) - {"D", "E", "F"}:
            raise ValueError(f"{value!r} is not linear in n, r")
        if any(c.denominator != 1 for c in coefficients.values()):
            raise ValueError(f"{value!r} needs integer coefficients")
        return cls(*(int(coefficients.get(key, 0)) for key in "DEF"))

    def __str__(self) -> str:
        return _fmt_form([
            (Fraction(self.coeff_n), "n"), (Fraction(self.coeff_r), "r"),
            (Fraction(self.constant), "")
        ])


@dataclass(frozen=True)
class QuadForm:
    A: Fraction = Fraction(0)
    B: Fraction = Fraction(0)
    C: Fraction = Fraction(0)
    D: Fraction = Fraction(0)
    E: Fraction = Fraction(0)
    F: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in "ABCDEF":
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __call__(self, n: int, r: int = 0) -> Exponent:
        return as_exponent(
            self.A * n * n + self.B * n * r + self.C * r * r + self.D * n + self.E * r + self.F
        )

    @classmethod
    def parse(cls, value: Union[str, int, Mapping[str, Any]]) -> "QuadForm":
        if isinstance(value, int):
            return cls(F=Fraction(value))
        if isinstance(value, Mapping):
            return cls(**{k: Fraction(str(v)) for k, v in value.items() if k in "ABCDEF"})
        return cls(**_parse_form(str(value)))

    def is_coercive(self, two_variables: bool = True) -> bool:
        """Copositivity of the quadratic part on the nonnegative quadrant, strictly."""
        if not two_variables:
            return self.A > 0 and not (self.B or self.C or self.E)
        return self.A > 0 and self.C > 0 and (self.B >= 0 or self.B * self.B < 4 * self.A * self.C)

    def row_start(self, n: int) -> Fraction:
        """Real vertex of r -> Q(n, r), clamped at 0."""
        return max(Fraction(0), -(self.B * n + self.E) / (2 * self.C))

    def row_floor(self, n: int) -> Fraction:
        """Lower bound for Q(n, r) over r >= 0."""
        r = self.row_start(n)
        return (self.A * n * n + self.B * n * r + self.C * r * r + self.D * n + self.E * r + self.F)

    def n_start(self, two_variables: bool = True) -> int:
        """Index beyond which the row floor is increasing in n."""
        candidates = [Fraction(0), -self.D / (2 * self.A)]
        if two_variables:
            a2 = self.A - self.B * self.B / (4 * self.C)
            b2 = self.D - self.B * self.E / (2 * self.C)
            if a2 > 0:
                candidates.append(-b2 / (2 * a2))
            if self.B > 0:
                candidates.append(-self.E / self.B)
        return math.ceil(max(candidates))

    def __str__(self) -> str:
        return _fmt_form([
            (self.A, "n^2"), (self.B, "nr"), (self.C, "r^2"), (self.D, "n"), (self.E, "r"),
            (self.F, "")
        ])


@dataclass(frozen=True)
class PochTemplate:
    """(base * a^base_a; step)_length ^ power with length a linear form or None for infinity."""
    base: Monomial
    step: Monomial
    length: Optional[LinearForm] = None
    power: int = 1
    base_a: int = 0

    def instantiate(self, n: int = 0, r: int = 0, a: Monomial = A_ONE) -> PochFactor:
        base = self.base * a**self.base_a if self.base_a else self.base
        length = INFINITE if self.length is None else self.length(n, r)
        return PochFactor.of(base, self.step, length, self.power)

    def __str__(self) -> str:
        base = str(self.base)
        if self.base_a:
            a = "a" if self.base_a == 1 else f"a^{self.base_a}"
            base = a if base == "1" else f"{a}*{base}"
        length = "inf" if self.length is None else str(self.length)
        text = f"({base};{self.step})_{{{length}}}"
        return text if self.power == 1 else f"{text}^({self.power})"


_POCH_RE = re.compile(
    r"^\((?P<bases>[^;]+);(?P<step>.+?)\)_(?:\{(?P<braced>[^}]*)\}|(?P<bare>[\w]+))"
    r"(?:\^\(?(?P<power>-?\d+)\)?)?$"
)


def parse_poch(value: Union[str, Mapping[str, Any]], sign: int = 1) -> List[PochTemplate]:
    """Parse "(a1,a2;step)_{length}^k" or a dict into templates; `sign` -1 puts them below."""
    if isinstance(value, Mapping):
        length = value.get("length", "inf")
        base = Monomial(
            parse_unit(value.get("base_unit", "1")), as_exponent(str(value.get("base_exp", 0)))
        )
        step = Monomial(
            parse_unit(value.get("step_unit", "1")), as_exponent(str(value.get("step_exp", 1)))
        )
        return [PochTemplate(
            base, step, None if length == "inf" else LinearForm.parse(length),
            sign * int(value.get("power", 1)), int(value.get("base_a", 0))
        )]

    m = _POCH_RE.match(str(value).replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse Pochhammer symbol {value!r}")
    step, step_a = parse_symbolic_monomial(m.group("step"))
    if step_a:
        raise ValueError(f"step of {value!r} cannot contain a")
    length_text = m.group("braced") if m.group("braced") is not None else m.group("bare")
    length = None if length_text in ("inf", "infty", "\\infty") else LinearForm.parse(length_text)
    power = sign * int(m.group("power") or 1)
    templates = []
    for text in m.group("bases").split(","):
        base, base_a = parse_symbolic_monomial(text)
        templates.append(PochTemplate(base, step, length, power, base_a))
    return templates


def parse_factor_list(num: Iterable, den: Iterable) -> Tuple[PochTemplate, ...]:
    factors: List[PochTemplate] = []
    for item in num:
        factors.extend(parse_poch(item, 1))
    for item in den:
        factors.extend(parse_poch(item, -1))
    return tuple(factors)


def parse_product(value: Mapping[str, Any]) -> ProductSpec:
    """A product of infinite (or fixed-length) symbols from {"num": [...], "den": [...]}."""
    templates = parse_factor_list(value.get("num", []), value.get("den", []))
    for t in templates:
        if t.base_a:
            raise ValueError(f"product factor {t} cannot contain a")
        if t.length is not None and (t.length.coeff_n or t.length.coeff_r):
            raise ValueError(f"product factor {t} must have a fixed length")
    return ProductSpec(tuple(t.instantiate() for t in templates))


@dataclass(frozen=True)
class TermSpec:
    """unit prefactors * a^a_power * q^exponent * Pochhammer factors at lattice point (n, r)."""
    variables: Tuple[str, ...]
    exponent: QuadForm
    factors: Tuple[PochTemplate, ...] = ()
    units: Tuple[Tuple[CycloNumber, LinearForm], ...] = ()
    a_power: LinearForm = field(default_factory=LinearForm)

    def term(self, n: int, r: int = 0, a: Monomial = A_ONE) -> ProductTerm:
        unit = ONE
        for u, power in self.units:
            unit = unit * cyclo_pow(u, power(n, r))
        mono = a**self.a_power(n, r) if self.a_power != LinearForm() else A_ONE
        return ProductTerm(
            unit * mono.unit, self.exponent(n, r) + mono.exp,
            tuple(f.instantiate(n, r, a) for f in self.factors)
        )

    @property
    def two_variables(self) -> bool:
        return "r" in self.variables


def parse_units(value: Iterable) -> Tuple[Tuple[CycloNumber, LinearForm], ...]:
    units = []
    for item in value:
        tag, power = item
        units.append((parse_unit(tag), LinearForm.parse(power)))
    return tuple(units)


def parse_term(value: Mapping[str, Any], variables: Sequence[str] = ("n", "r")) -> TermSpec:
    return TermSpec(
        variables=tuple(variables),
        exponent=QuadForm.parse(value.get("exponent", 0)),
        factors=parse_factor_list(value.get("num", []), value.get("den", [])),
        units=parse_units(value.get("units", [])),
        a_power=LinearForm.parse(value.get("a_power", 0)),
    )


@dataclass(frozen=True)
class LemmaMeta:
    """Lemma specialization reproducing an identity: scale maps lemma exponents to printed ones."""
    dek: Tuple[int, int, int]
    a: Monomial
    rho1: MonomialOrInfinity
    rho2: MonomialOrInfinity
    N: Any
    scale: Fraction = Fraction(1)
    factor: ProductSpec = field(default_factory=ProductSpec)


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    lhs: TermSpec
    rhs: ProductSpec
    meta: Dict[str, Any] = field(default_factory=dict, compare=False)
    lemma: Optional[LemmaMeta] = None


@dataclass(frozen=True)
class PairSpec:
    id: str
    dek: Tuple[int, int, int]
    term: TermSpec
    meta: Dict[str, Any] = field(default_factory=dict, compare=False)


def _parse_parameter(value: Any) -> MonomialOrInfinity:
    return parse_monomial(str(value))


def parse_lemma(value: Mapping[str, Any]) -> LemmaMeta:
    d, e, k = (int(x) for x in value["dek"])
    a = parse_monomial(str(value.get("a", "1")))
    assert isinstance(a, Monomial), "a cannot be infinite"
    n_value = value.get("N", "inf")
    n_limit = INFINITY if str(n_value) == "inf" else int(n_value)
    return LemmaMeta(
        dek=(d, e, k),
        a=a,
        rho1=_parse_parameter(value.get("rho1", "inf")),
        rho2=_parse_parameter(value.get("rho2", "inf")),
        N=n_limit,
        scale=Fraction(str(value.get("scale", 1))),
        factor=parse_product(value.get("factor", {})),
    )


def _check_identity_factors(templates: Sequence[PochTemplate]) -> None:
    for t in templates:
        assert t.base.exp >= 0, f"{t} has a negative base exponent"
        assert t.step.exp > 0, f"{t} needs a positive step exponent"
        assert not t.base_a, f"{t} references a outside a pair formula"


def parse_identity(value: Mapping[str, Any]) -> IdentitySpec:
    i_id = value.get("id")
    try:
        assert isinstance(i_id, str) and i_id, "missing id"
        variables = tuple(value.get("variables", ["n", "r"]))
        assert variables in (("n",), ("n", "r")), f"variables must be [n] or [n, r]: {variables}"
        lhs = parse_term(value["lhs"], variables)
        assert lhs.exponent.is_coercive(len(variables) == 2), (
            f"exponent {lhs.exponent} is not coercive on the summation lattice"
        )
        assert lhs.a_power == LinearForm(), "identity sums cannot carry powers of a"
        _check_identity_factors(lhs.factors)
        rhs = parse_product(value["rhs"])
        meta = dict(value.get("meta", {}))
        lemma = parse_lemma(meta["lemma"]) if "lemma" in meta else None
    except RegistryError:
        raise
    except KeyError as e:
        raise RegistryError(f"missing key {e}", i_id) from None
    except (ValueError, AssertionError, TypeError) as e:
        raise RegistryError(str(e), i_id) from None
    return IdentitySpec(i_id, lhs, rhs, meta, lemma)


def parse_pair(value: Mapping[str, Any]) -> PairSpec:
    p_id = value.get("id")
    try:
        assert isinstance(p_id, str) and p_id, "missing id"
        dek = tuple(int(x) for x in value["dek"])
        assert len(dek) == 3 and min(dek) >= 1, f"invalid (d,e,k) {dek}"
        term = parse_term(value["term"], ("n", "r"))
        meta = dict(value.get("meta", {}))
    except KeyError as e:
        raise RegistryError(f"missing key {e}", p_id) from None
    except (ValueError, AssertionError, TypeError) as e:
        raise RegistryError(str(e), p_id) from None
    return PairSpec(p_id, dek, term, meta)


async def read_file(path: str) -> str:
    async with aiofiles.open(path, encoding="utf-8") as f:
        return await f.read()


def _entries(text: str, key: str, path: str) -> List[Mapping[str, Any]]:
    if not text.strip():
        return []
    try:
        data = json.loads(text)
    except ValueError as e:
        # ujson reports the offending position in its message
        raise RegistryError(f"{path} is not valid JSON: {e}") from None
    if isinstance(data, Mapping):
        data = data.get(key, [])
    if not isinstance(data, list):
        raise RegistryError(f"{path} must hold a list of entries under {key!r}")
    return data


def _unique(items: Sequence[Any], path: str) -> Tuple[Any, ...]:
    seen = set()
    for item in items:
        if item.id in seen:
            raise RegistryError(f"duplicate id in {path}", item.id)
        seen.add(item.id)
    return tuple(items)


@cached()
async def load_registry(path: str = DEFAULT_REGISTRY_PATH) -> Tuple[IdentitySpec, ...]:
    """Parse and validate an identity file; an empty file gives an empty registry."""
    text = await read_file(path)
    entries = _entries(text, "identities", path)
    identities = _unique([parse_identity(entry) for entry in entries], path)
    logger.debug(f"Loaded {len(identities)} identities from {path}")
    return identities


@cached()
async def load_pairs(path: str = DEFAULT_PAIRS_PATH) -> Tuple[PairSpec, ...]:
    text = await read_file(path)
    pairs = _unique([parse_pair(entry) for entry in _entries(text, "pairs", path)], path)
    logger.debug(f"Loaded {len(pairs)} Bailey pair formulas from {path}")
    return pairs


def registry(path: str = DEFAULT_REGISTRY_PATH) -> Tuple[IdentitySpec, ...]:
    """Blocking wrapper around load_registry for synchronous callers."""
    return asyncio.run(load_registry(path))


def pairs(path: str = DEFAULT_PAIRS_PATH) -> Tuple[PairSpec, ...]:
    return asyncio.run(load_pairs(path))


def get_identity(i_id: str, path: str = DEFAULT_REGISTRY_PATH) -> IdentitySpec:
    for identity in registry(path):
        if identity.id == i_id:
            return identity
    raise RegistryError("unknown identity", i_id)


def get_pair(p_id: str, path: str = DEFAULT_PAIRS_PATH) -> PairSpec:
    for pair in pairs(path):
        if pair.id == p_id:
            return pair
    raise RegistryError("unknown Bailey pair", p_id)


__all__ = (
    "IdentitySpec", "LemmaMeta", "LinearForm", "PairSpec", "PochTemplate", "QuadForm",
    "RegistryError", "TermSpec", "get_identity", "get_pair", "load_pairs", "load_registry", "pairs",
    "parse_identity", "parse_lemma", "parse_pair", "parse_poch", "parse_product", "parse_term",
    "registry"
)
