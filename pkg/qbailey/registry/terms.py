"""Evaluation of registry terms: double-sum sides, product sides and closed-form betas."""

import logging
import math
from itertools import count
from typing import Dict, Iterator, Tuple

from qbailey.monomial import Monomial
from qbailey.qproducts import ZERO_DIVISOR, ZeroDivisorError, product_spec_eval
from qbailey.qseries import Order, QSeries, TruncationError, as_exponent, series_sum
from qbailey.registry.spec import IdentitySpec, PairSpec, QuadForm, RegistryError, TermSpec

logger = logging.getLogger(__name__)


def lattice_points(form: QuadForm, two_variables: bool, order: Order) -> Iterator[Tuple[int, int]]:
    """Points (n, r) with Q(n, r) below the order, for a coercive Q."""
    n_start = form.n_start(two_variables)
    for n in count():
        if not two_variables:
            if form(n) >= order:
                if n >= n_start:
                    return
                continue
            yield n, 0
            continue

        if n >= n_start and form.row_floor(n) >= order:
            return
        r_start = form.row_start(n)
        for r in count():
            if form(n, r) >= order:
                if r >= r_start:
                    break
                continue
            yield n, r


def sum_lhs(t: TermSpec, order: Order) -> QSeries:
    """Sum of the term over the lattice, skipping points whose bound Q(n, r) reaches the order.

    Every term has valuation at least Q(n, r): its Pochhammer factors have nonnegative exponents,
    so they only raise the valuation. A term violating this is an error in the entry.
    """
    order = as_exponent(order)
    if math.isinf(order):
        raise TruncationError("a sum side needs a finite order")
    parts = []
    points = 0
    for n, r in lattice_points(t.exponent, t.two_variables, order):
        points += 1
        term = t.term(n, r)
        lead = term.lead()
        if lead is None:
            continue
        if lead is ZERO_DIVISOR:
            raise ZeroDivisorError(f"term at (n, r) = ({n}, {r}) has a vanishing denominator")
        if lead[1] < t.exponent(n, r):
            raise RegistryError(f"term at (n, r) = ({n}, {r}) starts below q^{t.exponent(n, r)}")
        parts.append(term.evaluate(order))
    logger.debug(f"Summed {len(parts)} of {points} lattice points below q^{order}")
    return series_sum(parts, order)


def eval_rhs(i: IdentitySpec, order: Order) -> QSeries:
    return product_spec_eval(i.rhs, order)


def pair_beta(pair: PairSpec, a_spec: Monomial, n: int, order: Order) -> QSeries:
    """The closed form at a = a_spec and index n; r runs to n, beyond which the terms vanish."""
    order = as_exponent(order)
    if math.isinf(order):
        raise TruncationError("a closed-form beta needs a finite order")
    parts = []
    for r in range(n + 1):
        term = pair.term.term(n, r, a_spec)
        lead = term.lead()
        if lead is None:
            continue
        if lead is ZERO_DIVISOR:
            raise ZeroDivisorError(
                f"{pair.id} at a = {a_spec}, n = {n}: vanishing denominator at r = {r}"
            )
        parts.append(term.evaluate(order))
    return series_sum(parts, order)


def expand(i: IdentitySpec, side: str, order: Order) -> Dict[str, QSeries]:
    if side not in ("lhs", "rhs", "both"):
        raise ValueError(f"side must be lhs, rhs or both, got {side!r}")
    result = {}
    if side in ("lhs", "both"):
        result["lhs"] = sum_lhs(i.lhs, order)
    if side in ("rhs", "both"):
        result["rhs"] = eval_rhs(i, order)
    return result


__all__ = ("eval_rhs", "expand", "lattice_points", "pair_beta", "sum_lhs")
