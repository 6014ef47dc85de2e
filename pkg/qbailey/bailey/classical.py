"""Spot checks of the classical Bailey pairs recovered as special (d,e,k)."""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from qbailey.bailey.lemma import LemmaSpec, bailey_lemma_sides
from qbailey.constants import CLASSICAL_TABLE
from qbailey.cyclo import ONE
from qbailey.monomial import Monomial
from qbailey.qproducts import PochFactor, jtp_theta_oracle, poch_inf
from qbailey.qseries import Comparison, Order, as_exponent, fmt_exponent, series_equal_to_order
from qbailey.recognizer import Pattern, RecognitionError, pattern_to_product, recognize

logger = logging.getLogger(__name__)

Dek = Tuple[int, int, int]


def classical_table() -> Dict[Dek, Tuple[str, str]]:
    """(d,e,k) -> (classical pair labels, identity families)."""
    return dict(CLASSICAL_TABLE)


@dataclass(frozen=True)
class ClassicalCheck:
    dek: Dek
    labels: str
    families: str
    balance: Comparison
    fit: Optional[Pattern]

    @property
    def passed(self) -> bool:
        return self.balance.equal

    def to_dict(self) -> Dict:
        data = {
            "dek": list(self.dek),
            "labels": self.labels,
            "families": self.families,
            "balanced": self.balance.equal,
            "period": self.fit[0] if self.fit else None,
        }
        if self.fit:
            data["product"] = str(pattern_to_product(*self.fit))
        return data


def verify_classical(dek: Dek, order: Order = 40) -> ClassicalCheck:
    """Balance the all-infinite lemma at a = 1 and fit a period to its normalized sum side."""
    labels, families = CLASSICAL_TABLE.get(tuple(dek), ("", ""))
    order = as_exponent(order)
    sides = bailey_lemma_sides(tuple(dek), Monomial(ONE, 0), LemmaSpec(order=order),
                               normalized=True)
    balance = sides.compare(order)
    try:
        fit = recognize(sides.lhs).fit
    except RecognitionError as e:
        logger.warning(f"Classical {tuple(dek)} sum side is not a unit Euler product: {e}")
        fit = None
    if balance.equal:
        logger.info(
            f"Classical {tuple(dek)} ({families}) balances to order {fmt_exponent(order)}, "
            f"period {fit[0] if fit else '-'}"
        )
    else:
        logger.warning(
            f"Classical {tuple(dek)} differs at q^{fmt_exponent(balance.exponent)}: "
            f"{balance.left} != {balance.right}"
        )
    return ClassicalCheck(tuple(dek), labels, families, balance, fit)


def pentagonal_check(order: Order = 40) -> Comparison:
    """(q;q)_inf against the triple product (q, q^2, q^3; q^3)_inf summed as a theta series."""
    order = as_exponent(order)
    q = Monomial(ONE, 1)
    euler = poch_inf(PochFactor.of(q, q), order)
    return series_equal_to_order(euler, jtp_theta_oracle(1, 3, order), order)


__all__ = ("ClassicalCheck", "classical_table", "pentagonal_check", "verify_classical")
