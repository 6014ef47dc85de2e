import asyncio
import logging
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

from qbailey.constants import DEFAULT_SLOW_VERIFICATION_THRESHOLD_MS, Status
from qbailey.qseries import Comparison, Order, QSeries, as_exponent, fmt_exponent
from qbailey.registry.spec import IdentitySpec, get_identity
from qbailey.registry.terms import eval_rhs, sum_lhs

logger = logging.getLogger(__name__)


@dataclass
class Report:
    id: str
    status: str
    order: Order
    millis: float = 0.0
    first_mismatch: Optional[Dict[str, str]] = None
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == Status.PASS

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "id": self.id,
            "status": self.status,
            "order": fmt_exponent(as_exponent(self.order)).strip("()"),
        }
        if self.first_mismatch is not None:
            data["first_mismatch"] = self.first_mismatch
        if self.error is not None:
            data["error"] = self.error
        if timing:
            data["millis"] = round(self.millis, 3)
        return data


@dataclass
class Summary:
    order: Order
    reports: List[Report] = field(default_factory=list)

    @property
    def totals(self) -> Dict[str, int]:
        totals = {Status.PASS: 0, Status.FAIL: 0, Status.ERROR: 0}
        for report in self.reports:
            totals[report.status] += 1
        return totals

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        return {
            "order": fmt_exponent(as_exponent(self.order)).strip("()"),
            "passed": self.passed,
            "totals": self.totals,
            "entries": [report.to_dict(timing) for report in self.reports],
        }


def mismatch_dict(comparison: Comparison) -> Dict[str, str]:
    return {
        "exponent": fmt_exponent(comparison.exponent).strip("()"),
        "lhs": str(comparison.left),
        "rhs": str(comparison.right),
    }


def compare_sides(lhs: QSeries, rhs: QSeries, order: Order) -> Comparison:
    return lhs.equal_to_order(rhs, order)


def verify_identity(
    identity: Union[IdentitySpec, str],
    order: Order,
    slow_threshold_ms: float = DEFAULT_SLOW_VERIFICATION_THRESHOLD_MS
) -> Report:
    """Expand both sides to the order and compare them exactly.

    Evaluation errors are logged and recorded as an error report, never raised.
    """
    if isinstance(identity, str):
        identity = get_identity(identity)
    order = as_exponent(order)
    start = time.perf_counter()
    report = Report(identity.id, Status.PASS, order)

    try:
        lhs = sum_lhs(identity.lhs, order)
        rhs = eval_rhs(identity, order)
        comparison = compare_sides(lhs, rhs, order)
        if not comparison.equal:
            report.status = Status.FAIL
            report.first_mismatch = mismatch_dict(comparison)
            logger.warning(
                f"Identity {identity.id} differs at q^{fmt_exponent(comparison.exponent)}: "
                f"{comparison.left} != {comparison.right}"
            )
        elif not (lhs.is_rational() and rhs.is_rational()):
            report.status = Status.FAIL
            report.error = "non-rational coefficients"
            logger.warning(f"Identity {identity.id} has non-rational coefficients")
    except Exception as e:
        report.status = Status.ERROR
        report.error = f"{e.__class__.__name__}: {e}"
        logger.error(
            f"Error verifying identity {identity.id}:\n" +
            "".join(traceback.format_exception(type(e), e, e.__traceback__))
        )

    report.millis = (time.perf_counter() - start) * 1000
    logger.info(f"Identity {identity.id} {report.status.upper()}, {report.millis / 1000:.3f}s")
    if report.millis > slow_threshold_ms:
        logger.warning(f"Identity {identity.id} took {report.millis:.0f}ms at order {order}")
    return report


async def verify_all(
    identities: Sequence[IdentitySpec],
    order: Order,
    threads: int = 1,
    slow_threshold_ms: float = DEFAULT_SLOW_VERIFICATION_THRESHOLD_MS
) -> Summary:
    """Verify every identity on a thread pool; reports keep the registry order."""
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        reports = await asyncio.gather(*[
            loop.run_in_executor(executor, verify_identity, identity, order, slow_threshold_ms)
            for identity in identities
        ])
    summary = Summary(as_exponent(order), list(reports))
    totals = summary.totals
    logger.info(
        f"Verified {len(summary.reports)} identities at order {fmt_exponent(summary.order)}: "
        f"{totals[Status.PASS]} pass, {totals[Status.FAIL]} fail, {totals[Status.ERROR]} error"
    )
    return summary


__all__ = ("Report", "Summary", "compare_sides", "mismatch_dict", "verify_all", "verify_identity")
