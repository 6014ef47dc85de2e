"""Command-line driver: python -m qbailey <subcommand> [options].

Exit codes: 0 when every check passes, 1 when at least one check fails, 2 on usage or IO errors.
"""

import argparse
import asyncio
import logging
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import ujson as json

from qbailey.bailey import (
    LemmaSpec, bailey_lemma_sides, classical_table, lemma_cross_check,
    pentagonal_check, printed_variant, verify_bailey_pair, verify_classical
)
from qbailey.config import load_config
from qbailey.constants import (
    CLASSICAL_TABLE, PAIR_IDS, STATUS_TRANS, TRANSFORM_IDS, TRANSFORM_NAMES, TRANSFORM_TYPOS,
    Status
)
from qbailey.cyclo import parse_unit
from qbailey.hypergeom import (
    EXAMPLE_ASSIGNMENTS, AssignmentError, HypergeometricError, parse_assignment,
    verify_transformation
)
from qbailey.monomial import INFINITY, MonomialSyntaxError, parse_monomial
from qbailey.qseries import Order, QSeries, as_exponent, fmt_exponent
from qbailey.recognizer import recognize, recognize_identity
from qbailey.registry import (
    IdentitySpec, PairSpec, RegistryError, Summary, expand, load_registry, pairs, registry,
    verify_all, verify_identity
)
from qbailey.registry.verify import mismatch_dict

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    """Raised when command-line arguments cannot be interpreted."""


class Context:
    """Options shared by every subcommand, with config.json defaults filled in."""

    def __init__(self, args: argparse.Namespace) -> None:
        config = load_config()
        self.args = args
        self.order: Order = as_exponent(
            Fraction(args.order) if args.order is not None else config["DEFAULT_ORDER"]
        )
        self.format: str = args.format
        self.timing: bool = not args.no_timing
        self.threads: int = args.threads if args.threads is not None else config["THREADS"]
        self.registry_path: str = args.registry or config["REGISTRY_PATH"]
        self.pairs_path: str = args.pairs or config["PAIRS_PATH"]
        self.max_terms: int = config["MAX_TERMS"]
        self.slow_threshold_ms: float = config["SLOW_VERIFICATION_THRESHOLD_MS"]
        self.output: Optional[str] = args.output
        if self.order <= 0:
            raise UsageError(f"--order must be positive, got {args.order}")

    def identity(self, i_id: str) -> IdentitySpec:
        for identity in registry(self.registry_path):
            if identity.id == i_id:
                return identity
        raise RegistryError("unknown identity", i_id)

    def pairs(self) -> Tuple[PairSpec, ...]:
        return pairs(self.pairs_path)

    def pair(self, p_id: str) -> PairSpec:
        for pair in self.pairs():
            if pair.id == p_id:
                return pair
        raise RegistryError("unknown Bailey pair", p_id)

    def emit(self, data: Any, lines: Sequence[str]) -> None:
        """Write the JSON document or the text lines to --output or stdout."""
        if self.format == "json":
            text = json.dumps(data, indent=2, escape_forward_slashes=False) + "\n"
        else:
            text = "\n".join(lines) + "\n"
        if self.output:
            with open(self.output, "w") as f:
                f.write(text)
        else:
            sys.stdout.write(text)


def _order_text(order: Order) -> str:
    return fmt_exponent(as_exponent(order)).strip("()")


def _mismatch_text(mismatch: Optional[Dict[str, str]]) -> str:
    if not mismatch:
        return ""
    return f"  first mismatch at q^{mismatch['exponent']}: {mismatch['lhs']} != {mismatch['rhs']}"


def _status_line(id_: str, status: str, millis: Optional[float], detail: str = "") -> str:
    timing = f"  {millis:>10.1f}ms" if millis is not None else ""
    return f"{id_:<12}{STATUS_TRANS[status]:<6}{timing}{detail}"


def _totals_line(totals: Dict[str, int]) -> str:
    return ", ".join(f"{totals[s]} {STATUS_TRANS[s].lower()}" for s in (
        Status.PASS, Status.FAIL, Status.ERROR
    ))


def _exit_code(statuses: Sequence[str]) -> int:
    return EXIT_PASS if all(s == Status.PASS for s in statuses) else EXIT_MISMATCH


def _parse_monomial(text: str, name: str, allow_infinity: bool = False):
    try:
        value = parse_monomial(text)
    except MonomialSyntaxError as e:
        raise UsageError(f"{name}: {e}") from None
    if value is INFINITY and not allow_infinity:
        raise UsageError(f"{name} cannot be inf")
    return value


# Subcommands


async def _verify_registry(ctx: Context) -> Summary:
    identities = await load_registry(ctx.registry_path)
    return await verify_all(identities, ctx.order, ctx.threads, ctx.slow_threshold_ms)


def cmd_verify_all(ctx: Context) -> int:
    summary = asyncio.run(_verify_registry(ctx))
    lines = [
        _status_line(
            r.id, r.status, r.millis if ctx.timing else None,
            _mismatch_text(r.first_mismatch) or (f"  {r.error}" if r.error else "")
        ) for r in summary.reports
    ]
    lines.append(f"Order {_order_text(summary.order)}: {_totals_line(summary.totals)}")
    ctx.emit(summary.to_dict(ctx.timing), lines)
    return _exit_code([r.status for r in summary.reports])


def cmd_verify_identity(ctx: Context) -> int:
    identity = ctx.identity(ctx.args.id)
    report = verify_identity(identity, ctx.order, ctx.slow_threshold_ms)
    data = report.to_dict(ctx.timing)
    lines = [
        _status_line(
            report.id, report.status, report.millis if ctx.timing else None,
            _mismatch_text(report.first_mismatch) or (f"  {report.error}" if report.error else "")
        )
    ]
    statuses = [report.status]

    if ctx.args.cross_check:
        if identity.lemma is None:
            raise UsageError(f"{identity.id} records no lemma specialization")
        check = lemma_cross_check(identity, ctx.order, ctx.pairs(), ctx.max_terms)
        status = Status.PASS if check.passed else Status.FAIL
        data["cross_check"] = {
            name: (None if getattr(check, name).equal else mismatch_dict(getattr(check, name)))
            for name in ("lhs", "rhs", "balance")
        }
        data["cross_check"]["status"] = status
        lines.append(_status_line(f"{identity.id} (lemma)", status, None))
        statuses.append(status)

    ctx.emit(data, lines)
    return _exit_code(statuses)


def cmd_verify_pair(ctx: Context) -> int:
    registered = ctx.pairs()
    if ctx.args.id == "all":
        selected = list(registered)
    else:
        selected = [ctx.pair(ctx.args.id)]
    if ctx.args.printed:
        selected = [p for p in (printed_variant(p) for p in selected) if p is not None]
        if not selected:
            raise UsageError("no selected pair records a printed variant")
    a_specs = None
    if ctx.args.a:
        a_specs = [_parse_monomial(text, "--a") for text in ctx.args.a]

    reports = [
        verify_bailey_pair(p, a_specs, ctx.args.n_max, ctx.order, registered) for p in selected
    ]
    lines = []
    for report in reports:
        failure = report.first_failure
        detail = ""
        if failure is not None:
            detail = f"  a = {failure.a_spec}, n = {failure.n}"
            detail += _mismatch_text(failure.first_mismatch) or f"  {failure.error}"
        lines.append(_status_line(report.id, report.status, report.millis if ctx.timing else None,
                                  detail))
    data = [r.to_dict(ctx.timing) for r in reports]
    ctx.emit(data if ctx.args.id == "all" else data[0], lines)
    return _exit_code([r.status for r in reports])


def _parse_assign(items: Sequence[str]) -> Dict[str, str]:
    values = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--assign expects k=v, got {item!r}")
        values[key.strip()] = value.strip()
    return values


def cmd_verify_transform(ctx: Context) -> int:
    t_ids = TRANSFORM_IDS if ctx.args.id == "all" else (ctx.args.id,)
    if ctx.args.assign:
        if len(t_ids) > 1:
            raise UsageError("--assign needs a single transformation")
        runs = [(t_ids[0], _parse_assign(ctx.args.assign), ctx.args.n)]
    else:
        runs = []
        for t_id in t_ids:
            if t_id not in EXAMPLE_ASSIGNMENTS:
                raise UsageError(f"unknown transformation {t_id!r}")
            for values, n in EXAMPLE_ASSIGNMENTS[t_id]:
                runs.append((t_id, values, n if ctx.args.n is None else ctx.args.n))

    entries, lines = [], []
    for t_id, values, n in runs:
        start = time.perf_counter()
        entry: Dict[str, Any] = {"id": t_id, "assignment": values, "n": n}
        try:
            result = verify_transformation(t_id, parse_assignment(values), n, ctx.order,
                                           max_terms=ctx.max_terms)
            status = Status.PASS if result.equal else Status.FAIL
            entry["rational"] = result.rational
            if not result.equal:
                entry["first_mismatch"] = mismatch_dict(result.comparison)
        except (AssignmentError, HypergeometricError, MonomialSyntaxError, ZeroDivisionError) as e:
            status = Status.ERROR
            entry["error"] = f"{e.__class__.__name__}: {e}"
            logger.error(f"Error evaluating {t_id} at {values}: {e}")
        millis = (time.perf_counter() - start) * 1000
        entry["status"] = status
        entry["order"] = _order_text(ctx.order)
        if ctx.timing:
            entry["millis"] = round(millis, 3)
        entries.append(entry)
        assignment = " ".join(f"{k}={v}" for k, v in values.items())
        lines.append(_status_line(
            t_id, status, millis if ctx.timing else None,
            f"  n={n if n is not None else '-'} {assignment}"
            + (_mismatch_text(entry.get("first_mismatch")) or
               (f"  {entry['error']}" if "error" in entry else ""))
        ))
    ctx.emit(entries, lines)
    return _exit_code([e["status"] for e in entries])


def _parse_pair_selector(text: str):
    if text in PAIR_IDS or text.upper().startswith("BP"):
        return text
    try:
        dek = tuple(int(x) for x in text.strip("()").split(","))
    except ValueError:
        raise UsageError(f"expected d,e,k or a pair id, got {text!r}") from None
    if len(dek) != 3:
        raise UsageError(f"expected three integers d,e,k, got {text!r}")
    return dek


def cmd_lemma(ctx: Context) -> int:
    args = ctx.args
    selector = _parse_pair_selector(args.pair)
    n_value = INFINITY
    if args.N.lower() not in ("inf", "infinity"):
        try:
            n_value = int(args.N)
        except ValueError:
            raise UsageError(f"--N expects an integer or inf, got {args.N!r}") from None
    L = LemmaSpec(
        _parse_monomial(args.rho1, "--rho1", True), _parse_monomial(args.rho2, "--rho2", True),
        n_value, ctx.order
    )
    a_spec = _parse_monomial(args.a, "--a")
    registered = ctx.pairs()
    if isinstance(selector, str):
        selector = ctx.pair(selector).id

    start = time.perf_counter()
    sides = bailey_lemma_sides(selector, a_spec, L, registered, args.normalized, ctx.max_terms)
    comparison = sides.compare(ctx.order)
    millis = (time.perf_counter() - start) * 1000
    status = Status.PASS if comparison.equal else Status.FAIL

    data: Dict[str, Any] = {
        "pair": args.pair, "a": str(a_spec), "lemma": str(L), "normalized": args.normalized,
        "status": status, "order": _order_text(ctx.order),
        "lhs": sides.lhs.to_dump(), "rhs": sides.rhs.to_dump()
    }
    if not comparison.equal:
        data["first_mismatch"] = mismatch_dict(comparison)
    if ctx.timing:
        data["millis"] = round(millis, 3)
    lines = [
        f"LHS = {sides.lhs}",
        f"RHS = {sides.rhs}",
        _status_line(args.pair, status, millis if ctx.timing else None,
                     f"  a={a_spec} {L}" + _mismatch_text(data.get("first_mismatch"))),
    ]
    ctx.emit(data, lines)
    return _exit_code([status])


def _split_entry(text: str, side: str) -> Tuple[str, str]:
    # "PNS123:lhs" selects a side inline
    entry, sep, inline = text.partition(":")
    return entry, (inline if sep else side)


def cmd_expand(ctx: Context) -> int:
    entry, side = _split_entry(ctx.args.entry, ctx.args.side)
    if side not in ("lhs", "rhs", "both"):
        raise UsageError(f"side must be lhs, rhs or both, got {side!r}")
    series = expand(ctx.identity(entry), side, ctx.order)
    data = {"id": entry, "order": _order_text(ctx.order)}
    data.update({name: s.to_dump() for name, s in series.items()})
    ctx.emit(data, [f"{name.upper()} = {s}" for name, s in series.items()])
    return EXIT_PASS


def _read_series(path: str, order: Order) -> QSeries:
    """A dense coefficient list, a list of [exponent, coefficient] pairs or an expand dump."""
    with open(path) as f:
        data = json.load(f)
    if isinstance(data, dict):
        key = next((k for k in ("series", "lhs", "rhs") if k in data), None)
        if key is None:
            raise UsageError(f"{path} holds no series, lhs or rhs entry")
        data = data[key]
    if not isinstance(data, list):
        raise UsageError(f"{path} must hold a list of coefficients")
    try:
        if data and all(isinstance(x, list) and len(x) == 2 for x in data):
            terms = {as_exponent(e): parse_unit(c) for e, c in data}
            return QSeries(terms, order)
        return QSeries.from_list([parse_unit(c) for c in data], order)
    except (ValueError, TypeError) as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_recognize(ctx: Context) -> int:
    args = ctx.args
    if args.id:
        result = recognize_identity(ctx.identity(args.id), ctx.order, args.max_period)
        lines = []
        for name, r in (("LHS", result.lhs), ("RHS", result.rhs)):
            product = str(r.product) if r.product else "no period found"
            lines.append(f"{name}: scale q -> q^{r.scale}, {product}")
        lines.append(f"{result.id}: Euler exponents {'match' if result.matches else 'differ'}")
        ctx.emit(result.to_dict(), lines)
        return EXIT_PASS if result.matches else EXIT_MISMATCH
    if not args.input:
        raise UsageError("recognize needs an identity id or --input")

    r = recognize(_read_series(args.input, ctx.order), max_period=args.max_period)
    lines = [f"Scale: q -> q^{r.scale}", f"Exponents: {r.exponents}"]
    lines.append(f"Product: {r.product}" if r.product else "No period found")
    ctx.emit(r.to_dict(), lines)
    return EXIT_PASS


def cmd_list(ctx: Context) -> int:
    what = ctx.args.what
    data: Dict[str, List[Dict[str, Any]]] = {}
    lines = []
    if what in ("identities", "all"):
        data["identities"] = []
        for i in registry(ctx.registry_path):
            dek = i.meta.get("dek")
            data["identities"].append({"id": i.id, "dek": dek, "rhs": str(i.rhs)})
            bracket = f"({','.join(str(x) for x in dek)})" if dek else ""
            lines.append(f"{i.id:<12}{bracket:<10}{i.rhs}")
    if what in ("pairs", "all"):
        data["pairs"] = [{"id": p.id, "dek": list(p.dek)} for p in ctx.pairs()]
        lines.extend(f"{p.id:<12}({','.join(str(x) for x in p.dek)})" for p in ctx.pairs())
    if what in ("transforms", "all"):
        data["transforms"] = [{
            "id": t, "name": TRANSFORM_NAMES[t], "source_typo": TRANSFORM_TYPOS.get(t)
        } for t in TRANSFORM_IDS]
        for t in TRANSFORM_IDS:
            lines.append(f"{t:<12}{TRANSFORM_NAMES[t]}")
            if t in TRANSFORM_TYPOS:
                lines.append(f"{'':<12}corrected: {TRANSFORM_TYPOS[t]}")
    ctx.emit(data, lines)
    return EXIT_PASS


def cmd_classical(ctx: Context) -> int:
    table = classical_table()
    deks = list(table)
    if ctx.args.dek:
        dek = _parse_pair_selector(ctx.args.dek)
        if isinstance(dek, str) or dek not in CLASSICAL_TABLE:
            raise UsageError(f"{ctx.args.dek} is not in the classical table")
        deks = [dek]

    entries, lines, statuses = [], [], []
    pentagonal = pentagonal_check(ctx.order)
    status = Status.PASS if pentagonal.equal else Status.FAIL
    statuses.append(status)
    entries.append({"id": "pentagonal", "status": status})
    lines.append(_status_line("pentagonal", status, None, "  (q;q)_inf = theta sum"))
    for dek in deks:
        check = verify_classical(dek, ctx.order)
        status = Status.PASS if check.passed else Status.FAIL
        statuses.append(status)
        entry = check.to_dict()
        entry["status"] = status
        entries.append(entry)
        period = f"period {check.fit[0]}" if check.fit else "no period"
        lines.append(_status_line(
            f"({','.join(str(x) for x in dek)})", status, None, f"  {period}  {check.families}"
        ))
    ctx.emit({"order": _order_text(ctx.order), "entries": entries}, lines)
    return _exit_code(statuses)


COMMANDS: Dict[str, Callable[[Context], int]] = {
    "verify-all": cmd_verify_all,
    "verify-identity": cmd_verify_identity,
    "verify-pair": cmd_verify_pair,
    "verify-transform": cmd_verify_transform,
    "lemma": cmd_lemma,
    "expand": cmd_expand,
    "recognize": cmd_recognize,
    "list": cmd_list,
    "classical": cmd_classical,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", help="truncation order T, a positive rational (default 60)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    common.add_argument("--threads", type=int, help="worker threads for verify-all")
    common.add_argument("--registry", help="identity registry file (default: bundled)")
    common.add_argument("--pairs", help="Bailey pair file (default: bundled)")
    common.add_argument("--no-timing", action="store_true",
                        help="omit timings so repeated JSON reports are byte-identical")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")

    parser = argparse.ArgumentParser(
        prog="qbailey",
        description="Exact verification of Bailey pairs and Rogers-Ramanujan type identities."
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    sub.add_parser("verify-all", parents=[common], help="verify every registry identity")

    p = sub.add_parser("verify-identity", parents=[common], help="verify one identity")
    p.add_argument("id")
    p.add_argument("--cross-check", action="store_true",
                   help="also rebuild the identity from its Bailey lemma specialization")

    p = sub.add_parser("verify-pair", parents=[common], help="check a closed-form beta")
    p.add_argument("id", help="pair id such as BP123, or all")
    p.add_argument("--a", action="append", help="specialization of a (repeatable)")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--printed", action="store_true",
                   help="check the formula as printed in its source instead of the corrected one")

    p = sub.add_parser("verify-transform", parents=[common], help="check a transformation formula")
    p.add_argument("id", help=f"one of {', '.join(TRANSFORM_IDS)}, or all")
    p.add_argument("--assign", nargs="+", metavar="k=v")
    p.add_argument("--n", type=int)

    p = sub.add_parser("lemma", parents=[common], help="evaluate both sides of the Bailey lemma")
    p.add_argument("pair", help="d,e,k or a pair id")
    p.add_argument("--a", default="1")
    p.add_argument("--rho1", default="inf")
    p.add_argument("--rho2", default="inf")
    p.add_argument("--N", default="inf")
    p.add_argument("--normalized", action="store_true",
                   help="multiply both sides into the shape of a sum = product identity")

    p = sub.add_parser("expand", parents=[common], help="expand a registry entry")
    p.add_argument("entry", help="identity id, optionally with :lhs, :rhs or :both")
    p.add_argument("--side", default="both", choices=("lhs", "rhs", "both"))

    p = sub.add_parser("recognize", parents=[common], help="fit an Euler product to a series")
    p.add_argument("id", nargs="?", help="identity id whose sides are sieved")
    p.add_argument("--input", help="JSON file with the series coefficients")
    p.add_argument("--max-period", type=int)

    p = sub.add_parser("list", parents=[common], help="list identities, pairs or transforms")
    p.add_argument("what", nargs="?", default="all",
                   choices=("identities", "pairs", "transforms", "all"))

    p = sub.add_parser("classical", parents=[common], help="classical Bailey pair spot checks")
    p.add_argument("--dek", help="restrict to one d,e,k of the classical table")
    return parser


def _set_verbosity(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    root = logging.getLogger()
    root.setLevel(level)
    for handler in root.handlers:
        handler.setLevel(level)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 after printing the synopsis
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    _set_verbosity(args)

    try:
        ctx = Context(args)
        return COMMANDS[args.command](ctx)
    except (ValueError, AssignmentError, ZeroDivisionError) as e:
        # Package errors derive from ValueError, KeyError or ZeroDivisionError
        logger.error(f"{e.__class__.__name__}: {e}")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"{e.__class__.__name__}: {e}")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


__all__ = ("COMMANDS", "build_parser", "main", "run")
