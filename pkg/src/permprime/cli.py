"""``permprime`` command line.

Exit status: 0 when the command produced an answer (a Composite verdict is an
answer), 1 for invalid usage, 2 when a configured limit was hit and --strict
was given (or a factorization ran out of effort).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Any, Callable, Sequence

from . import __version__
from .certify import (
    AbsolutePrime,
    Composite,
    Unknown,
    limits_from_env,
    theorem2_bound,
    verdict,
)
from .digits import DigitMultiset, DigitString, repunit_digits, repunit_value
from .document import (
    OutputDocument,
    certificate_to_dict,
    factorization_to_dict,
    order_to_dict,
    primality_to_dict,
    report_to_dict,
    verdict_to_dict,
)
from .modular import FactorizationIncomplete, factorize, multiplicative_order_10
from .primality import is_prime
from .search import bound_primes, brute_force_absolute_primes, enumerate_absolute_primes, scan_near_repunits, useful_primes

EXIT_OK, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _digit_string(text: str) -> DigitString:
    try:
        return DigitString.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _prime_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--limits", help="limits preset: quick, default or thorough (overrides $PERMPRIME_LIMITS)")
    common.add_argument("--stable", action="store_true", help="omit timing so reruns are byte-identical")
    common.add_argument("--strict", action="store_true", help="exit 2 on Unknown verdicts")
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1)

    parser = _Parser(prog="permprime", description="Absolute (permutable) primes: verdicts, certificates, searches.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="verdict for the digits of N")
    p.add_argument("number", type=_digit_string)
    p = sub.add_parser("certify", parents=[common], help="first compositeness certificate for the digits of N")
    p.add_argument("number", type=_digit_string)
    p = sub.add_parser("search", parents=[common], help="all absolute primes with a given digit count")
    p.add_argument("--digits", type=_positive, required=True)
    p.add_argument("--brute-force", action="store_true", help="test every n-digit number, no filters")
    p = sub.add_parser("scan", parents=[common], help="certify near-repunits a..ab composite")
    p.add_argument("--from", dest="n_lo", type=_positive, required=True)
    p.add_argument("--to", dest="n_hi", type=_positive, required=True)
    p = sub.add_parser("order", parents=[common], help="multiplicative order of 10 modulo p")
    p.add_argument("p", type=_positive)
    p = sub.add_parser("repunit", parents=[common], help="primality (and factors) of the n-digit repunit")
    p.add_argument("n", type=_positive)
    p.add_argument("--factor", action="store_true")
    p = sub.add_parser("bound", parents=[common], help="modulus the digit count of a long absolute prime must divide")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--primes", type=_prime_list)
    src.add_argument("--up-to", type=_positive)
    p.add_argument("--start", type=_positive, default=17, help="proven lower bound on n (default 17)")
    p = sub.add_parser("useful-primes", parents=[common], help="primes with 10 as a primitive root")
    p.add_argument("--up-to", type=_positive, required=True)
    return parser


# -- commands: each returns (inputs, result, text lines, unknown?) -----------

Outcome = tuple[dict[str, Any], Any, list[str], bool]


def _verdict_lines(number: DigitString, v) -> list[str]:
    if isinstance(v, AbsolutePrime):
        lines = [f"{number}: absolute prime ({len(v.evidence)} arrangements)"]
        lines += [f"  {p}  {pv.status.value}" for p, pv in v.evidence]
        return lines
    if isinstance(v, Composite):
        c = v.certificate
        return [f"{number}: composite ({c.kind.value}, {c.lemma_tag})", f"  {c.equation()}"]
    r = v.reason
    return [f"{number}: unknown, {r.message} ({r.permutation_count} arrangements, {r.digit_count} digits)"]


def _cmd_check(args, limits) -> Outcome:
    v = verdict(DigitMultiset.of_number(str(args.number)), limits)
    return {"number": str(args.number)}, verdict_to_dict(v), _verdict_lines(args.number, v), isinstance(v, Unknown)


def _cmd_certify(args, limits) -> Outcome:
    v = verdict(DigitMultiset.of_number(str(args.number)), limits)
    inputs = {"number": str(args.number)}
    if isinstance(v, Composite):
        c = v.certificate
        return inputs, certificate_to_dict(c), [f"{c.kind.value} ({c.lemma_tag}): {c.equation()}"], False
    return inputs, None, _verdict_lines(args.number, v) + ["no certificate"], isinstance(v, Unknown)


def _cmd_search(args, limits) -> Outcome:
    inputs = {"digits": args.digits, "brute_force": args.brute_force}
    if args.brute_force:
        if args.digits > 6:
            raise UsageError("brute force is limited to 6 digits")
        values = brute_force_absolute_primes(args.digits)
        return inputs, {"found": [str(v) for v in values]}, [" ".join(map(str, values)) or "(none)"], False
    report = enumerate_absolute_primes(args.digits, limits, workers=args.threads)
    lines = [
        f"{args.digits}-digit absolute primes: " + (" ".join(map(str, report.values)) or "(none)"),
        f"candidates {report.candidate_count}, accepted {report.accepted_count}, unknown {len(report.unknown)}",
    ]
    lines += [f"  rejected by {kind}: {count}" for kind, count in report.rejected_count.items()]
    return inputs, report_to_dict(report), lines, bool(report.unknown)


def _cmd_scan(args, limits) -> Outcome:
    report = scan_near_repunits(args.n_lo, args.n_hi, limits)
    lines = []
    for row in report.rows:
        c = row.certificate
        detail = "no certificate" if c is None else f"{c.kind.value} ({c.lemma_tag}): {c.equation()}"
        lines.append(f"B({row.a},{row.b},{row.n})  {detail}")
    lines.append(f"{len(report.rows)} rows, absolute primes found: {len(report.found)}")
    return {"from": args.n_lo, "to": args.n_hi}, report_to_dict(report), lines, bool(report.unknown)


def _cmd_order(args, limits) -> Outcome:
    rec = multiplicative_order_10(args.p)
    flag = "is" if rec.primitive_root_10 else "is not"
    return {"p": args.p}, order_to_dict(rec), [f"h({rec.p}) = {rec.h}; 10 {flag} a primitive root mod {rec.p}"], False


def _cmd_repunit(args, limits) -> Outcome:
    value = repunit_value(args.n)
    tested = is_prime(value, limits.rounds)
    result: dict[str, Any] = {"n": args.n, "primality": primality_to_dict(tested), "factorization": None}
    lines = [f"A_{args.n}: {tested.status.value}"]
    if args.factor:
        f = factorize(value, limits.factor_effort)
        result["factorization"] = factorization_to_dict(f)
        lines.append(f"{repunit_digits(args.n)} = {f}")
    return {"n": args.n, "factor": args.factor}, result, lines, False


def _cmd_bound(args, limits) -> Outcome:
    if args.primes is not None:
        records = [multiplicative_order_10(p) for p in args.primes]
        inputs: dict[str, Any] = {"primes": args.primes, "start": args.start}
    else:
        records = bound_primes(args.up_to)
        inputs = {"up_to": args.up_to, "start": args.start}
    value = theorem2_bound(records, args.start)
    used = [r.p for r in sorted(records, key=lambda r: r.p)]
    return inputs, {"bound": str(value), "primes": used}, [str(value)], False


def _cmd_useful(args, limits) -> Outcome:
    if args.up_to < 7:
        raise UsageError("--up-to must be at least 7")
    recs = useful_primes(args.up_to)
    return {"up_to": args.up_to}, [order_to_dict(r) for r in recs], [" ".join(str(r.p) for r in recs)], False


COMMANDS: dict[str, Callable[..., Outcome]] = {
    "check": _cmd_check,
    "certify": _cmd_certify,
    "search": _cmd_search,
    "scan": _cmd_scan,
    "order": _cmd_order,
    "repunit": _cmd_repunit,
    "bound": _cmd_bound,
    "useful-primes": _cmd_useful,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        limits = limits_from_env(args.limits)
        inputs, result, lines, unknown = COMMANDS[args.command](args, limits)
    except FactorizationIncomplete as exc:
        print(f"permprime: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, ValueError) as exc:
        print(f"permprime {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - started

    if args.format == "structured":
        timing = None if args.stable else {"elapsed_seconds": round(elapsed, 6)}
        print(OutputDocument(args.command, inputs, result, timing=timing).serialize())
    else:
        print("\n".join(lines))
        if not args.stable:
            print(f"({elapsed:.3f} s)", file=sys.stderr)
    if unknown and args.strict:
        return EXIT_LIMIT
    return EXIT_OK


def main() -> None:
    sys.exit(run())
