"""Command-line front end.

    zetasums derive --r 2 --anchor quarter [--weight -1] [--format text|json|latex]
    zetasums eval TARGET [--digits 20] [--anchor quarter]
    zetasums verify --r-max 5 [--anchor quarter|half|both] [--weight -1|1] [--digits 20]
    zetasums bench --r 2 [--digits 10,20]
    zetasums table --r-max 5 [--format text|json|latex] [--digits 15]
    zetasums approx [--digits 20]

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 effort ceiling hit.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, TextIO

from .derivation import Anchor, SumIndex, derive, derive_closed_form
from .exactcore import BasisSymbol, ClosedForm, Kind
from .formatting import latex, pretty
from .numerics.ball import Ball, Precision
from .numerics.constants import UnsupportedConstant, accelerated_alternating, eval_constant
from .numerics.hurwitz import eval_polygamma
from .numerics.series import (
    DEFAULT_MAX_TERMS,
    EffortExceeded,
    partial_sum,
    series_enclosure,
    tail_bound,
    terms_for_tail,
)
from .numerics.verify import approximation_report, eval_closed_form, verify_identity

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EFFORT = 0, 1, 2, 3
MAX_TERMS_ENV = "ZETASUMS_MAX_TERMS"
FORMATS = ("text", "json", "latex")


class UsageError(Exception):
    pass


def max_terms_from_env() -> int:
    raw = os.environ.get(MAX_TERMS_ENV)
    if not raw:
        return DEFAULT_MAX_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{MAX_TERMS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{MAX_TERMS_ENV} must be positive")
    return value


def _series_name(weight: int, b: int, anchor: Anchor) -> str:
    d = "16n^2-1" if anchor is Anchor.QUARTER else "4n^2-1"
    num = "1/n" if weight == -1 else "n"
    return f"sum {num}/({d})^{b}"


def _series_latex(weight: int, b: int, anchor: Anchor) -> str:
    d = "16n^2-1" if anchor is Anchor.QUARTER else "4n^2-1"
    num = r"\frac{1}{n}" if weight == -1 else "n"
    return rf"\sum_{{n\ge1}} {num} \frac{{1}}{{({d})^{{{b}}}}}"


def _record(weight: int, b: int, anchor: Anchor, form: ClosedForm) -> dict:
    return {"anchor": anchor.value, "weight": weight, "b": b, "closed_form": form.to_json()}


# -- derive ----------------------------------------------------------------------------

def cmd_derive(args, out: TextIO) -> int:
    try:
        form = derive(args.r, args.anchor, args.weight)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        out.write(json.dumps(_record(args.weight, args.r, args.anchor, form)) + "\n")
    elif args.format == "latex":
        out.write(f"{_series_latex(args.weight, args.r, args.anchor)} = {latex(form)}\n")
    else:
        out.write(f"{_series_name(args.weight, args.r, args.anchor)} = {pretty(form)}\n")
        out.write(f"canonical: {form.to_text()}\n")
    return EXIT_OK


# -- eval ------------------------------------------------------------------------------

_TARGET_HELP = ("one, pi, log2, catalan (or G), beta<2k>, zeta<2k+1>, S<r> (sum 1/n/D^r), "
                "T<b> (sum n/D^b), psi<m>:<p/q>")


def _parse_target(text: str):
    t = text.strip()
    low = t.lower()
    if low in ("g", "catalan"):
        return ("constant", BasisSymbol(Kind.BETA, 2))
    if low in ("one", "pi", "log2", "gamma") or re.fullmatch(r"(beta|zeta)\d+", low):
        return ("constant", BasisSymbol.from_key(low))
    m = re.fullmatch(r"([st])(\d+)", low)
    if m:
        return ("series", -1 if m.group(1) == "s" else 1, int(m.group(2)))
    m = re.fullmatch(r"psi(\d+):(\d+)(?:/(\d+))?", low)
    if m:
        return ("psi", int(m.group(1)), Fraction(int(m.group(2)), int(m.group(3) or 1)))
    raise UsageError(f"unknown eval target {text!r}; expected one of: {_TARGET_HELP}")


def cmd_eval(args, out: TextIO) -> int:
    try:
        target = _parse_target(args.target)
        prec = Precision(args.digits)
        kind = target[0]
        extra = {}
        if kind == "constant":
            ball = eval_constant(target[1], prec)
        elif kind == "series":
            _, weight, b = target
            index = SumIndex(weight, b, args.anchor)
            if not index.convergent or b < 1:
                raise UsageError(f"target {args.target!r} is not a convergent sum")
            ev = series_enclosure(index, prec, max_terms=args.max_terms)
            ball = ev.ball
            extra = {"terms": ev.terms, "method": ev.method}
        else:
            _, order, point = target
            if point <= 0:
                raise UsageError("polygamma point must be positive")
            ball = eval_polygamma(order, point, prec)
    except (UnsupportedConstant, ValueError) as exc:
        raise UsageError(str(exc)) from None
    value = ball.to_decimal(args.digits)
    if args.format == "json":
        rec = {"target": args.target, "digits": args.digits, "value": value,
               "radius": f"{float(ball.radius):.3e}", **extra}
        out.write(json.dumps(rec) + "\n")
    else:
        out.write(f"{args.target} = {value} +/- {float(ball.radius):.1e}\n")
    return EXIT_OK


# -- verify ----------------------------------------------------------------------------

def cmd_verify(args, out: TextIO) -> int:
    anchors = list(Anchor) if args.anchor == "both" else [Anchor.parse(args.anchor)]
    failed = False
    for anchor in anchors:
        first = 1 if args.weight == -1 else 2
        for r in range(first, args.r_max + 1):
            rep = verify_identity(r, anchor, args.weight, Precision(args.digits),
                                  max_terms=args.max_terms)
            failed |= not rep.passed
            if args.format == "json":
                out.write(json.dumps({"r": r, "anchor": anchor.value, "weight": args.weight,
                                      **rep.to_json()}) + "\n")
            else:
                out.write(f"r={r:<3d} {anchor.value:<8s} {rep.line()}\n")
    return EXIT_FAIL if failed else EXIT_OK


# -- bench -----------------------------------------------------------------------------

@dataclass(frozen=True)
class BenchRow:
    method: str
    constant: str
    digits: int
    terms: int
    radius: Optional[Fraction]
    seconds: float
    exceeded: bool = False

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "constant": self.constant,
            "digits": self.digits,
            "terms": self.terms,
            "radius": None if self.radius is None else f"{float(self.radius):.3e}",
            "seconds": round(self.seconds, 4),
            "exceeded": self.exceeded,
        }


def _leading_symbol(r: int) -> BasisSymbol:
    return BasisSymbol(Kind.BETA, r) if r % 2 == 0 else BasisSymbol(Kind.ZETA_ODD, r)


def _series_route(r: int, digits: int, max_terms: int) -> BenchRow:
    """Isolate the newest constant of the r-th identity and certify it from the series."""
    sym = _leading_symbol(r)
    form = derive_closed_form(r, Anchor.QUARTER)
    coeff = form[sym]
    rest = form - ClosedForm.symbol(sym, coeff)
    index = SumIndex(-1, r, Anchor.QUARTER)
    target = Fraction(1, 10**digits)
    start = time.perf_counter()
    n = terms_for_tail(index, target * abs(coeff) / 4)
    if n > max_terms:
        return BenchRow("series", sym.key, digits, n, None, time.perf_counter() - start, True)
    bits = Precision(digits + 6, 0).bits + n.bit_length()
    s = partial_sum(index, n, bits).widen(tail_bound(index, n))
    value = (s - eval_closed_form(rest, Precision(digits + 6, 0))) / coeff
    return BenchRow("series", sym.key, digits, n, value.radius, time.perf_counter() - start)


def _direct_route(r: int, digits: int, max_terms: int) -> BenchRow:
    """Plain partial sums of the alternating defining series; error <= first omitted term."""
    sym = _leading_symbol(r)
    target = Fraction(1, 10**digits)
    if sym.kind is Kind.BETA:
        denom = lambda k: (2 * k + 1) ** r  # noqa: E731
        factor = Fraction(1)
    else:
        denom = lambda k: (k + 1) ** r  # noqa: E731
        factor = Fraction(2 ** (r - 1), 2 ** (r - 1) - 1)  # zeta = factor * eta
    # smallest K with factor / denom(K) <= target / 2
    need = factor * 2 / target
    root = math.ceil(float(need) ** (1 / r)) if need < 1e300 else 10**400
    k = (root - 1) // 2 if sym.kind is Kind.BETA else root - 1
    k = max(k, 0)
    start = time.perf_counter()
    if k > max_terms:
        return BenchRow("direct", sym.key, digits, k, None, time.perf_counter() - start, True)
    while Fraction(factor, denom(k)) > target / 2:
        k += 1
    bits = Precision(digits + 4, 0).bits + k.bit_length()
    one = 1 << bits
    acc = 0
    for j in range(k):
        t = one // denom(j)
        acc += t if j % 2 == 0 else -t
    ball = Ball(acc, k, bits).widen(Fraction(1, denom(k))) * factor
    return BenchRow("direct", sym.key, digits, k, ball.radius, time.perf_counter() - start)


def _accelerated_route(r: int, digits: int) -> BenchRow:
    sym = _leading_symbol(r)
    start = time.perf_counter()
    bits = Precision(digits, 0).bits
    if sym.kind is Kind.BETA:
        ball, n = accelerated_alternating(lambda k: Fraction(1, (2 * k + 1) ** r), Fraction(1), bits)
    else:
        ball, n = accelerated_alternating(lambda k: Fraction(1, (k + 1) ** r), Fraction(1), bits)
        ball = ball * Fraction(2 ** (r - 1), 2 ** (r - 1) - 1)
    return BenchRow("accelerated", sym.key, digits, n, ball.radius, time.perf_counter() - start)


def bench_convergence(r: int, digits_list, max_terms: int = DEFAULT_MAX_TERMS) -> list[BenchRow]:
    """Terms needed to certify the r-th identity's newest constant three ways."""
    if r < 2:
        raise ValueError("bench needs r >= 2")
    rows = []
    for digits in digits_list:
        rows.append(_series_route(r, digits, max_terms))
        rows.append(_direct_route(r, digits, max_terms))
        rows.append(_accelerated_route(r, digits))
    return rows


def cmd_bench(args, out: TextIO) -> int:
    rows = bench_convergence(args.r, args.digits, args.max_terms)
    for row in rows:
        if args.format == "json":
            out.write(json.dumps(row.to_json()) + "\n")
        else:
            rad = "-" if row.radius is None else f"{float(row.radius):.2e}"
            note = "  ceiling exceeded" if row.exceeded else ""
            out.write(f"{row.constant:<7s} {row.method:<12s} digits={row.digits:<4d} "
                      f"terms={row.terms:<14d} radius={rad:<9s} {row.seconds:.3f}s{note}\n")
    return EXIT_OK


# -- table -----------------------------------------------------------------------------

def table_rows(r_max: int, digits: int = 15) -> list[dict]:
    """Every defined (anchor, weight, b) up to ``r_max`` in a fixed order."""
    rows = []
    for anchor in (Anchor.QUARTER, Anchor.HALF):
        for weight in (-1, 1):
            for b in range(1 if weight == -1 else 2, r_max + 1):
                form = derive(b, anchor, weight)
                ball = eval_closed_form(form, Precision(digits + 4 * b + 10))
                rows.append({**_record(weight, b, anchor, form), "form": form,
                             "value": ball.to_sig(digits)})
    return rows


def emit_table(r_max: int, fmt: str = "text", digits: int = 15) -> str:
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    rows = table_rows(r_max, digits)
    lines = []
    if fmt == "json":
        for row in rows:
            rec = {k: v for k, v in row.items() if k != "form"}
            lines.append(json.dumps(rec))
    elif fmt == "latex":
        lines.append(r"\begin{align*}")
        for row in rows:
            lhs = _series_latex(row["weight"], row["b"], Anchor(row["anchor"]))
            lines.append(rf"{lhs} &= {latex(row['form'])} \approx {row['value']} \\")
        lines.append(r"\end{align*}")
    else:
        for row in rows:
            name = _series_name(row["weight"], row["b"], Anchor(row["anchor"]))
            lines.append(f"{name:<22s} = {pretty(row['form'])}   ~ {row['value']}")
    return "\n".join(lines) + "\n"


def cmd_table(args, out: TextIO) -> int:
    out.write(emit_table(args.r_max, args.format, args.digits))
    return EXIT_OK


# -- approx ----------------------------------------------------------------------------

def cmd_approx(args, out: TextIO) -> int:
    rep = approximation_report(Precision(args.digits))
    if args.format == "json":
        out.write(json.dumps({**dict(rep.rows(args.digits)), "improves": rep.improves}) + "\n")
    else:
        for label, value in rep.rows(args.digits):
            out.write(f"{label:<46s} {value}\n")
        out.write(f"second approximation better: {rep.improves}\n")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(message)


def _positive(name):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {text!r}")
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be >= 1, got {v}")
        return v
    return conv


def _anchor(text):
    try:
        return Anchor.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _weight(text):
    if text not in ("-1", "1", "+1"):
        raise argparse.ArgumentTypeError(f"weight must be -1 or 1, got {text!r}")
    return int(text)


def _digits_list(text):
    try:
        vals = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"digits list must be comma-separated integers: {text!r}")
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("digits must be >= 1")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zetasums", description="Exact closed forms and certified values for "
                "sum 1/(n (16n^2-1)^r) and related series.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("derive", help="exact closed form of one sum")
    d.add_argument("--r", type=_positive("--r"), required=True)
    d.add_argument("--anchor", type=_anchor, default=Anchor.QUARTER)
    d.add_argument("--weight", type=_weight, default=-1)
    d.add_argument("--format", choices=FORMATS, default="text")
    d.set_defaults(func=cmd_derive)

    e = sub.add_parser("eval", help="certified value of a constant, sum or polygamma")
    e.add_argument("target", help=_TARGET_HELP)
    e.add_argument("--digits", type=_positive("--digits"), default=20)
    e.add_argument("--anchor", type=_anchor, default=Anchor.QUARTER)
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="check derived identities numerically")
    v.add_argument("--r-max", type=_positive("--r-max"), required=True)
    v.add_argument("--anchor", choices=("quarter", "half", "both"), default="quarter")
    v.add_argument("--weight", type=_weight, default=-1)
    v.add_argument("--digits", type=_positive("--digits"), default=20)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="terms needed per certified digit, three routes")
    b.add_argument("--r", type=_positive("--r"), required=True)
    b.add_argument("--digits", type=_digits_list, default=[10, 20])
    b.add_argument("--format", choices=("text", "json"), default="text")
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("table", help="table of derived identities")
    t.add_argument("--r-max", type=_positive("--r-max"), required=True)
    t.add_argument("--format", choices=FORMATS, default="text")
    t.add_argument("--digits", type=_positive("--digits"), default=15)
    t.set_defaults(func=cmd_table)

    a = sub.add_parser("approx", help="zeta(5) approximations of Catalan's constant")
    a.add_argument("--digits", type=_positive("--digits"), default=20)
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.set_defaults(func=cmd_approx)
    return p


def run(argv, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "bench" and args.r < 2:
            raise UsageError("bench: --r must be >= 2")
        args.max_terms = max_terms_from_env()
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"zetasums: error: {exc}\n")
        return EXIT_USAGE
    except EffortExceeded as exc:
        err.write(f"zetasums: effort exceeded: {exc}\n")
        return EXIT_EFFORT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
