"""Numeric certification of derived identities."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from ..derivation import Anchor, SumIndex, derive
from ..exactcore import CATALAN, EULER_GAMMA, LOG2, ClosedForm, zeta_odd
from ..formatting import pretty
from .ball import Ball, Precision
from .constants import UnsupportedConstant, eval_constant
from .series import DEFAULT_MAX_TERMS, series_enclosure


def eval_closed_form(form: ClosedForm, prec: Precision) -> Ball:
    """Ball around ``sum coeff * constant``.  A nonzero gamma coefficient is a
    derivation bug and raises :class:`UnsupportedConstant`."""
    if form[EULER_GAMMA] != 0:
        raise UnsupportedConstant("closed form has a nonzero Euler gamma coefficient")
    # cancellation between large coefficients eats digits; pay for them up front
    weight = sum(abs(c) for c in form.values()) + 1
    extra = math.ceil(math.log10(weight)) + 1
    inner = Precision(prec.digits + extra, prec.guard)
    acc = Ball.zero(inner.bits)
    for sym, c in form.items():
        acc += eval_constant(sym, inner) * c
    return acc.rescale(prec.bits)


@dataclass(frozen=True)
class VerificationReport:
    description: str
    left: Ball
    right: Ball
    difference: Ball
    passed: bool
    terms: int
    effort: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.description}  |diff| <= {float(self.difference.abs_upper()):.3e}"
                f"  terms={self.terms}")

    def to_json(self) -> dict:
        return {
            "identity": self.description,
            "pass": self.passed,
            "left": self.left.to_sig(25),
            "right": self.right.to_sig(25),
            "diff_mid": self.difference.to_sig(5),
            "diff_rad": f"{float(self.difference.radius):.3e}",
            "terms": self.terms,
            **self.effort,
        }


def _series_symbol(index: SumIndex) -> str:
    d = "16n^2-1" if index.anchor is Anchor.QUARTER else "4n^2-1"
    num = "1/n" if index.weight == -1 else "n"
    return f"sum {num}/({d})^{index.bpow}"


def verify_identity(r: int, anchor: Anchor, weight: int, prec: Precision, *,
                    method: str = "auto", max_terms: int = DEFAULT_MAX_TERMS,
                    workers: int = 1) -> VerificationReport:
    """Compare the series (left) with the derived closed form (right).

    Passes iff the difference ball contains zero and has radius at most
    ``10^-digits``.  One retry with doubled guard digits when the radius is
    too wide.
    """
    form = derive(r, anchor, weight)
    index = SumIndex(weight, r, anchor)
    start = time.perf_counter()
    attempt = prec
    retries = 0
    while True:
        ev = series_enclosure(index, attempt, method=method, max_terms=max_terms, workers=workers)
        right = eval_closed_form(form, attempt)
        diff = ev.ball - right
        ok_radius = diff.radius <= prec.target()
        if ok_radius or retries:
            break
        retries += 1
        attempt = attempt.with_guard(2 * max(attempt.guard, 1))
    passed = diff.contains_zero() and ok_radius
    effort = {
        "seconds": round(time.perf_counter() - start, 4),
        "method": ev.method,
        "hurwitz_calls": ev.hurwitz_calls,
        "guard": attempt.guard,
        "retries": retries,
    }
    desc = f"{_series_symbol(index)} = {pretty(form)}"
    return VerificationReport(desc, ev.ball, right, diff, passed, ev.terms, effort)


@dataclass(frozen=True)
class ApproximationReport:
    catalan: Ball
    base: Ball          # 3 (1 - log 2)
    gap: Ball           # base - G
    zeta5: Ball
    first: Ball         # base - zeta(5)/256
    second: Ball        # base - 1/225 - (zeta(5) - 1)/256
    first_error: Ball
    second_error: Ball

    @property
    def improves(self) -> bool:
        """Second approximation certainly closer than the first and than ``base``."""
        return (self.second_error.upper < self.first_error.lower
                and self.first_error.upper < self.gap.lower)

    def rows(self, digits: int = 12) -> list[tuple[str, str]]:
        return [
            ("G", self.catalan.to_decimal(digits)),
            ("3(1 - log 2)", self.base.to_decimal(digits)),
            ("3(1 - log 2) - G", self.gap.to_decimal(digits)),
            ("zeta(5)", self.zeta5.to_decimal(digits)),
            ("A1 = 3(1 - log 2) - zeta(5)/256", self.first.to_decimal(digits)),
            ("|G - A1|", self.first_error.to_sig(6)),
            ("A2 = 3(1 - log 2) - 1/225 - (zeta(5) - 1)/256", self.second.to_decimal(digits)),
            ("|G - A2|", self.second_error.to_sig(6)),
        ]


def approximation_report(prec: Precision) -> ApproximationReport:
    """The two zeta(5) approximations of Catalan's constant and their errors."""
    g = eval_constant(CATALAN, prec)
    log2 = eval_constant(LOG2, prec)
    z5 = eval_constant(zeta_odd(5), prec)
    base = (1 - log2).mul_int(3)
    first = base - z5.div_int(256)
    second = base - Fraction(1, 225) - (z5 - 1).div_int(256)
    return ApproximationReport(
        catalan=g,
        base=base,
        gap=base - g,
        zeta5=z5,
        first=first,
        second=second,
        first_error=abs(g - first),
        second_error=abs(g - second),
    )
