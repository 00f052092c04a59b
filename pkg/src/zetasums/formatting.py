"""Human-readable and LaTeX renderings of closed forms."""

from __future__ import annotations

import re
from fractions import Fraction

from .exactcore import BasisSymbol, ClosedForm, Kind

_PLAIN = {Kind.EULER_GAMMA: "gamma", Kind.PI: "pi", Kind.LOG2: "log(2)"}
_LATEX = {Kind.EULER_GAMMA: r"\gamma", Kind.PI: r"\pi", Kind.LOG2: r"\log 2"}


def _plain_name(sym: BasisSymbol) -> str:
    if sym.kind is Kind.BETA:
        return "G" if sym.index == 2 else f"beta({sym.index})"
    if sym.kind is Kind.ZETA_ODD:
        return f"zeta({sym.index})"
    return _PLAIN[sym.kind]


def _latex_name(sym: BasisSymbol) -> str:
    if sym.kind is Kind.BETA:
        return "G" if sym.index == 2 else rf"\beta({sym.index})"
    if sym.kind is Kind.ZETA_ODD:
        return rf"\zeta({sym.index})"
    return _LATEX[sym.kind]


def pretty(form: ClosedForm) -> str:
    """``3 - 3*log(2) - G`` style text."""
    parts = []
    for sym, c in form.items():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if sym.kind is Kind.ONE:
            body = str(a)
        elif a == 1:
            body = _plain_name(sym)
        else:
            body = f"{a}*{_plain_name(sym)}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def latex(form: ClosedForm) -> str:
    r"""``3 - 3\log 2 - G``; coefficients as integers or ``\frac{p}{q}``."""
    if not form:
        return "0"
    out = []
    for i, (sym, c) in enumerate(form.items()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        num = str(a.numerator) if a.denominator == 1 else rf"\frac{{{a.numerator}}}{{{a.denominator}}}"
        if sym.kind is Kind.ONE:
            body = num
        elif a == 1:
            body = _latex_name(sym)
        else:
            body = f"{num} {_latex_name(sym)}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


_LATEX_TERM = re.compile(
    r"(?P<sign>[+-])?\s*"
    r"(?:(?P<int>\d+)|\\frac\{(?P<num>\d+)\}\{(?P<den>\d+)\})?\s*"
    r"(?P<sym>G|\\beta\((?P<b>\d+)\)|\\zeta\((?P<z>\d+)\)|\\log 2|\\gamma|\\pi)?"
)


def parse_latex(text: str) -> ClosedForm:
    """Inverse of :func:`latex` (only for strings it produced)."""
    text = text.strip()
    if text == "0":
        return ClosedForm()
    pairs = []
    pos = 0
    while pos < len(text):
        while pos < len(text) and text[pos] == " ":
            pos += 1
        if pos >= len(text):
            break
        m = _LATEX_TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse LaTeX near {text[pos:]!r}")
        pos = m.end()
        if m["int"]:
            c = Fraction(int(m["int"]))
        elif m["num"]:
            c = Fraction(int(m["num"]), int(m["den"]))
        else:
            c = Fraction(1)
        if m["sign"] == "-":
            c = -c
        sym_text = m["sym"]
        if sym_text is None:
            sym = BasisSymbol(Kind.ONE)
        elif sym_text == "G":
            sym = BasisSymbol(Kind.BETA, 2)
        elif m["b"]:
            sym = BasisSymbol(Kind.BETA, int(m["b"]))
        elif m["z"]:
            sym = BasisSymbol(Kind.ZETA_ODD, int(m["z"]))
        else:
            sym = BasisSymbol({r"\log 2": Kind.LOG2, r"\gamma": Kind.EULER_GAMMA, r"\pi": Kind.PI}[sym_text])
        pairs.append((sym, c))
    return ClosedForm(pairs)
