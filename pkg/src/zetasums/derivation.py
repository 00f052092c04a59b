"""Symbolic derivation of closed forms for the sums

    S_r = sum_{n>=1} 1 / (n (16 n^2 - 1)^r)

and their relatives.  The seed is the reflection identity

    psi(1+x) + psi(1-x) + 2*gamma = -2 x^2 sum_n 1/(n (n^2 - x^2)).

Right-hand sides are :class:`SumExpression` objects in the variable ``x``;
each term ``(c, a, w, b)`` stands for ``c * x^a * sum_n n^w (n^2 - x^2)^(-b)``.
Differentiating ``m`` times and specializing ``x`` to 1/4 or 1/2 gives one
linear relation per order; the left side is reduced to exact constants with
the polygamma tables below, and the relations are solved triangularly.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable

from .exactcore import (
    EULER_GAMMA,
    LOG2,
    PI,
    ClosedForm,
    beta,
    cf_combine,
    cf_solve_linear,
    zeta_odd,
)


class InvalidReduction(ValueError):
    """A weight reduction would produce a divergent sum."""


class Anchor(enum.Enum):
    QUARTER = "quarter"
    HALF = "half"

    @property
    def x0(self) -> Fraction:
        return Fraction(1, 4) if self is Anchor.QUARTER else Fraction(1, 2)

    @property
    def scale(self) -> int:
        """``s`` with ``n^2 - x0^2 = (s n^2 - 1) / s``."""
        return 16 if self is Anchor.QUARTER else 4

    @classmethod
    def parse(cls, text: str) -> "Anchor":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"anchor must be 'quarter' or 'half', got {text!r}") from None


@dataclass(frozen=True, order=True)
class SumTerm:
    """``coeff * x^xpow * sum_{n>=1} n^weight (n^2 - x^2)^(-bpow)``."""

    bpow: int
    weight: int
    xpow: int
    coeff: Fraction

    def __init__(self, coeff, xpow: int, weight: int, bpow: int):
        object.__setattr__(self, "coeff", Fraction(coeff))
        object.__setattr__(self, "xpow", xpow)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "bpow", bpow)
        if bpow < 1:
            raise ValueError(f"bpow must be >= 1, got {bpow}")
        if xpow < 0:
            raise ValueError(f"xpow must be >= 0, got {xpow}")
        if not convergent(weight, bpow):
            raise ValueError(f"sum with weight {weight} and bpow {bpow} diverges")

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.xpow, self.weight, self.bpow)

    def as_tuple(self) -> tuple[Fraction, int, int, int]:
        return (self.coeff, self.xpow, self.weight, self.bpow)

    def __repr__(self):
        return f"({self.coeff}, {self.xpow}, {self.weight}, {self.bpow})"


def convergent(weight: int, bpow: int) -> bool:
    return weight - 2 * bpow <= -2


@dataclass(frozen=True)
class SumExpression:
    """Normalized list of :class:`SumTerm`: like shapes merged, zeros dropped, sorted."""

    terms: tuple[SumTerm, ...]

    def __init__(self, terms: Iterable = ()):
        acc: dict[tuple[int, int, int], Fraction] = defaultdict(Fraction)
        for t in terms:
            if not isinstance(t, SumTerm):
                t = SumTerm(*t)
            acc[t.shape] += t.coeff
        merged = sorted(SumTerm(c, *shape) for shape, c in acc.items() if c != 0)
        object.__setattr__(self, "terms", tuple(merged))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def as_tuples(self) -> list[tuple[Fraction, int, int, int]]:
        return [t.as_tuple() for t in self.terms]

    def __repr__(self):
        return "SumExpression[" + ", ".join(map(repr, self.terms)) + "]"


@dataclass(frozen=True)
class SumIndex:
    """The concrete sum ``sum_{n>=1} n^weight / D^bpow`` with ``D = s n^2 - 1``."""

    weight: int
    bpow: int
    anchor: Anchor

    def __lt__(self, other):
        return (self.anchor.value, self.weight, self.bpow) < (
            other.anchor.value,
            other.weight,
            other.bpow,
        )

    @property
    def convergent(self) -> bool:
        return convergent(self.weight, self.bpow)

    def label(self) -> str:
        d = "16n^2-1" if self.anchor is Anchor.QUARTER else "4n^2-1"
        num = {-1: "1/n", 1: "n"}.get(self.weight, f"n^{self.weight}")
        return f"sum {num}/({d})^{self.bpow}"


def base_expression() -> SumExpression:
    """Right side of ``psi(1+x) + psi(1-x) + 2 gamma = -2 x^2 sum 1/(n(n^2-x^2))``."""
    return SumExpression([(-2, 2, -1, 1)])


def differentiate(expr: SumExpression) -> SumExpression:
    # d/dx x^a (n^2-x^2)^-b = a x^(a-1) (n^2-x^2)^-b + 2b x^(a+1) (n^2-x^2)^-(b+1)
    out = []
    for t in expr:
        if t.xpow:
            out.append((t.coeff * t.xpow, t.xpow - 1, t.weight, t.bpow))
        out.append((t.coeff * 2 * t.bpow, t.xpow + 1, t.weight, t.bpow + 1))
    return SumExpression(out)


@lru_cache(maxsize=None)
def derivative(order: int) -> SumExpression:
    """``order``-th x-derivative of the base expression."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if order == 0:
        return base_expression()
    return differentiate(derivative(order - 1))


def reduce_weight(expr: SumExpression, strict: bool = False) -> SumExpression:
    """Trade powers of ``x`` for powers of ``n`` until every term has ``xpow <= 1``.

    Uses ``x^2 n^w (n^2-x^2)^-b = n^(w+2) (n^2-x^2)^-b - n^w (n^2-x^2)^-(b-1)``.
    A rewrite that would create a divergent piece (including ``bpow == 0``) is
    skipped and the term kept as is, unless ``strict`` is set, in which case
    :class:`InvalidReduction` is raised.
    """
    current = expr
    while True:
        out = []
        changed = False
        for t in current:
            if t.xpow < 2:
                out.append(t)
                continue
            c, a, w, b = t.as_tuple()
            if b - 1 < 1 or not (convergent(w + 2, b) and convergent(w, b - 1)):
                if strict:
                    raise InvalidReduction(f"cannot reduce {t!r} without a divergent piece")
                out.append(t)
                continue
            out.append((c, a - 2, w + 2, b))
            out.append((-c, a - 2, w, b - 1))
            changed = True
        current = SumExpression(out)
        if not changed:
            return current


def anchor_coefficients(expr: SumExpression, anchor: Anchor) -> dict[SumIndex, Fraction]:
    """Specialize ``x`` to the anchor; returns coefficients on the concrete sums.

    Uses ``(n^2 - x0^2)^-b = s^b (s n^2 - 1)^-b``.
    """
    x0, s = anchor.x0, anchor.scale
    acc: dict[SumIndex, Fraction] = defaultdict(Fraction)
    for t in expr:
        acc[SumIndex(t.weight, t.bpow, anchor)] += t.coeff * x0**t.xpow * s**t.bpow
    return {k: v for k, v in sorted(acc.items()) if v != 0}


def p_form(expr: SumExpression) -> list[tuple[Fraction, int, int, int]]:
    """Rewrite in ``p = 2x``: ``(c, a, w, b)`` becomes the coefficient of
    ``p^a sum n^w (4n^2 - p^2)^-b``."""
    return [(t.coeff * Fraction(4**t.bpow, 2**t.xpow), t.xpow, t.weight, t.bpow) for t in expr]


# -- left-hand sides -----------------------------------------------------------

def _digamma_value(x: Fraction) -> ClosedForm:
    # only the values the anchors need
    table = {
        Fraction(1, 4): {EULER_GAMMA: -1, PI: Fraction(-1, 2), LOG2: -3},
        Fraction(3, 4): {EULER_GAMMA: -1, PI: Fraction(1, 2), LOG2: -3},
        Fraction(1, 2): {EULER_GAMMA: -1, LOG2: -2},
    }
    return ClosedForm(table[x])


def polygamma_combination(order: int, anchor: Anchor) -> ClosedForm:
    """Exact value of ``psi^(m)(1+x0) + (-1)^m psi^(m)(1-x0)`` (``+ 2 gamma`` when m = 0).

    ``psi^(m)(1+x0)`` is first shifted down with
    ``psi^(m)(1+x) = psi^(m)(x) + (-1)^m m! / x^(m+1)``.
    """
    m = order
    if m < 0:
        raise ValueError("order must be >= 0")
    sign = (-1) ** m
    x0 = anchor.x0
    shift = ClosedForm.constant(sign * factorial(m) / x0 ** (m + 1))

    if m == 0:
        lo, hi = x0, 1 - x0
        return cf_combine([
            (1, _digamma_value(lo)),
            (1, _digamma_value(hi)),
            (1, shift),
            (1, ClosedForm.symbol(EULER_GAMMA, 2)),
        ])

    if anchor is Anchor.QUARTER:
        if m % 2:
            # psi^(2k-1)(1/4) - psi^(2k-1)(3/4) = (2k-1)! 2^(4k) beta(2k)
            k = (m + 1) // 2
            pair = ClosedForm.symbol(beta(2 * k), factorial(m) * 2 ** (4 * k))
        else:
            # psi^(2k)(1/4) + psi^(2k)(3/4) = -(2k)! 2^(2k+1) (2^(2k+1) - 1) zeta(2k+1)
            k = m // 2
            c = -factorial(m) * 2 ** (2 * k + 1) * (2 ** (2 * k + 1) - 1)
            pair = ClosedForm.symbol(zeta_odd(2 * k + 1), c)
        return pair + shift

    # Half: both polygammas sit at 1/2.  Odd m: they cancel.  Even m:
    # 2 psi^(m)(1/2) = -2 m! (2^(m+1) - 1) zeta(m+1).
    if m % 2:
        return shift
    pair = ClosedForm.symbol(zeta_odd(m + 1), -2 * factorial(m) * (2 ** (m + 1) - 1))
    return pair + shift


# -- triangular solving ------------------------------------------------------------

def order_identity(order: int, anchor: Anchor, weighted: bool = False):
    """``(lhs, rhs)`` of the order-``m`` identity at the anchor.

    ``rhs`` maps :class:`SumIndex` to its coefficient.  With ``weighted`` the
    derivative is weight-reduced before specializing.
    """
    expr = derivative(order)
    if weighted:
        expr = reduce_weight(expr)
    return polygamma_combination(order, anchor), anchor_coefficients(expr, anchor)


@lru_cache(maxsize=None)
def derive_closed_form(r: int, anchor: Anchor) -> ClosedForm:
    """Closed form of ``sum_{n>=1} 1/(n D^r)`` with ``D = 16n^2-1`` (quarter) or ``4n^2-1`` (half)."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    lhs, rhs = order_identity(r - 1, anchor)
    target = SumIndex(-1, r, anchor)
    pivot = rhs.pop(target, Fraction(0))
    assert pivot != 0, f"zero pivot at order {r - 1}"
    known = []
    for idx, c in rhs.items():
        assert idx.weight == -1 and idx.bpow < r, idx
        known.append((c, derive_closed_form(idx.bpow, anchor)))
    return cf_solve_linear(pivot, cf_combine(known), lhs)


def _weighted_basis(idx: SumIndex, coeff: Fraction) -> dict[SumIndex, Fraction]:
    """Rewrite ``coeff * idx`` over ``{(-1, 1)} U {(1, b) : b >= 2}``.

    At the anchor ``n^2 = (D + 1)/s``, so
    ``n^(w+2)/D^b = (n^w/D^(b-1) + n^w/D^b) / s``.
    """
    w, b, anchor = idx.weight, idx.bpow, idx.anchor
    s = anchor.scale
    if not idx.convergent or w < -1:
        raise InvalidReduction(f"no weighted normal form for {idx.label()}")
    if (w, b) == (-1, 1) or (w == 1 and b >= 2):
        return {idx: coeff}
    out: dict[SumIndex, Fraction] = defaultdict(Fraction)
    if w == -1:
        parts = [(SumIndex(1, b, anchor), coeff * s), (SumIndex(-1, b - 1, anchor), -coeff)]
    else:
        parts = [
            (SumIndex(w - 2, b - 1, anchor), coeff / s),
            (SumIndex(w - 2, b, anchor), coeff / s),
        ]
    for sub, c in parts:
        for k, v in _weighted_basis(sub, c).items():
            out[k] += v
    return out


@lru_cache(maxsize=None)
def derive_weighted_closed_form(b: int, anchor: Anchor) -> ClosedForm:
    """Closed form of ``sum_{n>=1} n / D^b`` (``b >= 2``)."""
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    lhs, rhs = order_identity(b - 1, anchor, weighted=True)
    coeffs: dict[SumIndex, Fraction] = defaultdict(Fraction)
    for idx, c in rhs.items():
        for k, v in _weighted_basis(idx, c).items():
            coeffs[k] += v
    target = SumIndex(1, b, anchor)
    pivot = coeffs.pop(target, Fraction(0))
    assert pivot != 0, f"zero pivot for weighted b={b}"
    known = []
    for idx, c in coeffs.items():
        if c == 0:
            continue
        if idx.weight == -1:
            known.append((c, derive_closed_form(1, anchor)))
        else:
            assert idx.bpow < b, idx
            known.append((c, derive_weighted_closed_form(idx.bpow, anchor)))
    return cf_solve_linear(pivot, cf_combine(known), lhs)


def derive(r: int, anchor: Anchor, weight: int = -1) -> ClosedForm:
    if weight == -1:
        return derive_closed_form(r, anchor)
    if weight == 1:
        return derive_weighted_closed_form(r, anchor)
    raise ValueError(f"weight must be -1 or +1, got {weight}")
