"""Exact rational closed forms over a fixed basis of named constants.

A closed form is a sparse Q-linear combination of

    1, gamma, pi, log 2, beta(2), beta(4), ..., zeta(3), zeta(5), ...

Coefficients are :class:`fractions.Fraction`, so everything here is exact.
Catalan's constant is ``beta(2)``; there is no separate symbol for it.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Rational = Fraction
RationalLike = Union[int, Fraction]


class ZeroCoefficient(ZeroDivisionError):
    """Raised when a linear solve is asked to divide by an exact zero."""


class Kind(enum.IntEnum):
    # value order is the canonical serialization order
    ONE = 0
    EULER_GAMMA = 1
    PI = 2
    LOG2 = 3
    BETA = 4
    ZETA_ODD = 5


_NAMES = {
    Kind.ONE: "one",
    Kind.EULER_GAMMA: "gamma",
    Kind.PI: "pi",
    Kind.LOG2: "log2",
}


@dataclass(frozen=True, order=True)
class BasisSymbol:
    kind: Kind
    index: int = 0

    def __post_init__(self):
        if self.kind is Kind.BETA:
            if self.index < 2 or self.index % 2:
                raise ValueError(f"beta index must be even and >= 2, got {self.index}")
        elif self.kind is Kind.ZETA_ODD:
            if self.index < 3 or self.index % 2 == 0:
                raise ValueError(f"zeta index must be odd and >= 3, got {self.index}")
        elif self.index != 0:
            raise ValueError(f"{self.kind.name} takes no index")

    @property
    def key(self) -> str:
        """Canonical short name, also the JSON key: ``one``, ``log2``, ``beta4``, ``zeta3``..."""
        if self.kind is Kind.BETA:
            return f"beta{self.index}"
        if self.kind is Kind.ZETA_ODD:
            return f"zeta{self.index}"
        return _NAMES[self.kind]

    @classmethod
    def from_key(cls, key: str) -> "BasisSymbol":
        for kind, name in _NAMES.items():
            if key == name:
                return cls(kind)
        m = re.fullmatch(r"(beta|zeta)(\d+)", key)
        if m is None:
            raise ValueError(f"unknown basis symbol {key!r}")
        kind = Kind.BETA if m.group(1) == "beta" else Kind.ZETA_ODD
        return cls(kind, int(m.group(2)))

    def __repr__(self):
        return self.key


ONE = BasisSymbol(Kind.ONE)
EULER_GAMMA = BasisSymbol(Kind.EULER_GAMMA)
PI = BasisSymbol(Kind.PI)
LOG2 = BasisSymbol(Kind.LOG2)


def beta(k: int) -> BasisSymbol:
    return BasisSymbol(Kind.BETA, k)


def zeta_odd(s: int) -> BasisSymbol:
    return BasisSymbol(Kind.ZETA_ODD, s)


CATALAN = beta(2)


class ClosedForm(Mapping[BasisSymbol, Fraction]):
    """Immutable sparse map ``BasisSymbol -> Fraction`` with no stored zeros.

    Missing symbols read as zero, so ``form[PI] == 0`` works for any form.
    Iteration follows the canonical symbol order.
    """

    __slots__ = ("_items",)

    def __init__(self, coeffs: Mapping[BasisSymbol, RationalLike] | Iterable = ()):
        acc: dict[BasisSymbol, Fraction] = {}
        pairs = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for sym, c in pairs:
            if not isinstance(sym, BasisSymbol):
                raise TypeError(f"expected BasisSymbol, got {sym!r}")
            acc[sym] = acc.get(sym, Fraction(0)) + Fraction(c)
        self._items = tuple(sorted((s, c) for s, c in acc.items() if c != 0))

    def __getitem__(self, sym):
        for s, c in self._items:
            if s == sym:
                return c
        if isinstance(sym, BasisSymbol):
            return Fraction(0)
        raise KeyError(sym)

    def __contains__(self, sym):
        return any(s == sym for s, _ in self._items)

    def __iter__(self) -> Iterator[BasisSymbol]:
        return (s for s, _ in self._items)

    def __len__(self):
        return len(self._items)

    def items(self):
        return self._items

    def __eq__(self, other):
        if isinstance(other, ClosedForm):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == ClosedForm(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._items)

    def __add__(self, other: "ClosedForm") -> "ClosedForm":
        return cf_combine([(1, self), (1, other)])

    def __sub__(self, other: "ClosedForm") -> "ClosedForm":
        return cf_combine([(1, self), (-1, other)])

    def __neg__(self) -> "ClosedForm":
        return cf_combine([(-1, self)])

    def __mul__(self, scale: RationalLike) -> "ClosedForm":
        if not isinstance(scale, (int, Fraction)):
            return NotImplemented
        return cf_combine([(scale, self)])

    __rmul__ = __mul__

    def __truediv__(self, scale: RationalLike) -> "ClosedForm":
        if not isinstance(scale, (int, Fraction)):
            return NotImplemented
        if scale == 0:
            raise ZeroCoefficient("division of a closed form by zero")
        return cf_combine([(Fraction(1) / Fraction(scale), self)])

    def __repr__(self):
        return f"ClosedForm({self.to_text()})"

    def symbols(self) -> tuple[BasisSymbol, ...]:
        return tuple(s for s, _ in self._items)

    @classmethod
    def constant(cls, value: RationalLike) -> "ClosedForm":
        return cls({ONE: value})

    @classmethod
    def symbol(cls, sym: BasisSymbol, coeff: RationalLike = 1) -> "ClosedForm":
        return cls({sym: coeff})

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        """Canonical text: ``num/den*key`` terms joined by `` + ``; ``0`` if empty."""
        if not self._items:
            return "0"
        return " + ".join(f"{c.numerator}/{c.denominator}*{s.key}" for s, c in self._items)

    @classmethod
    def from_text(cls, text: str) -> "ClosedForm":
        text = text.strip()
        if text == "0":
            return cls()
        pairs = []
        for part in text.split(" + "):
            coeff, _, key = part.partition("*")
            pairs.append((BasisSymbol.from_key(key), Fraction(coeff)))
        return cls(pairs)

    def to_json(self) -> dict[str, str]:
        """``{"one": "3/1", "log2": "-3/1", ...}`` with keys in canonical order."""
        return {s.key: f"{c.numerator}/{c.denominator}" for s, c in self._items}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "ClosedForm":
        return cls((BasisSymbol.from_key(k), Fraction(v)) for k, v in obj.items())


def cf_combine(terms: Iterable[tuple[RationalLike, ClosedForm]]) -> ClosedForm:
    """Exact linear combination ``sum(scale * form)``; zero entries are pruned."""
    acc: dict[BasisSymbol, Fraction] = {}
    for scale, form in terms:
        scale = Fraction(scale)
        if scale == 0:
            continue
        for sym, c in form.items():
            acc[sym] = acc.get(sym, Fraction(0)) + scale * c
    return ClosedForm(acc)


def cf_solve_linear(a: RationalLike, b: ClosedForm, c: ClosedForm) -> ClosedForm:
    """Return ``x`` with ``a*x + b == c``."""
    a = Fraction(a)
    if a == 0:
        raise ZeroCoefficient("pivot coefficient is zero")
    return cf_combine([(1 / a, c), (-1 / a, b)])
