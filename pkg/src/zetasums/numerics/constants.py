"""Certified values of the basis constants.

None of these touch the sums the derivation engine works with: log 2 comes
from the atanh series, pi from Machin's formula, and beta(2k), zeta(2k+1)
from their alternating defining series under Chebyshev acceleration.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from ..exactcore import BasisSymbol, Kind
from .ball import Ball, Precision


class UnsupportedConstant(ValueError):
    """No oracle exists for the requested constant (Euler's gamma)."""


class PrecisionExhausted(ArithmeticError):
    """An evaluation could not reach the requested radius."""


def _atanh_inv(p: int, q: int, bits: int) -> Ball:
    """atanh(p/q) for 0 <= p/q <= 1/2."""
    if p == 0:
        return Ball.zero(bits)
    u2 = Fraction(p * p, q * q)
    acc = 0
    k = 0
    num, den = p, q
    while True:
        acc += (num << bits) // (den * (2 * k + 1))
        k += 1
        num *= p * p
        den *= q * q
        tail = Fraction(num, den * (2 * k + 1)) / (1 - u2)
        if tail * (1 << bits) < 1:
            break
    # one ulp per floored term plus the tail
    return Ball(acc, k + 1, bits)


@lru_cache(maxsize=64)
def log2_ball(bits: int) -> Ball:
    """log 2 = 2 atanh(1/3)."""
    return _atanh_inv(1, 3, bits + 4).mul_int(2).rescale(bits)


def log_ball(q: Fraction, bits: int) -> Ball:
    """Natural log of a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of a non-positive number")
    e = round(math.log2(q.numerator) - math.log2(q.denominator))
    y = q / Fraction(2) ** e
    u = (y - 1) / (y + 1)
    t = _atanh_inv(abs(u.numerator), u.denominator, bits + 4).mul_int(2)
    if u < 0:
        t = -t
    return (t + log2_ball(bits + 4).mul_int(e)).rescale(bits)


def _atan_inv(q: int, bits: int) -> Ball:
    """atan(1/q) for an integer q >= 2; alternating, tail <= first omitted term."""
    acc = 0
    k = 0
    power = q
    while True:
        term = (1 << bits) // (power * (2 * k + 1))
        acc += term if k % 2 == 0 else -term
        k += 1
        power *= q * q
        if (1 << bits) < power * (2 * k + 1):
            break
    return Ball(acc, k + 1, bits)


@lru_cache(maxsize=64)
def pi_ball(bits: int) -> Ball:
    """pi = 16 atan(1/5) - 4 atan(1/239)."""
    w = bits + 8
    return (_atan_inv(5, w).mul_int(16) - _atan_inv(239, w).mul_int(4)).rescale(bits)


@lru_cache(maxsize=None)
def _chebyshev_weights(n: int) -> tuple[int, tuple[int, ...]]:
    """Denominator ``d = T_n(3)`` and integer weights ``c_k`` of the accelerated sum.

    ``sum (-1)^k a_k  ~  (1/d) sum_{k<n} c_k a_k``, error at most
    ``2 a_0 / (3 + sqrt 8)^n`` for moment sequences of positive measures.
    """
    t_prev, t = 1, 3
    for _ in range(n - 1):
        t_prev, t = t, 6 * t - t_prev
    d = t if n >= 1 else 1
    b = Fraction(-1)
    c = Fraction(-d)
    weights = []
    for k in range(n):
        c = b - c
        weights.append(c)
        b = b * (k + n) * (k - n) / (Fraction(2 * k + 1, 2) * (k + 1))
    assert all(w.denominator == 1 for w in weights)
    return d, tuple(int(w) for w in weights)


def accelerated_alternating(a: Callable[[int], Fraction], a0_bound: Fraction, bits: int,
                            safety: int = 10) -> tuple[Ball, int]:
    """Enclose ``sum_{k>=0} (-1)^k a(k)`` where ``a`` is a moment sequence.

    Returns the ball and the number of terms used.  The published error
    ``2 a_0 / (3+sqrt 8)^n`` is inflated by ``safety`` and evaluated with
    ``3 + sqrt 8 > 29/5``.
    """
    # smallest n with safety * 2 * a0 * (5/29)^n < 2^-bits
    n = 1
    bound = Fraction(safety * 2) * a0_bound
    limit = Fraction(1, 1 << bits)
    ratio = Fraction(5, 29)
    err = bound * ratio
    while err >= limit:
        n += 1
        err *= ratio
    d, weights = _chebyshev_weights(n)
    acc = 0
    for k, c in enumerate(weights):
        q = a(k)
        acc += (c * q.numerator << bits) // q.denominator
    mid = acc // d
    rad = n // d + 2 + math.ceil(err * (1 << bits))
    return Ball(mid, rad, bits), n


def dirichlet_beta(s: int, bits: int) -> tuple[Ball, int]:
    """beta(s) = sum (-1)^k / (2k+1)^s."""
    return accelerated_alternating(lambda k: Fraction(1, (2 * k + 1) ** s), Fraction(1), bits)


def dirichlet_eta(s: int, bits: int) -> tuple[Ball, int]:
    """eta(s) = sum (-1)^k / (k+1)^s."""
    return accelerated_alternating(lambda k: Fraction(1, (k + 1) ** s), Fraction(1), bits)


def zeta_ball(s: int, bits: int) -> Ball:
    """zeta(s) = eta(s) / (1 - 2^(1-s)), s >= 2."""
    eta, _ = dirichlet_eta(s, bits + 4)
    return (eta * Fraction(2 ** (s - 1), 2 ** (s - 1) - 1)).rescale(bits)


@lru_cache(maxsize=256)
def _constant_at_bits(symbol: BasisSymbol, bits: int) -> Ball:
    kind = symbol.kind
    if kind is Kind.ONE:
        return Ball.exact(1, bits)
    if kind is Kind.LOG2:
        return log2_ball(bits)
    if kind is Kind.PI:
        return pi_ball(bits)
    if kind is Kind.BETA:
        return dirichlet_beta(symbol.index, bits + 4)[0].rescale(bits)
    if kind is Kind.ZETA_ODD:
        return zeta_ball(symbol.index, bits)
    raise UnsupportedConstant(f"no certified oracle for {symbol.key}")


def eval_constant(symbol: BasisSymbol, prec: Precision) -> Ball:
    """Ball around a basis constant with radius at most ``10^-(digits + guard/2)``."""
    ball = _constant_at_bits(symbol, prec.bits)
    limit = Fraction(1, 10 ** (prec.digits + prec.guard // 2))
    if ball.radius > limit:
        raise PrecisionExhausted(f"{symbol.key}: radius {float(ball.radius):.3g} > {float(limit):.3g}")
    return ball
