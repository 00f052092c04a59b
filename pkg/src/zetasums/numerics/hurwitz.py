"""Hurwitz zeta and polygamma at rational points via Euler-Maclaurin.

For f(t) = (a+t)^-s every derivative has constant sign on [N, inf), so the
remainder after the B_{2M} correction is at most the size of that correction:

    |R_M| <= |B_2M| / (2M)! * s(s+1)...(s+2M-2) * (a+N)^(1-s-2M).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .ball import Ball, Precision
from .constants import PrecisionExhausted, log_ball


@lru_cache(maxsize=None)
def _bernoulli_table(k: int) -> tuple[Fraction, ...]:
    if k == 0:
        return (Fraction(1),)
    prev = _bernoulli_table(k - 1)
    # sum_{j=0}^{k} C(k+1, j) B_j = 0
    s = sum(comb(k + 1, j) * prev[j] for j in range(k))
    return prev + (-s / (k + 1),)


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number, ``B_1 = -1/2``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    # build iteratively so deep recursion is never needed
    for j in range(0, k, 64):
        _bernoulli_table(j)
    return _bernoulli_table(k)[k]


def _rising(s: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= s + i
    return out


def _em_plan(s: int, a: Fraction, bits: int) -> tuple[int, int, Fraction]:
    """Pick (N, M) so the remainder bound drops below 2^-bits."""
    limit = Fraction(1, 1 << bits)
    n = max(4, bits // 6 + 4)
    for _ in range(12):
        z = a + n
        m = 1
        while True:
            bound = abs(bernoulli(2 * m)) / factorial(2 * m) * _rising(s, 2 * m - 1) / z ** (s + 2 * m - 1)
            if bound < limit:
                return n, m, bound
            nxt = abs(bernoulli(2 * m + 2)) / factorial(2 * m + 2) * _rising(s, 2 * m + 1) / z ** (s + 2 * m + 1)
            if nxt >= bound:
                break  # asymptotic series stopped shrinking; need a larger N
            m += 1
        n *= 2
    raise PrecisionExhausted(f"Euler-Maclaurin plan failed for s={s}, a={a}")


def hurwitz_zeta(s: int, a: Fraction, bits: int, start: int = 0) -> Ball:
    """Enclose ``sum_{k>=start} (a+k)^-s`` for integer ``s >= 2`` and rational ``a > 0``."""
    if s < 2:
        raise ValueError("s must be >= 2")
    a = Fraction(a) + start
    if a <= 0:
        raise ValueError("a must be positive")
    w = bits + 8
    n, m, bound = _em_plan(s, a, w)
    acc = Ball.zero(w)
    for k in range(n):
        acc += Ball.from_fraction(1 / (a + k) ** s, w)
    z = a + n
    tail = 1 / ((s - 1) * z ** (s - 1)) + 1 / (2 * z**s)
    for j in range(1, m + 1):
        tail += bernoulli(2 * j) / factorial(2 * j) * _rising(s, 2 * j - 1) / z ** (s + 2 * j - 1)
    acc += Ball.from_fraction(tail, w, rad=bound)
    return acc.rescale(bits)


def digamma(x: Fraction, bits: int) -> Ball:
    """psi(x) for rational ``x > 0``: shift up by N, then the enveloping
    asymptotic series (remainder bounded by the first omitted term)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("digamma needs x > 0")
    w = bits + 8
    limit = Fraction(1, 1 << w)
    n = max(4, w // 6 + 4)
    z = x + n
    terms = []
    j = 1
    while True:
        t = bernoulli(2 * j) / (2 * j * z ** (2 * j))
        if abs(t) < limit:
            bound = abs(t)
            break
        terms.append(t)
        j += 1
        if j > 4 * w:
            raise PrecisionExhausted("digamma asymptotic series did not converge")
    series = -1 / (2 * z) - sum(terms, Fraction(0))
    shift = sum((1 / (x + k) for k in range(n)), Fraction(0))
    out = log_ball(z, w) + Ball.from_fraction(series - shift, w, rad=bound)
    return out.rescale(bits)


def eval_polygamma(order: int, point: Fraction, prec: Precision) -> Ball:
    """Enclosure of ``psi^(order)(point)``.

    ``psi^(m)(x) = (-1)^(m+1) m! zeta(m+1, x)`` for ``m >= 1``.
    """
    point = Fraction(point)
    if order < 0:
        raise ValueError("order must be >= 0")
    if point <= 0:
        raise ValueError("point must be positive")
    bits = prec.bits
    if order == 0:
        return digamma(point, bits)
    # m! can be large; give the Hurwitz value headroom before scaling
    extra = factorial(order).bit_length()
    z = hurwitz_zeta(order + 1, point, bits + extra)
    sign = 1 if order % 2 else -1
    return z.mul_int(sign * factorial(order)).rescale(bits)
