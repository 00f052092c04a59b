"""Certified evaluation of ``sum_{n>=1} n^w / (s n^2 - 1)^b``.

Two routes:

* ``plain``: partial sum to N terms, with N chosen from :func:`tail_bound`.
* ``tail``: a short partial sum plus an enclosure of the remainder through

      sum_{n>N} n^w (s n^2 - 1)^-b
          = sum_{j>=0} C(b+j-1, j) s^(-b-j) zeta(2b - w + 2j, N+1),

  all coefficients positive, Hurwitz values by Euler-Maclaurin.

``auto`` uses ``plain`` when that needs few terms and ``tail`` otherwise.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..derivation import SumIndex
from .ball import Ball, Precision
from .hurwitz import hurwitz_zeta

DEFAULT_MAX_TERMS = 10**7
PLAIN_LIMIT = 50_000


class DivergentIndex(ValueError):
    pass


class EffortExceeded(RuntimeError):
    def __init__(self, needed: int, ceiling: int, what: str = "series"):
        super().__init__(f"{what} needs {needed} terms, ceiling is {ceiling}")
        self.needed = needed
        self.ceiling = ceiling


def _check(index: SumIndex):
    if not index.convergent:
        raise DivergentIndex(f"{index.label()} diverges")


def tail_bound(index: SumIndex, n: int) -> Fraction:
    """Exact upper bound on ``sum_{k>n} k^w / D^b``.

    ``D = s k^2 - 1 >= (s-1) k^2`` for ``k >= 1``, so the summand is at most
    ``k^-e / (s-1)^b`` with ``e = 2b - w``; compare with the integral from n.
    For ``w = -1`` at the quarter anchor this is ``1 / (15^b 2b n^(2b))``.
    """
    _check(index)
    if n < 1:
        raise ValueError("n must be >= 1")
    s = index.anchor.scale
    e = 2 * index.bpow - index.weight
    return Fraction(1, (s - 1) ** index.bpow * (e - 1) * n ** (e - 1))


def terms_for_tail(index: SumIndex, limit: Fraction) -> int:
    """Smallest n with ``tail_bound(index, n) <= limit``."""
    _check(index)
    s = index.anchor.scale
    e = 2 * index.bpow - index.weight
    # n^(e-1) >= 1 / ((s-1)^b (e-1) limit)
    need = 1 / ((s - 1) ** index.bpow * (e - 1) * Fraction(limit))
    n = max(1, int(math.floor(float(need) ** (1 / (e - 1)))) - 1) if need < 1e300 else None
    if n is None:
        # too large for float; integer root by bisection on bit length
        lo, hi = 1, 1 << (need.numerator.bit_length() // (e - 1) + 2)
        while lo < hi:
            mid = (lo + hi) // 2
            if tail_bound(index, mid) <= limit:
                hi = mid
            else:
                lo = mid + 1
        return lo
    while tail_bound(index, n) > limit:
        n += 1
    while n > 1 and tail_bound(index, n - 1) <= limit:
        n -= 1
    return n


def _block_sum(args) -> int:
    """Sum of ``floor(2^bits n^w / D^b)`` over ``lo <= n < hi``."""
    lo, hi, w, b, s, bits = args
    one = 1 << bits
    acc = 0
    if w >= 0:
        for n in range(lo, hi):
            acc += (one * n**w) // (s * n * n - 1) ** b
    else:
        for n in range(lo, hi):
            acc += one // (n ** (-w) * (s * n * n - 1) ** b)
    return acc


def partial_sum(index: SumIndex, n_terms: int, bits: int, workers: int = 1) -> Ball:
    """Ball around ``sum_{n=1}^{n_terms}``.  Blocks are contiguous and combined
    in order; integer addition makes the result independent of ``workers``."""
    w, b, s = index.weight, index.bpow, index.anchor.scale
    if n_terms <= 0:
        return Ball.zero(bits)
    workers = max(1, min(workers, n_terms))
    edges = [1 + (n_terms * i) // workers for i in range(workers + 1)]
    jobs = [(edges[i], edges[i + 1], w, b, s, bits) for i in range(workers)]
    if workers == 1:
        total = _block_sum(jobs[0])
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_block_sum, jobs))
    # every floor loses less than one unit: true value in [total, total + n_terms)
    return Ball(total, n_terms, bits)


def tail_enclosure(index: SumIndex, n: int, bits: int) -> tuple[Ball, int]:
    """Ball around ``sum_{k>n} k^w / D^b`` and the number of Hurwitz values used."""
    _check(index)
    w, b, s = index.weight, index.bpow, index.anchor.scale
    e = 2 * b - w
    limit = Fraction(1, 1 << (bits + 2))
    sn2 = Fraction(s * n * n)
    base = Fraction(1, s**b) * Fraction(1, (e - 1) * n ** (e - 1))

    # majorant of the j-th expansion term: C(b+j-1, j) s^-b (s n^2)^-j n^(1-e) / (e-1)
    j = 0
    while True:
        maj = comb(b + j - 1, j) * base / sn2**j
        q = Fraction(b + j, j + 1) / sn2
        if q < 1 and maj / (1 - q) <= limit:
            break
        j += 1
    acc = Ball.zero(bits + 8)
    for i in range(j):
        z = hurwitz_zeta(e + 2 * i, Fraction(n + 1), bits + 8)
        acc += z * Fraction(comb(b + i - 1, i), s ** (b + i))
    acc = acc.widen(maj / (1 - q))
    return acc.rescale(bits), j


@dataclass(frozen=True)
class SeriesEvaluation:
    ball: Ball
    terms: int
    method: str
    hurwitz_calls: int = 0


def series_enclosure(index: SumIndex, prec: Precision, *, method: str = "auto",
                     max_terms: int = DEFAULT_MAX_TERMS, workers: int = 1) -> SeriesEvaluation:
    _check(index)
    target = Fraction(1, 10**prec.working_digits)
    n_plain = terms_for_tail(index, target / 2)
    if method == "auto":
        method = "plain" if n_plain <= PLAIN_LIMIT else "tail"
    bits = prec.bits + max(n_plain, 64).bit_length() if method == "plain" else prec.bits + 8
    if method == "plain":
        if n_plain > max_terms:
            raise EffortExceeded(n_plain, max_terms)
        ball = partial_sum(index, n_plain, bits, workers).widen(tail_bound(index, n_plain))
        return SeriesEvaluation(ball.rescale(prec.bits), n_plain, "plain")
    if method == "tail":
        n = max(32, prec.working_digits)
        if n > max_terms:
            raise EffortExceeded(n, max_terms)
        head = partial_sum(index, n, bits, workers)
        tail, calls = tail_enclosure(index, n, bits)
        return SeriesEvaluation((head + tail).rescale(prec.bits), n, "tail", calls)
    raise ValueError(f"unknown method {method!r}")


def eval_series(index: SumIndex, prec: Precision, *, method: str = "auto",
                max_terms: int = DEFAULT_MAX_TERMS, workers: int = 1) -> Ball:
    """Ball enclosing ``sum_{n>=1} n^w / D^b``."""
    return series_enclosure(index, prec, method=method, max_terms=max_terms, workers=workers).ball
