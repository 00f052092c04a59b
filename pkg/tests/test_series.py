from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mp_series, mp_value
from zetasums.derivation import Anchor, SumIndex
from zetasums.exactcore import LOG2
from zetasums.numerics import DivergentIndex, EffortExceeded, Precision, eval_constant, eval_series, tail_bound
from zetasums.numerics.series import partial_sum, series_enclosure, terms_for_tail

Q, H = Anchor.QUARTER, Anchor.HALF


def residual(index, n, upto=10**6):
    """Brute-force sum over n < k <= upto, in long double."""
    k = np.arange(n + 1, upto + 1, dtype=np.longdouble)
    s = np.longdouble(index.anchor.scale)
    return float(np.sum(k**index.weight / (s * k * k - 1) ** index.bpow))


def test_tail_bound_examples():
    assert tail_bound(SumIndex(-1, 2, Q), 10) == Fraction(1, 9_000_000)
    assert tail_bound(SumIndex(-1, 1, Q), 100) == Fraction(1, 300_000)


def test_tail_bound_half_and_weighted():
    assert tail_bound(SumIndex(-1, 1, H), 10) == Fraction(1, 3 * 2 * 100)
    assert tail_bound(SumIndex(1, 2, Q), 10) == Fraction(1, 225 * 2 * 100)


@pytest.mark.parametrize("index", [SumIndex(-1, b, Q) for b in (1, 2, 3)]
                         + [SumIndex(-1, 1, H), SumIndex(1, 2, Q), SumIndex(1, 2, H), SumIndex(1, 3, Q)],
                         ids=lambda i: i.label())
@pytest.mark.parametrize("n", [10, 100, 1000])
def test_tail_soundness(index, n):
    assert residual(index, n) < float(tail_bound(index, n))


@given(st.integers(min_value=1, max_value=4), st.sampled_from([-1, 1]), st.sampled_from([Q, H]),
       st.integers(min_value=1, max_value=10**6))
def test_tail_bound_doubling(b, w, anchor, n):
    if w - 2 * b > -2:
        return
    idx = SumIndex(w, b, anchor)
    e = 2 * b - w
    assert tail_bound(idx, 2 * n) * 2 ** (e - 1) <= tail_bound(idx, n)
    if w == -1:
        assert tail_bound(idx, 2 * n) * 2 ** (2 * b) <= tail_bound(idx, n)


def test_terms_for_tail_is_minimal():
    idx = SumIndex(-1, 2, Q)
    lim = Fraction(1, 10**15)
    n = terms_for_tail(idx, lim)
    assert tail_bound(idx, n) <= lim < tail_bound(idx, n - 1)


def test_divergent_index():
    with pytest.raises(DivergentIndex):
        tail_bound(SumIndex(1, 1, Q), 10)
    with pytest.raises(DivergentIndex):
        eval_series(SumIndex(1, 1, Q), Precision(5))
    with pytest.raises(ValueError):
        tail_bound(SumIndex(-1, 1, Q), 0)


@pytest.mark.parametrize("b,digits,value", [
    (2, 9, "0.004592864"),
    (4, 18, "0.0000197856927278423"),
])
def test_eval_series_examples(b, digits, value):
    ball = eval_series(SumIndex(-1, b, Q), Precision(digits))
    # quoted digits are short displays: allow one unit in the last shown place
    ulp = Fraction(1, 10 ** (len(value.split(".")[1])))
    assert abs(ball.mid_fraction - Fraction(value)) <= ulp


def test_eval_series_r5_relative():
    ball = eval_series(SumIndex(-1, 5, Q), Precision(16))
    assert abs(ball.mid_fraction / Fraction("1.3173820678770678e-6") - 1) < Fraction(1, 10**15)


def test_eval_series_half_b1_matches_log2():
    ball = eval_series(SumIndex(-1, 1, H), Precision(12))
    ref = eval_constant(LOG2, Precision(12)).mul_int(2) - 1
    assert ball.overlaps(ref)
    assert ball.to_decimal(12) == "0.386294361120"


@pytest.mark.parametrize("w,b,anchor", [(-1, 1, Q), (-1, 3, Q), (1, 2, Q), (1, 2, H), (-1, 2, H)])
def test_eval_series_against_mpmath(w, b, anchor):
    ball = eval_series(SumIndex(w, b, anchor), Precision(30))
    assert ball.radius <= Fraction(1, 10**30)
    with mpmath.workdps(45):
        assert abs(mp_value(ball) - mp_series(w, b, anchor.scale, 45)) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("index", [SumIndex(-1, 3, Q), SumIndex(1, 3, H)], ids=lambda i: i.label())
def test_plain_and_tail_routes_agree(index):
    p = Precision(15)
    a = series_enclosure(index, p, method="plain")
    b = series_enclosure(index, p, method="tail")
    assert a.method == "plain" and b.method == "tail"
    assert a.ball.overlaps(b.ball)
    assert b.terms < a.terms


def test_determinism_across_workers():
    idx = SumIndex(-1, 2, Q)
    p = Precision(12)
    one = series_enclosure(idx, p, method="plain", workers=1).ball
    three = series_enclosure(idx, p, method="plain", workers=3).ball
    assert (one.mid, one.rad, one.prec) == (three.mid, three.rad, three.prec)
    assert partial_sum(idx, 1000, 100, 1) == partial_sum(idx, 1000, 100, 4)


def test_effort_exceeded_reports_needed_terms():
    with pytest.raises(EffortExceeded) as exc:
        series_enclosure(SumIndex(-1, 1, Q), Precision(20), method="plain", max_terms=1000)
    assert exc.value.needed > 1000 and exc.value.ceiling == 1000


def test_unknown_method():
    with pytest.raises(ValueError):
        series_enclosure(SumIndex(-1, 2, Q), Precision(5), method="magic")
