import mpmath
import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def record_criterion(number, passed, detail):
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def truncated_value(expr, x, n_terms=10_000):
    """Brute-force sum of a SumExpression at a float x over n = 1..n_terms (long double)."""
    n = np.arange(1, n_terms + 1, dtype=np.longdouble)
    x = np.longdouble(x)
    d = n * n - x * x
    total = np.longdouble(0)
    for t in expr:
        c = np.longdouble(t.coeff.numerator) / np.longdouble(t.coeff.denominator)
        total += c * x**t.xpow * np.sum(n**t.weight / d**t.bpow)
    return total


def tail_allowance(expr, x, n_terms=10_000):
    """Upper bound on sum_{n>N} |term| for every term of the expression."""
    total = 0.0
    for t in expr:
        e = 2 * t.bpow - t.weight
        shrink = (1 - x * x / (n_terms + 1) ** 2) ** (-t.bpow)
        total += abs(float(t.coeff)) * x**t.xpow * shrink * n_terms ** (1 - e) / (e - 1)
    return total


def mp_series(weight, b, scale, dps=40):
    with mpmath.workdps(dps):
        return mpmath.nsum(lambda n: n**weight / (scale * n * n - 1) ** b, [1, mpmath.inf])


def mp_value(ball):
    q = ball.mid_fraction
    return mpmath.mpf(q.numerator) / q.denominator


@pytest.fixture
def mp60():
    with mpmath.workdps(60):
        yield mpmath.mp
