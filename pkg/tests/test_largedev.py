import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from irreversim.largedev import (
    DeviationEvent,
    RateFunction,
    cramer_bound,
    empirical_rate,
    exact_tail,
    log_cramer_bound,
    log_fraction,
    rate,
    tail_probability,
    verify_bound,
)
from irreversim.seqcore import FAIR, BernoulliPrior


def brute_force_tail(N, center, eps, q1):
    """Sum over all 2^N strings; only for small N."""
    total = Fraction(0)
    q1 = Fraction(q1)
    for bits in product((0, 1), repeat=N):
        k = sum(bits)
        if abs(Fraction(k, N) - Fraction(center)) > Fraction(eps):
            total += q1**k * (1 - q1) ** (N - k)
    return total


@pytest.mark.parametrize(
    "x, expected",
    [(0.5, 0.0), (0.7, 0.7 * math.log(1.4) + 0.3 * math.log(0.6)), (1.0, math.log(2)), (0.0, math.log(2))],
)
def test_rate_fair_examples(x, expected):
    assert rate(FAIR, x) == pytest.approx(expected, abs=1e-15)


def test_rate_value_digits():
    assert rate(FAIR, 0.7) == pytest.approx(0.082282, abs=1e-6)


@pytest.mark.parametrize("q1", [0, 1, 0.0, 1.0])
def test_rate_degenerate_prior(q1):
    with pytest.raises(ValueError):
        rate(BernoulliPrior(q1), 0.5)


@pytest.mark.parametrize("q1", [0.1, 0.3, 0.5, 0.8])
def test_rate_convex_nonnegative_on_grid(q1):
    I = RateFunction(BernoulliPrior(q1))
    xs = np.linspace(0, 1, 101)
    vals = np.array([I(x) for x in xs])
    assert vals.min() >= 0
    assert I(q1) == pytest.approx(0, abs=1e-15)
    for i in range(101):
        for j in range(i, 101, 7):
            assert I((xs[i] + xs[j]) / 2) <= (vals[i] + vals[j]) / 2 + 1e-12


def test_cramer_bound_examples():
    direct = 2 * math.exp(-10 * (0.7 * math.log(1.4) + 0.3 * math.log(0.6)))
    assert cramer_bound(DeviationEvent(10, 0.5, 0.2)) == pytest.approx(direct, rel=1e-14)
    assert cramer_bound(DeviationEvent(10, 0.5, 0.2)) == pytest.approx(0.878375, abs=1e-6)
    assert cramer_bound(DeviationEvent(0, 0.5, 0.2)) == 2
    for N in (1, 5, 12):
        assert cramer_bound(DeviationEvent(N, 0.5, 0.5)) == pytest.approx(2.0 ** (1 - N), rel=1e-12)
        assert cramer_bound(DeviationEvent(N, 0.5, 0.7)) == pytest.approx(2.0 ** (1 - N), rel=1e-12)


def test_cramer_bound_rejects_nonpositive_eps():
    with pytest.raises(ValueError):
        cramer_bound(DeviationEvent(10, 0.5, 0))


def test_exact_tail_examples():
    assert exact_tail(DeviationEvent(10, Fraction(1, 2), Fraction(1, 5))) == Fraction(112, 1024)
    assert exact_tail(DeviationEvent(10, 0.5, 0.49)) == Fraction(2, 1024)
    assert exact_tail(DeviationEvent(1, 0.5, 0)) == 1
    assert exact_tail(DeviationEvent(10, 0.5, 1.5)) == 0


@pytest.mark.parametrize("N", [1, 2, 7, 20, 100])
def test_exact_tail_endpoint_only(N):
    # eps in [1/2 - 1/N, 1/2): only the all-0 and all-1 strings deviate
    eps = Fraction(1, 2) - Fraction(1, N) if N > 2 else Fraction(1, 4)
    assert exact_tail(DeviationEvent(N, Fraction(1, 2), eps)) == Fraction(2, 2**N)
    # the event is strict, so eps = 1/2 is already impossible
    assert exact_tail(DeviationEvent(N, Fraction(1, 2), Fraction(1, 2))) == 0


@pytest.mark.parametrize("N", [1, 3, 6, 9, 12])
@pytest.mark.parametrize("eps", [Fraction(1, 20), Fraction(1, 6), Fraction(1, 3)])
@pytest.mark.parametrize("q1", [Fraction(1, 2), Fraction(1, 3), Fraction(7, 10)])
def test_exact_tail_matches_enumeration(N, eps, q1):
    center = q1
    ev = DeviationEvent(N, center, eps, BernoulliPrior(q1))
    assert exact_tail(ev) == brute_force_tail(N, center, eps, q1)


def test_exact_tail_float_prior_is_exact_dyadic():
    ev = DeviationEvent(8, 0.3, 0.1, BernoulliPrior(0.3))
    assert exact_tail(ev) == brute_force_tail(8, 0.3, 0.1, 0.3)


def test_exact_tail_range_cap():
    with pytest.raises(ValueError, match="Monte Carlo"):
        exact_tail(DeviationEvent(10_001, 0.5, 0.1))


@pytest.mark.parametrize("N", [10, 257, 4096])
@pytest.mark.parametrize("q1", [Fraction(1, 2), Fraction(1, 4)])
def test_tail_probability_matches_exact(N, q1):
    ev = DeviationEvent(N, q1, Fraction(1, 10), BernoulliPrior(q1))
    ex = exact_tail(ev)
    assert tail_probability(ev) == pytest.approx(float(ex), rel=1e-9, abs=1e-300)


def test_verify_bound_examples():
    rows, partial = verify_bound(FAIR, Fraction(1, 2), Fraction(1, 5), [10, 20, 40])
    assert [r.N for r in rows] == [10, 20, 40]
    assert all(r.ok for r in rows)
    assert partial == sum(r.exact for r in rows)
    rows, _ = verify_bound(FAIR, Fraction(1, 2), Fraction(2), [5])
    assert rows[0].exact == 0 and rows[0].ok


@given(
    N=st.integers(1, 300),
    eps=st.fractions(min_value=Fraction(1, 100), max_value=Fraction(3, 4), max_denominator=100),
    q=st.sampled_from([Fraction(1, 2), Fraction(1, 5), Fraction(2, 3), Fraction(9, 10)]),
)
def test_dominance_property(N, eps, q):
    ev = DeviationEvent(N, q, eps, BernoulliPrior(q))
    assert exact_tail(ev) <= cramer_bound(ev)


@pytest.mark.parametrize("eps", [0.05, 0.1, 0.2])
def test_tail_eventually_decreasing_and_rate(eps):
    tails = [exact_tail(DeviationEvent(2**k, Fraction(1, 2), Fraction(eps))) for k in range(3, 13)]
    assert all(b < a for a, b in zip(tails[3:], tails[4:]))
    ev = DeviationEvent(4096, Fraction(1, 2), Fraction(eps))
    assert abs(empirical_rate(ev) - ev.exponent()) <= 0.05


def test_underflowed_bound_compared_in_logs():
    ev = DeviationEvent(2048, Fraction(1, 2), Fraction(2, 5))
    assert cramer_bound(ev) == 0.0
    assert 0 < exact_tail(ev)
    assert log_fraction(exact_tail(ev)) <= log_cramer_bound(ev)
    rows, _ = verify_bound(FAIR, Fraction(1, 2), Fraction(2, 5), [2048])
    assert rows[0].ok


def test_log_fraction():
    assert log_fraction(Fraction(1, 2**2000)) == pytest.approx(-2000 * math.log(2))
    assert log_fraction(Fraction(0)) == -math.inf
