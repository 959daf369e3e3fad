"""Rate functions, Chernoff bounds and exact binomial tails for Bernoulli sums."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from scipy.stats import binom

from .seqcore import BernoulliPrior, FAIR

EXACT_TAIL_MAX_N = 10_000


def _xlogy(x: float, y: float) -> float:
    return 0.0 if x == 0 else x * math.log(y)


@dataclass(frozen=True)
class RateFunction:
    """Cramér rate I_q(x) of the mean of Bernoulli(q) variables, in nats."""

    prior: BernoulliPrior = FAIR

    def __call__(self, x: float) -> float:
        return rate(self.prior, x)


def rate(prior: Union[BernoulliPrior, float], x: float) -> float:
    """I_q(x) = x ln(x/q) + (1-x) ln((1-x)/(1-q)), with 0 ln 0 = 0."""
    q = float(prior.q1 if isinstance(prior, BernoulliPrior) else prior)
    if not 0 < q < 1:
        raise ValueError("rate function needs q1 in (0, 1)")
    x = float(x)
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return _xlogy(x, x / q) + _xlogy(1 - x, (1 - x) / (1 - q))


@dataclass(frozen=True)
class DeviationEvent:
    """V_N(eps) = { |S_N - center| > eps } under the i.i.d. prior."""

    N: int
    center: Union[Fraction, float]
    epsilon: Union[Fraction, float]
    prior: BernoulliPrior = FAIR

    def exponent(self) -> float:
        """min(I(center + eps), I(center - eps)) with arguments clamped to [0, 1]."""
        c, e = float(self.center), float(self.epsilon)
        hi = min(max(c + e, 0.0), 1.0)
        lo = min(max(c - e, 0.0), 1.0)
        return min(rate(self.prior, hi), rate(self.prior, lo))

    def contains_count(self, k: int) -> bool:
        """Whether k ones out of N lie in the event (exact rational comparison)."""
        return abs(Fraction(k, self.N) - Fraction(self.center)) > Fraction(self.epsilon)


def cramer_bound(ev: DeviationEvent) -> float:
    """Two-sided Chernoff bound 2 exp(-N min I(center +- eps))."""
    if ev.epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if ev.N == 0:
        return 2.0
    return 2.0 * math.exp(-ev.N * ev.exponent())


def log_cramer_bound(ev: DeviationEvent) -> float:
    """Natural log of the Chernoff bound; stays finite where the bound underflows."""
    if ev.epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return math.log(2.0) - ev.N * ev.exponent() if ev.N else math.log(2.0)


def log_fraction(p: Fraction) -> float:
    """Natural log of a positive rational far below the float range; -inf at 0."""
    if p == 0:
        return -math.inf
    return math.log(p.numerator) - math.log(p.denominator)


def _tail_ranges(ev: DeviationEvent) -> list[tuple[int, int]]:
    """Inclusive k-ranges with |k/N - center| > eps (two contiguous pieces)."""
    N = ev.N
    c, e = Fraction(ev.center), Fraction(ev.epsilon)
    # k < N (c - e)  and  k > N (c + e)
    lo_edge = N * (c - e)
    k_lo = math.ceil(lo_edge) - 1
    hi_edge = N * (c + e)
    k_hi = math.floor(hi_edge) + 1
    out = []
    if k_lo >= 0:
        out.append((0, min(k_lo, N)))
    if k_hi <= N:
        out.append((max(k_hi, 0), N))
    if len(out) == 2 and out[0][1] >= out[1][0]:
        out = [(0, N)]
    return out


def _weighted_binomial_sum(N: int, lo: int, hi: int, a: int, b: int) -> int:
    """sum_{k=lo}^{hi} C(N, k) a^k b^(N-k), by a Horner pass from the top."""
    if lo > hi:
        return 0
    acc = 0
    b_pow = b ** (N - hi)
    coeff = math.comb(N, hi)
    for k in range(hi, lo - 1, -1):
        acc = acc * a + coeff * b_pow
        if k > lo:
            coeff = coeff * k // (N - k + 1)
            b_pow *= b
    return acc * a ** lo


def exact_tail(ev: DeviationEvent) -> Fraction:
    """P(V_N(eps)) as an exact rational, by binomial enumeration (N <= 10^4)."""
    N = ev.N
    if N > EXACT_TAIL_MAX_N:
        raise ValueError(f"N={N} is beyond the exact enumeration range "
                         f"({EXACT_TAIL_MAX_N}); use Monte Carlo instead")
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N == 0:
        return Fraction(0)
    q = Fraction(ev.prior.q1)
    a, b, d = q.numerator, q.denominator - q.numerator, q.denominator
    total = sum(_weighted_binomial_sum(N, lo, hi, a, b) for lo, hi in _tail_ranges(ev))
    return Fraction(total, d ** N)


def tail_probability(ev: DeviationEvent) -> float:
    """Float-precision P(V_N(eps)) for any N; event boundaries are still exact."""
    if ev.N == 0:
        return 0.0
    q = float(ev.prior.q1)
    total = 0.0
    for lo, hi in _tail_ranges(ev):
        if lo == 0:
            total += float(binom.cdf(hi, ev.N, q))
        elif hi == ev.N:
            total += float(binom.sf(lo - 1, ev.N, q))
        else:
            total += float(binom.cdf(hi, ev.N, q) - binom.cdf(lo - 1, ev.N, q))
    return min(total, 1.0)


@dataclass(frozen=True)
class BoundRow:
    N: int
    exact: Fraction
    bound: float
    log_bound: float | None = None

    @property
    def ok(self) -> bool:
        if self.bound > 0 or self.log_bound is None:
            # Fraction <= float compares exactly
            return self.exact <= self.bound
        # bound underflowed to 0.0; compare logs instead
        return log_fraction(self.exact) <= self.log_bound


def verify_bound(prior: BernoulliPrior, center, epsilon, n_grid: Iterable[int]):
    """Rows (N, exact_tail, cramer_bound, ok) and the partial sum of exact tails."""
    rows = []
    partial = Fraction(0)
    for N in n_grid:
        ev = DeviationEvent(N, center, epsilon, prior)
        row = BoundRow(N, exact_tail(ev), cramer_bound(ev), log_cramer_bound(ev))
        partial += row.exact
        rows.append(row)
    return rows, partial


def empirical_rate(ev: DeviationEvent) -> float:
    """-log(exact_tail)/N, the finite-N decay rate of the exact tail."""
    return -log_fraction(exact_tail(ev)) / ev.N
