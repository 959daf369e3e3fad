"""Finite-scale randomness diagnostics.

None of these functions certify randomness.  They measure: compression
complexity, deficiency against a computable prior, block-frequency defects,
and membership counts in truncated tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Union

import numpy as np

from .largedev import DeviationEvent, cramer_bound, exact_tail
from .seqcore import (
    FAIR,
    BernoulliPrior,
    BitLike,
    BitString,
    SeededBitSource,
    all_strings,
    as_bits,
)


@dataclass(frozen=True)
class ComplexityEstimate:
    phrase_count: int
    encoded_bits: int


def lz78_code_length(c: int) -> int:
    """sum_{i=1..c} (ceil(log2 i) + 1): pointer to an earlier phrase plus one new bit."""
    total = 0
    for i in range(1, c + 1):
        total += (i - 1).bit_length() + 1
    return total


def lz78_phrase_count(bits: np.ndarray) -> int:
    # trie over phrase indices; node 0 is the empty phrase
    trie: dict[int, int] = {}
    node = 0
    phrases = 0
    for b in bits.tobytes():
        key = node * 2 + b
        nxt = trie.get(key)
        if nxt is None:
            phrases += 1
            trie[key] = phrases
            node = 0
        else:
            node = nxt
    if node:
        phrases += 1  # trailing phrase repeats an earlier one
    return phrases


def lz78_complexity(s: BitLike) -> ComplexityEstimate:
    """LZ78 incremental parse; a trailing incomplete phrase counts as one phrase."""
    bits = as_bits(s)
    if bits.size == 0:
        raise ValueError("empty sequence")
    c = lz78_phrase_count(bits)
    return ComplexityEstimate(c, lz78_code_length(c))


@dataclass(frozen=True)
class DeficiencyReport:
    N: int
    neg_log_prob: float
    k_estimate: int
    deficiency: float


def neg_log2_prob(s: BitLike, prior: BernoulliPrior = FAIR) -> float:
    """-log2 of the cylinder probability of ``s``; exactly N under the fair prior."""
    bits = as_bits(s)
    n = int(bits.size)
    k = int(np.count_nonzero(bits))
    if prior.is_fair:
        return n
    q1 = prior.q1
    if (k and q1 == 0) or (n - k and q1 == 1):
        raise ValueError("zero-probability prefix")
    out = 0.0
    if k:
        out -= k * math.log2(q1)
    if n - k:
        out -= (n - k) * math.log2(1 - q1)
    return out


def deficiency(s: BitLike, prior: BernoulliPrior = FAIR) -> DeficiencyReport:
    """Randomness deficiency -log2 P([s]) - K_est(s), with LZ78 standing in for K."""
    bits = as_bits(s)
    nlp = neg_log2_prob(bits, prior)
    k = lz78_complexity(bits).encoded_bits
    return DeficiencyReport(int(bits.size), nlp, k, nlp - k)


def borel_defect(s: BitLike, k: int) -> float:
    """max over w in 2^k of |freq(w) - 2^-k| over non-overlapping k-blocks."""
    bits = as_bits(s)
    n = int(bits.size)
    if k < 1:
        raise ValueError("block length must be positive")
    if k > n:
        raise ValueError(f"block length {k} exceeds sequence length {n}")
    m = n // k
    blocks = bits[: m * k].reshape(m, k).astype(np.int64)
    codes = blocks @ (1 << np.arange(k - 1, -1, -1, dtype=np.int64))
    freq = np.bincount(codes, minlength=1 << k) / m
    return float(np.max(np.abs(freq - 2.0 ** -k)))


def champernowne_prefix(N: int) -> BitString:
    """First N bits of 0 1 10 11 100 101 ... (all binary numerals from 0)."""
    if N < 1:
        raise ValueError("N must be positive")
    parts = []
    size = 0
    i = 0
    while size < N:
        numeral = format(i, "b")
        parts.append(numeral)
        size += len(numeral)
        i += 1
    return BitString("".join(parts)[:N])


# ---------------------------------------------------------------------------
# Truncated Solovay tests


@dataclass(frozen=True)
class SolovayTestSpec:
    """A test family (V_n) given by, for each n, a finite union of cylinders.

    V_n is described by the prefix length ``width(n)`` that decides membership
    and a predicate on prefixes of that length.  ``measure_bound(n)`` must
    dominate the measure of V_n; ``summability`` is a descriptive tag only.
    """

    name: str
    width: Callable[[int], int]
    contains: Callable[[int, np.ndarray], bool]
    measure_bound: Callable[[int], float]
    summability: str = "unverified"
    prior: BernoulliPrior = FAIR
    exact_measure: Callable[[int], Fraction] | None = None
    start: int = 1

    def cylinders(self, n: int, max_width: int = 20) -> Iterator[BitString]:
        """Enumerate the cylinder prefixes making up V_n (small widths only)."""
        w = self.width(n)
        if w > max_width:
            raise ValueError(f"V_{n} has width {w}; enumeration capped at {max_width}")
        for sigma in all_strings(w):
            if self.contains(n, sigma.bits):
                yield sigma


def deviation_test(epsilon, prior: BernoulliPrior = FAIR, center=None) -> SolovayTestSpec:
    """V_N(eps) = { s : |S_N(s) - center| > eps }, N = 1, 2, ..."""
    eps = Fraction(epsilon)
    c = Fraction(prior.q1 if center is None else center)

    def contains(n: int, prefix: np.ndarray) -> bool:
        return abs(Fraction(int(np.count_nonzero(prefix[:n])), n) - c) > eps

    return SolovayTestSpec(
        name=f"deviation(eps={eps})",
        width=lambda n: n,
        contains=contains,
        measure_bound=lambda n: cramer_bound(DeviationEvent(n, c, eps, prior)),
        summability="geometric (Chernoff)",
        prior=prior,
        exact_measure=lambda n: exact_tail(DeviationEvent(n, c, eps, prior)),
    )


def empty_test() -> SolovayTestSpec:
    return SolovayTestSpec(
        name="empty",
        width=lambda n: 0,
        contains=lambda n, prefix: False,
        measure_bound=lambda n: 0.0,
        summability="zero",
    )


@dataclass
class MembershipReport:
    indices: list[int] = field(default_factory=list)
    n_max: int = 0

    @property
    def count(self) -> int:
        return len(self.indices)

    @property
    def last(self) -> int | None:
        return self.indices[-1] if self.indices else None

    def stabilized_before(self, fraction: float = 0.5) -> bool:
        """No memberships in the last ``fraction`` of the checked range."""
        return self.last is None or self.last <= (1 - fraction) * self.n_max


def solovay_membership(
    spec: SolovayTestSpec,
    s: Union[SeededBitSource, BitLike],
    n_max: int,
) -> MembershipReport:
    """Indices n <= n_max with s in V_n."""
    ns = range(spec.start, n_max + 1)
    need = max((spec.width(n) for n in ns), default=0)
    if isinstance(s, SeededBitSource):
        bits = s.bits(need)
    else:
        bits = as_bits(s)
        if bits.size < need:
            first = next(n for n in ns if spec.width(n) > bits.size)
            raise ValueError(
                f"sequence of length {bits.size} cannot decide membership in V_{first}"
            )
    hits = [n for n in ns if spec.contains(n, bits[: spec.width(n)])]
    return MembershipReport(hits, n_max)


# non-random controls


def all_zeros(N: int) -> BitString:
    return BitString(np.zeros(N, dtype=np.uint8))


def alternating(N: int, first: int = 0) -> BitString:
    return BitString((np.arange(N) + first) % 2)
