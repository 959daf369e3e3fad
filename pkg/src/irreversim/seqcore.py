"""Binary strings, seeded bit sources, cylinders and empirical measures.

Everything random in the package is drawn from SplitMix64 evaluated as a
pure function of ``(seed, index)``: the ``index``-th output of a generator
seeded with ``seed`` is ``mix(seed + (index + 1) * GOLDEN)``.  This makes
any coordinate of any stream addressable without replaying the stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_U64_GOLDEN = np.uint64(GOLDEN)
_U64_MIX1 = np.uint64(_MIX1)
_U64_MIX2 = np.uint64(_MIX2)
_S30, _S27, _S31 = np.uint64(30), np.uint64(27), np.uint64(31)


# ---------------------------------------------------------------------------
# SplitMix64


def mix64(z: int) -> int:
    """The SplitMix64 output finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def splitmix64_at(seed: int, index: int) -> int:
    """Output number ``index`` (0-based) of SplitMix64 seeded with ``seed``."""
    return mix64((seed + (index + 1) * GOLDEN) & MASK64)


def derive_seed(master: int, stream: int) -> int:
    """Seed of an independent stream: SplitMix64(master XOR stream)."""
    return splitmix64_at((master ^ stream) & MASK64, 0)


def _mix64_inplace(z: np.ndarray) -> np.ndarray:
    z ^= z >> _S30
    z *= _U64_MIX1
    z ^= z >> _S27
    z *= _U64_MIX2
    z ^= z >> _S31
    return z


def splitmix64_array(seeds, indices) -> np.ndarray:
    """Vectorized ``splitmix64_at`` with numpy broadcasting of both arguments."""
    seeds = np.asarray(seeds, dtype=np.uint64)
    idx = np.asarray(indices, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (idx + np.uint64(1)) * _U64_GOLDEN
        z = z + seeds
        return _mix64_inplace(np.array(z, dtype=np.uint64, copy=True))


def derive_seeds(master, streams) -> np.ndarray:
    """Vectorized ``derive_seed``."""
    master = np.asarray(master, dtype=np.uint64)
    streams = np.asarray(streams, dtype=np.uint64)
    return splitmix64_array(master ^ streams, 0)


def bernoulli_threshold(q1) -> int:
    """``floor(q1 * 2**64)``, computed exactly; values >= 2**64 mean 'always 1'."""
    q = Fraction(q1)
    if not 0 <= q <= 1:
        raise ValueError(f"probability must lie in [0, 1], got {q1!r}")
    return (q.numerator << 64) // q.denominator


def bits_from_u64(outputs: np.ndarray, q1) -> np.ndarray:
    """Map raw 64-bit outputs to Bernoulli(q1) bits: 1 iff output < floor(q1 2^64)."""
    thr = bernoulli_threshold(q1)
    if thr > MASK64:
        return np.ones(np.shape(outputs), dtype=np.uint8)
    return (outputs < np.uint64(thr)).astype(np.uint8)


def uniform_indices(outputs: np.ndarray, n: int) -> np.ndarray:
    """Map raw outputs to indices in ``range(n)`` via the high 32 bits (bias < n / 2**32)."""
    if not 1 <= n < 1 << 32:
        raise ValueError("n must be in [1, 2**32)")
    hi = outputs >> np.uint64(32)
    with np.errstate(over="ignore"):
        return ((hi * np.uint64(n)) >> np.uint64(32)).astype(np.int64)


class SplitMix64:
    """Sequential SplitMix64 generator, for the few places that draw one value at a time."""

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.index = 0

    def next_u64(self) -> int:
        out = splitmix64_at(self.seed, self.index)
        self.index += 1
        return out

    def randbelow(self, n: int) -> int:
        return ((self.next_u64() >> 32) * n) >> 32


# ---------------------------------------------------------------------------
# Bit strings


class BitString:
    """Immutable finite binary string; text form is the ASCII string of 0/1."""

    __slots__ = ("_bits",)

    def __init__(self, bits: "BitLike" = ()):
        arr = _coerce(bits).copy()
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        return cls(text)

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def __len__(self) -> int:
        return int(self._bits.size)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return BitString(self._bits[item])
        return int(self._bits[item])

    def __iter__(self):
        return (int(b) for b in self._bits)

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            other = BitString(other)
        if not isinstance(other, BitString):
            return NotImplemented
        return np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash(self._bits.tobytes())

    def __add__(self, other: "BitLike") -> "BitString":
        return BitString(np.concatenate([self._bits, _coerce(other)]))

    def __str__(self) -> str:
        return self._bits.tobytes().translate(_TO_ASCII).decode("ascii")

    def __repr__(self) -> str:
        text = str(self)
        if len(text) > 40:
            text = text[:37] + "..."
        return f"BitString('{text}')"

    def count_ones(self) -> int:
        return int(np.count_nonzero(self._bits))


BitLike = Union[BitString, str, bytes, Sequence[int], np.ndarray]

_TO_ASCII = bytes.maketrans(b"\x00\x01", b"01")
_FROM_ASCII = bytes.maketrans(b"01", b"\x00\x01")


def _coerce(s: BitLike) -> np.ndarray:
    if isinstance(s, BitString):
        return s.bits
    if isinstance(s, str):
        s = s.encode("ascii")
    if isinstance(s, bytes):
        if s.strip(b"01"):
            raise ValueError("bit strings may only contain '0' and '1'")
        return np.frombuffer(s.translate(_FROM_ASCII), dtype=np.uint8)
    arr = np.asarray(s)
    if arr.size == 0:
        return np.zeros(0, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("bit strings are one-dimensional")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("every bit must be 0 or 1")
    return arr.astype(np.uint8, copy=False)


def as_bits(s: BitLike) -> np.ndarray:
    """Return the bits of ``s`` as a one-dimensional uint8 array."""
    return _coerce(s)


# ---------------------------------------------------------------------------
# Seeded sources


@dataclass(frozen=True)
class SeededBitSource:
    """Reproducible Bernoulli(q1) sequence; bit ``i`` depends only on (seed, q1, i)."""

    seed: int
    q1: float = 0.5

    def __post_init__(self):
        bernoulli_threshold(self.q1)  # validates the range
        object.__setattr__(self, "seed", int(self.seed) & MASK64)

    def bits(self, n: int, start: int = 0) -> np.ndarray:
        idx = np.arange(start, start + n, dtype=np.uint64)
        return bits_from_u64(splitmix64_array(self.seed, idx), self.q1)

    def bits_at(self, indices) -> np.ndarray:
        return bits_from_u64(splitmix64_array(self.seed, indices), self.q1)

    def bit(self, i: int) -> int:
        thr = bernoulli_threshold(self.q1)
        return int(splitmix64_at(self.seed, i) < thr)

    def prefix(self, n: int) -> BitString:
        return BitString(self.bits(n))

    def stream(self, index: int, q1=None) -> "SeededBitSource":
        """Independent child source derived from this source's seed."""
        return SeededBitSource(derive_seed(self.seed, index), self.q1 if q1 is None else q1)


def zigzag(n) -> np.ndarray:
    """Bijection Z -> N (0, -1, 1, -2, ... -> 0, 1, 2, 3, ...) for bilateral lattices."""
    n = np.asarray(n, dtype=np.int64)
    return np.where(n >= 0, 2 * n, -2 * n - 1).astype(np.uint64)


# ---------------------------------------------------------------------------
# Measures


@dataclass(frozen=True)
class BernoulliPrior:
    """Probability ``q1`` of the symbol 1; ``q1 = 1/2`` is the fair prior."""

    q1: Union[Fraction, float] = Fraction(1, 2)

    def __post_init__(self):
        q = self.q1
        if not isinstance(q, Rational):
            q = float(q)
        if not 0 <= q <= 1:
            raise ValueError(f"q1 must lie in [0, 1], got {self.q1!r}")
        object.__setattr__(self, "q1", q)

    @property
    def q0(self):
        return 1 - self.q1

    @property
    def is_fair(self) -> bool:
        return self.q1 == Fraction(1, 2)

    def prob(self, bit: int):
        return self.q1 if bit else self.q0


FAIR = BernoulliPrior(Fraction(1, 2))


@dataclass(frozen=True)
class Cylinder:
    """The event that a sequence shows ``prefix`` starting at coordinate ``start``."""

    prefix: BitString = field(default_factory=BitString)
    start: int = 0

    def __post_init__(self):
        if not isinstance(self.prefix, BitString):
            object.__setattr__(self, "prefix", BitString(self.prefix))

    def __len__(self) -> int:
        return len(self.prefix)

    def contains(self, s: BitLike, offset: int = 0) -> bool:
        """Membership of ``s`` whose first element sits at coordinate ``offset``."""
        bits = as_bits(s)
        lo = self.start - offset
        hi = lo + len(self.prefix)
        if lo < 0 or hi > bits.size:
            raise ValueError("sequence does not cover the cylinder's coordinates")
        return bool(np.array_equal(bits[lo:hi], self.prefix.bits))


def cylinder_measure(c: Union[Cylinder, BitLike], prior: BernoulliPrior = FAIR):
    """Product of per-bit probabilities; exact (Fraction) for rational priors."""
    bits = c.prefix if isinstance(c, Cylinder) else BitString(c)
    k = bits.count_ones()
    n = len(bits)
    return prior.q1 ** k * prior.q0 ** (n - k)


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Counts of 0s and 1s among ``total`` observations."""

    zeros: int
    ones: int

    @property
    def total(self) -> int:
        return self.zeros + self.ones

    def __getitem__(self, symbol: int) -> int:
        return self.ones if symbol else self.zeros

    def frequency(self, symbol: int) -> Fraction:
        return Fraction(self[symbol], self.total)

    def as_dict(self) -> dict:
        return {0: self.zeros, 1: self.ones}


def empirical_measure(s: BitLike) -> EmpiricalDistribution:
    bits = as_bits(s)
    if bits.size == 0:
        raise ValueError("empty sequence")
    ones = int(np.count_nonzero(bits))
    return EmpiricalDistribution(zeros=int(bits.size) - ones, ones=ones)


def empirical_mean(s: BitLike) -> Fraction:
    """The running average S_N(s) = (number of ones) / N, as an exact rational."""
    return empirical_measure(s).frequency(1)


def running_means(bits: np.ndarray) -> np.ndarray:
    """S_1, ..., S_N of a bit array as floats."""
    bits = np.asarray(bits)
    return np.cumsum(bits, dtype=np.int64) / np.arange(1, bits.size + 1)


# ---------------------------------------------------------------------------
# Length-then-lexicographic numbering of finite strings


def lex_index(n: int) -> BitString:
    """The n-th finite binary string: "", "0", "1", "00", "01", ..."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return BitString(bin(n + 1)[3:])


def lex_rank(s: BitLike) -> int:
    """Inverse of :func:`lex_index`."""
    return int("1" + str(BitString(s)), 2) - 1


def all_strings(length: int) -> Iterable[BitString]:
    for r in range((1 << length) - 1, (1 << (length + 1)) - 1):
        yield lex_index(r)


# ---------------------------------------------------------------------------
# Curves


@dataclass(frozen=True)
class Curve:
    """A time-indexed macroscopic observable with provenance metadata."""

    times: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)
    name: str = "f"

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if np.any(np.diff(t) < 0):
            raise ValueError("times must be ordered")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return int(self.times.size)

    def reversed(self) -> "Curve":
        """The time reversal g(t) = f(tau - t) on the same grid."""
        tau = self.times[-1] + self.times[0]
        meta = dict(self.meta, reversed=not self.meta.get("reversed", False))
        return Curve(tau - self.times[::-1], self.values[::-1].copy(), meta, self.name + "_R"
                     if not self.name.endswith("_R") else self.name[:-2])
