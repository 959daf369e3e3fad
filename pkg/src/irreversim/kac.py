"""Kac ring (periodic, length L odd) and Kac chain (windowed integer lattice).

Colours ``x`` (1 = white) move one site per step and flip when they leave a
marked site (``y = 1``).  Site indices on the ring are taken mod L.

Two independent evaluation routes are kept side by side:

* ``PackedRing`` stores each configuration as one Python int and iterates
  the rotate-and-XOR update on machine words;
* ``evolve_closed`` uses the product formula x_n(t) = x_{n-t} XOR y_{n-t}
  XOR ... XOR y_{n-1} through a prefix-XOR table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .seqcore import (
    BitLike,
    Curve,
    as_bits,
    bits_from_u64,
    derive_seed,
    derive_seeds,
    splitmix64_array,
    zigzag,
)

COLOUR_STREAM = 0
MARK_STREAM = 1


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.uint8)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class KacRingState:
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x, y = _frozen(as_bits(self.x)), _frozen(as_bits(self.y))
        if x.size != y.size:
            raise ValueError("colour and mark strings must have equal length")
        if x.size % 2 == 0:
            raise ValueError("ring length must be odd (L = 2N + 1)")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_strings(cls, x: BitLike, y: BitLike) -> "KacRingState":
        return cls(as_bits(x), as_bits(y))

    @property
    def L(self) -> int:
        return int(self.x.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KacRingState):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y)

    def __hash__(self):
        return hash((self.x.tobytes(), self.y.tobytes()))


@dataclass(frozen=True, eq=False)
class SpinState:
    eta: np.ndarray
    eps: np.ndarray


def to_spins(s: KacRingState) -> SpinState:
    """eta = 2x - 1, eps = 1 - 2y."""
    return SpinState(2 * s.x.astype(np.int8) - 1, 1 - 2 * s.y.astype(np.int8))


def from_spins(sp: SpinState) -> KacRingState:
    eta, eps = np.asarray(sp.eta), np.asarray(sp.eps)
    if not (np.isin(eta, (-1, 1)).all() and np.isin(eps, (-1, 1)).all()):
        raise ValueError("spins must be +-1")
    return KacRingState((eta + 1) // 2, (1 - eps) // 2)


def spin_step(sp: SpinState) -> SpinState:
    """eta'_n = eta_{n-1} eps_{n-1}."""
    return SpinState(np.roll(sp.eta * sp.eps, 1), sp.eps)


# ---------------------------------------------------------------------------
# dynamics on numpy arrays


def step(s: KacRingState) -> KacRingState:
    """x'_n = x_{n-1} XOR y_{n-1}; marks unchanged."""
    return KacRingState(np.roll(s.x ^ s.y, 1), s.y)


def inverse_step(s: KacRingState) -> KacRingState:
    """x_n = x'_{n+1} XOR y_n."""
    return KacRingState(np.roll(s.x, -1) ^ s.y, s.y)


def _cyclic_prefix(y: np.ndarray) -> np.ndarray:
    """P[i] = XOR of y2[0:i] over the doubled ring y2 = y y; length 2L + 1."""
    P = np.zeros(2 * y.size + 1, dtype=np.uint8)
    np.bitwise_xor.accumulate(np.concatenate([y, y]), out=P[1:])
    return P


def evolve_closed(s: KacRingState, t: int) -> KacRingState:
    """phi_t by the prefix-XOR product formula; negative t evolves backwards."""
    L = s.L
    n = np.arange(L)
    q, r = divmod(abs(t), L)
    P = _cyclic_prefix(s.y)
    parity = int(P[L]) & (q & 1)  # full turns contribute the total mark parity q times
    if t >= 0:
        # x_{n-t} XOR y_{n-t} ... y_{n-1}
        a = n - r + L
        window = P[a + r] ^ P[a]
        src = (n - r) % L
    else:
        # x_{n+|t|} XOR y_n ... y_{n+|t|-1}
        window = P[n + r] ^ P[n]
        src = (n + r) % L
    return KacRingState(s.x[src] ^ window ^ parity, s.y)


class PackedRing:
    """Bit-packed ring: bit n of ``X``/``Y`` is x_n/y_n."""

    __slots__ = ("L", "X", "Y", "_mask", "_top")

    def __init__(self, L: int, X: int, Y: int):
        self.L = L
        self.X = X
        self.Y = Y
        self._mask = (1 << L) - 1
        self._top = L - 1

    @classmethod
    def from_state(cls, s: KacRingState) -> "PackedRing":
        def pack(a):
            return int.from_bytes(np.packbits(a, bitorder="little").tobytes(), "little")
        return cls(s.L, pack(s.x), pack(s.y))

    def to_state(self) -> KacRingState:
        def unpack(v):
            raw = np.frombuffer(v.to_bytes((self.L + 7) // 8, "little"), dtype=np.uint8)
            return np.unpackbits(raw, bitorder="little")[: self.L]
        return KacRingState(unpack(self.X), unpack(self.Y))

    def step(self, t: int = 1) -> "PackedRing":
        X, Y, mask, top = self.X, self.Y, self._mask, self._top
        for _ in range(t):
            z = X ^ Y
            X = ((z << 1) | (z >> top)) & mask
        self.X = X
        return self

    def inverse_step(self, t: int = 1) -> "PackedRing":
        X, Y, top = self.X, self.Y, self._top
        for _ in range(t):
            X = ((X >> 1) | ((X & 1) << top)) ^ Y
        self.X = X
        return self


def evolve(s: KacRingState, t: int, method: str = "closed") -> KacRingState:
    """phi_t(s). ``method='iterate'`` runs the packed kernel step by step."""
    if method == "closed":
        return evolve_closed(s, t)
    if method == "iterate":
        ring = PackedRing.from_state(s)
        if t >= 0:
            ring.step(t)
        else:
            ring.inverse_step(-t)
        return ring.to_state()
    raise ValueError(f"unknown method {method!r}")


def time_reverse(s: KacRingState) -> KacRingState:
    """T(x, y)(n) = (x_{-n}, y_{-n-1}), indices mod L."""
    n = np.arange(s.L)
    return KacRingState(s.x[(-n) % s.L], s.y[(-n - 1) % s.L])


def macro(s: KacRingState) -> tuple[Fraction, Fraction]:
    """(fraction white, fraction marked)."""
    return (Fraction(int(s.x.sum()), s.L), Fraction(int(s.y.sum()), s.L))


def stosszahl_ring(s: KacRingState, t: int, beta: float, use_sample_fraction: bool = False):
    """L^-1 sum_n x_n(t)(y_n - beta); optionally with the sampled mark fraction."""
    xt = evolve_closed(s, t).x.astype(float)
    b = float(s.y.mean()) if use_sample_fraction else beta
    return float(np.mean(xt * (s.y - b)))


# ---------------------------------------------------------------------------
# mean-field curve


def mean_values(alpha: float, beta: float, t) -> np.ndarray:
    return 0.5 + (alpha - 0.5) * (1.0 - 2.0 * beta) ** np.asarray(t)


def mean_curve(alpha: float, beta: float, t_grid) -> Curve:
    """Average white fraction 1/2 + (alpha - 1/2)(1 - 2 beta)^t; marks average beta."""
    if not (0 <= alpha <= 1 and 0 <= beta <= 1):
        raise ValueError("alpha and beta must lie in [0, 1]")
    t = np.asarray(t_grid)
    return Curve(t, mean_values(alpha, beta, t),
                 {"model": "kac", "alpha": alpha, "beta": beta, "s_mean": beta}, name="f_exact")


def mean_recursion(alpha: float, beta: float, t_max: int) -> np.ndarray:
    out = np.empty(t_max + 1)
    f = alpha
    for t in range(t_max + 1):
        out[t] = f
        f = f + beta * (1 - 2 * f)
    return out


# ---------------------------------------------------------------------------
# seeded sampling


def sample_ring(L: int, alpha: float, beta: float, seed: int) -> KacRingState:
    """Ring with x_n ~ Bernoulli(alpha), y_n ~ Bernoulli(beta) from two derived streams."""
    idx = np.arange(L, dtype=np.uint64)
    x = bits_from_u64(splitmix64_array(derive_seed(seed, COLOUR_STREAM), idx), alpha)
    y = bits_from_u64(splitmix64_array(derive_seed(seed, MARK_STREAM), idx), beta)
    return KacRingState(x, y)


def ring_ensemble_curves(L: int, alpha: float, beta: float, t_max: int, trials: int,
                         seed: int, stoss: bool = False):
    """f_L(t) (and optionally the Stosszahl defect) for rings seeded derive_seed(seed, r)."""
    seeds = derive_seeds(seed, np.arange(trials, dtype=np.uint64))
    idx = np.arange(L, dtype=np.uint64)[None, :]
    x = bits_from_u64(splitmix64_array(derive_seeds(seeds, COLOUR_STREAM)[:, None], idx), alpha)
    y = bits_from_u64(splitmix64_array(derive_seeds(seeds, MARK_STREAM)[:, None], idx), beta)
    f = np.empty((trials, t_max + 1))
    d = np.empty((trials, t_max + 1))
    yc = y - beta
    for t in range(t_max + 1):
        f[:, t] = x.mean(axis=1)
        if stoss:
            d[:, t] = (x * yc).mean(axis=1)
        x = np.roll(x ^ y, 1, axis=1)
    return (f, d) if stoss else f


@dataclass(frozen=True, eq=False)
class KacWindow:
    """Lattice bits x_n, y_n for n in [lo, hi] of an infinite Kac chain sample.

    Bit n of each channel is coordinate zigzag(n) of a seeded stream, so any
    two windows with the same seed agree on their overlap.
    """

    lo: int
    hi: int
    x: np.ndarray
    y: np.ndarray
    N: int
    t_max: int
    alpha: float
    beta: float
    seed: int

    @classmethod
    def sample(cls, N: int, t_max: int, alpha: float, beta: float, seed: int,
               right: int = 0, left: int = 0) -> "KacWindow":
        """Window covering [-N - t_max - left, N + right]."""
        lo, hi = -N - t_max - left, N + right
        x, y = lattice_bits(lo, hi, alpha, beta, seed)
        return cls(lo, hi, _frozen(x), _frozen(y), N, t_max, alpha, beta, seed)

    def x_at(self, t: int, a: int, b: int) -> np.ndarray:
        """x_n(t) for n = a..b, exactly, from the dependency cone inside the window."""
        if t < 0:
            raise ValueError("window evolution is forward only")
        if a - t < self.lo or b > self.hi:
            raise ValueError("halo exhausted")
        P = np.zeros(self.hi - self.lo + 2, dtype=np.uint8)
        np.bitwise_xor.accumulate(self.y, out=P[1:])
        n = np.arange(a, b + 1) - self.lo
        return self.x[n - t] ^ P[n] ^ P[n - t]

    def y_at(self, a: int, b: int) -> np.ndarray:
        if a < self.lo or b > self.hi:
            raise ValueError("halo exhausted")
        return self.y[a - self.lo: b - self.lo + 1]


def lattice_bits(lo: int, hi: int, alpha: float, beta: float, seed: int):
    idx = zigzag(np.arange(lo, hi + 1))
    x = bits_from_u64(splitmix64_array(derive_seed(seed, COLOUR_STREAM), idx), alpha)
    y = bits_from_u64(splitmix64_array(derive_seed(seed, MARK_STREAM), idx), beta)
    return x, y


def window_evolve(w: KacWindow, t: int) -> np.ndarray:
    """x_n(t) for |n| <= N."""
    if t > w.t_max:
        raise ValueError("halo exhausted")
    return w.x_at(t, -w.N, w.N)


def window_fraction(w: KacWindow, t: int) -> float:
    """f_N(t) = (2N+1)^-1 sum_{|n|<=N} x_n(t)."""
    return float(window_evolve(w, t).mean())


def stosszahl_statistic(w: KacWindow, t: int, beta: float | None = None,
                        use_sample_fraction: bool = False) -> float:
    """(2N+1)^-1 sum_{|n|<=N} x_n(t)(y_n - beta)."""
    xt = window_evolve(w, t).astype(float)
    y = w.y_at(-w.N, w.N)
    if use_sample_fraction:
        b = float(y.mean())
    else:
        b = w.beta if beta is None else beta
    return float(np.mean(xt * (y - b)))


@dataclass(frozen=True)
class KacDeviation:
    N: int
    t: int
    estimate: float
    stderr: float
    hits: int
    trials: int


def deviation_probability(alpha: float, beta: float, N: int, t: int, m: int, trials: int,
                          seed: int, sup: bool = False, chunk_elems: int = 1 << 23) -> KacDeviation:
    """Monte Carlo P(U_N(m)), U_N(m) = { |f_N(t) - f(t)| > 1/m } on the Kac chain.

    Replica r uses the lattice sample with seed derive_seed(seed, r).  With
    ``sup=True`` the deviation is maximised over times 0..t.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if m < 1:
        raise ValueError("m must be a positive integer")
    lo, hi = -N - t, N
    width = hi - lo + 1
    idx = zigzag(np.arange(lo, hi + 1))[None, :]
    f = mean_values(alpha, beta, np.arange(t + 1))
    seeds = derive_seeds(seed, np.arange(trials, dtype=np.uint64))
    chunk = max(1, chunk_elems // width)
    hits = 0
    centre = np.arange(-N, N + 1) - lo
    for r0 in range(0, trials, chunk):
        s = seeds[r0:r0 + chunk]
        x = bits_from_u64(splitmix64_array(derive_seeds(s, COLOUR_STREAM)[:, None], idx), alpha)
        y = bits_from_u64(splitmix64_array(derive_seeds(s, MARK_STREAM)[:, None], idx), beta)
        P = np.zeros((len(s), width + 1), dtype=np.uint8)
        np.bitwise_xor.accumulate(y, axis=1, out=P[:, 1:])
        times = range(t + 1) if sup else (t,)
        dev = np.zeros(len(s))
        for tt in times:
            xt = x[:, centre - tt] ^ P[:, centre] ^ P[:, centre - tt]
            dev = np.maximum(dev, np.abs(xt.mean(axis=1) - f[tt]))
        hits += int(np.count_nonzero(dev > 1.0 / m))
    est = hits / trials
    return KacDeviation(N, t, est, math.sqrt(est * (1 - est) / trials), hits, trials)
