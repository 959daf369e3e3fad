"""Birkhoff averages along the shift, and the Kac chain's macroscopic laws.

Parameters alpha and beta enter as binary64 numbers, i.e. dyadic rationals,
so the computability premises of the effective ergodic theorem hold
trivially; they are recorded in metadata and never checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .kac import KacWindow
from .seqcore import BitLike, Cylinder, SeededBitSource, SplitMix64, as_bits

ENUMERATION_CAP = 24


# ---------------------------------------------------------------------------
# one-sided shift


Event = Union[Cylinder, Sequence[Cylinder], "PairCylinder"]


@dataclass(frozen=True)
class ErgodicExperiment:
    """A time average of an event indicator along the shift.

    one-sided: ``source`` is a SeededBitSource or explicit bits, ``event`` a
    Cylinder or a list of them (union).  two-sided: ``source`` is a KacWindow,
    ``event`` a PairCylinder, observed at evolution time ``t``.
    """

    source: object
    event: Event
    horizon: int
    mode: str = "one-sided"
    t: int = 0

    def __post_init__(self):
        if self.mode not in ("one-sided", "two-sided"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.horizon < 1:
            raise ValueError("horizon must be positive")


def _as_union(event: Event) -> list[Cylinder]:
    return [event] if isinstance(event, Cylinder) else list(event)


def _span(cyls: list[Cylinder]) -> int:
    return max((c.start + len(c) for c in cyls), default=0)


def birkhoff_average(exp: ErgodicExperiment) -> float:
    """N^-1 sum_{n=1..N} 1[S^n s in B] for B a cylinder or finite union of cylinders."""
    if exp.mode == "two-sided":
        return kac_two_sided_average(exp.source, exp.event, exp.t, exp.horizon)
    cyls = _as_union(exp.event)
    N = exp.horizon
    need = N + _span(cyls)  # coordinates 1..N+span-1 plus coordinate 0
    if isinstance(exp.source, SeededBitSource):
        bits = exp.source.bits(need)
    else:
        bits = as_bits(exp.source)
        if bits.size < need:
            raise ValueError(f"source of length {bits.size} is too short for {N} shifts")
    hit = np.zeros(N, dtype=bool)
    for c in cyls:
        hit |= _cylinder_hits(bits, c, N)
    return float(hit.mean())


def _cylinder_hits(bits: np.ndarray, c: Cylinder, N: int) -> np.ndarray:
    """Indicator of S^n s in c for n = 1..N."""
    out = np.ones(N, dtype=bool)
    for j, b in enumerate(c.prefix.bits):
        pos = 1 + c.start + j
        out &= bits[pos: pos + N] == b
    return out


def block_frequency(s: BitLike, sigma: BitLike, N: int) -> float:
    """Sliding-window frequency of ``sigma`` among windows starting at 1..N."""
    bits = as_bits(s)
    pat = as_bits(sigma)
    k = pat.size
    windows = np.lib.stride_tricks.sliding_window_view(bits[1:N + k], k)
    return float(np.all(windows == pat, axis=1).mean())


def block_frequency_stderr(sigma: BitLike, N: int) -> float:
    """Standard error of the sliding block frequency of ``sigma`` under fair coins.

    Windows d < |sigma| apart are dependent; they co-occur with probability
    2^-(k+d) when ``sigma`` overlaps itself at lag d and never otherwise.
    """
    pat = as_bits(sigma)
    k = pat.size
    p = 2.0 ** -k
    var = p * (1 - p)
    for d in range(1, k):
        both = 2.0 ** -(k + d) if np.array_equal(pat[d:], pat[:-d]) else 0.0
        var += 2 * (both - p * p)
    return math.sqrt(var / N)


# ---------------------------------------------------------------------------
# two-channel cylinders on the Kac chain


@dataclass(frozen=True, order=True)
class PairCylinder:
    """Finite set of constraints (channel, site, bit) with channel in {'x', 'y'}."""

    constraints: tuple

    def __post_init__(self):
        cons = tuple(sorted((str(ch), int(k), int(b)) for ch, k, b in self.constraints))
        seen = {}
        for ch, k, b in cons:
            if ch not in ("x", "y") or b not in (0, 1):
                raise ValueError(f"bad constraint {(ch, k, b)}")
            if seen.setdefault((ch, k), b) != b:
                raise ValueError(f"contradictory constraints at {ch}{k}")
        object.__setattr__(self, "constraints", tuple(dict.fromkeys(cons)))

    @classmethod
    def of(cls, x: dict | None = None, y: dict | None = None) -> "PairCylinder":
        cons = [("x", k, b) for k, b in (x or {}).items()]
        cons += [("y", k, b) for k, b in (y or {}).items()]
        return cls(tuple(cons))

    def shifted(self, n: int) -> "PairCylinder":
        """S^{-n} U: the same pattern moved n sites to the right."""
        return PairCylinder(tuple((ch, k + n, b) for ch, k, b in self.constraints))

    def positions(self, channel: str) -> list[int]:
        return [k for ch, k, _ in self.constraints if ch == channel]

    @property
    def label(self) -> str:
        return ";".join(f"{ch}{k}={b}" for ch, k, b in self.constraints)


def kac_two_sided_average(w: KacWindow, U: PairCylinder, t: int, N: int | None = None) -> float:
    """(2N+1)^-1 sum_{n=-N..N} 1[phi_t(x, y) in S^{-n} U] along the sampled chain."""
    N = w.N if N is None else N
    ok = np.ones(2 * N + 1, dtype=bool)
    for ch, k, b in U.constraints:
        if ch == "x":
            vals = w.x_at(t, -N + k, N + k)
        else:
            vals = w.y_at(-N + k, N + k)
        ok &= vals == b
    return float(ok.mean())


def _dependency(U: PairCylinder, t: int):
    """Source coordinates (x sites, y sites) that decide phi_t(x, y) in U."""
    xs, ys = set(), set()
    for ch, k, _ in U.constraints:
        if ch == "x":
            xs.add(k - t)
            ys.update(range(k - t, k))
        else:
            ys.add(k)
    return sorted(xs), sorted(ys)


@lru_cache(maxsize=4096)
def _count_table(U: PairCylinder, t: int, cap: int) -> np.ndarray:
    """counts[a, b]: satisfying assignments with a white and b marked source bits."""
    xs, ys = _dependency(U, t)
    nx, ny = len(xs), len(ys)
    K = nx + ny
    if K > cap:
        raise ValueError(f"dependency cone has {K} bits (cap {cap}); use Monte Carlo")
    xpos = {k: j for j, k in enumerate(xs)}
    ypos = {k: nx + j for j, k in enumerate(ys)}
    masks = []
    for ch, k, b in U.constraints:
        if ch == "x":
            m = 1 << xpos[k - t]
            for i in range(k - t, k):
                m |= 1 << ypos[i]
        else:
            m = 1 << ypos[k]
        masks.append((m, b))
    counts = np.zeros((nx + 1) * (ny + 1), dtype=np.int64)
    xmask = np.uint64((1 << nx) - 1)
    block = 1 << 20
    for start in range(0, 1 << K, block):
        a = np.arange(start, min(start + block, 1 << K), dtype=np.uint64)
        ok = np.ones(a.size, dtype=bool)
        for m, b in masks:
            ok &= (np.bitwise_count(a & np.uint64(m)) & 1) == b
        sel = a[ok]
        wx = np.bitwise_count(sel & xmask).astype(np.int64)
        wy = np.bitwise_count(sel >> np.uint64(nx)).astype(np.int64)
        counts += np.bincount(wx * (ny + 1) + wy, minlength=counts.size)
    return counts.reshape(nx + 1, ny + 1)


def exact_pushforward_probability(U: PairCylinder, t: int, alpha: float, beta: float,
                                  cap: int = ENUMERATION_CAP) -> float:
    """P(phi_{-t} U) under i.i.d. Bernoulli(alpha) colours and Bernoulli(beta) marks.

    Exact enumeration over the dependency cone; the count table depends only on
    (U, t), so it is cached and re-weighted for each (alpha, beta).
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    # the probability is shift invariant; normalise so the cache can be shared
    lo = min(k for _, k, _ in U.constraints) if U.constraints else 0
    counts = _count_table(U.shifted(-lo), t, cap)
    nx, ny = counts.shape[0] - 1, counts.shape[1] - 1
    a = np.arange(nx + 1)
    b = np.arange(ny + 1)
    wx = alpha ** a * (1 - alpha) ** (nx - a)
    wy = beta ** b * (1 - beta) ** (ny - b)
    return float(wx @ counts @ wy)


@dataclass(frozen=True)
class LawRow:
    cylinder: str
    t: int
    N: int
    empirical: float
    exact: float
    stderr: float

    @property
    def gap(self) -> float:
        return abs(self.empirical - self.exact)


def macroscopic_law_suite(w: KacWindow, t: int, N: int | None,
                          cylinders: Iterable[PairCylinder]) -> list[LawRow]:
    """Empirical two-sided averages against exact pushforward probabilities."""
    N = w.N if N is None else N
    rows = []
    for U in cylinders:
        emp = kac_two_sided_average(w, U, t, N)
        ex = exact_pushforward_probability(U, t, w.alpha, w.beta)
        rows.append(LawRow(U.label, t, N, emp, ex, math.sqrt(ex * (1 - ex) / (2 * N + 1))))
    return rows


def random_cylinders(count: int, seed: int, max_width: int = 3) -> list[PairCylinder]:
    """Reproducible random two-channel cylinders with sites in [0, max_width)."""
    rng = SplitMix64(seed)
    out = []
    while len(out) < count:
        cons = []
        for ch in ("x", "y"):
            for k in range(max_width):
                r = rng.randbelow(3)  # 0: free, 1: bit 0, 2: bit 1
                if r:
                    cons.append((ch, k, r - 1))
        if cons:
            out.append(PairCylinder(tuple(cons)))
    return out


def window_for(U_list: Iterable[PairCylinder], N: int, t: int, alpha: float, beta: float,
               seed: int) -> KacWindow:
    """A window large enough for two-sided averages of every cylinder in the list."""
    ks = [k for U in U_list for _, k, _ in U.constraints] or [0]
    return KacWindow.sample(N, t, alpha, beta, seed, right=max(max(ks), 0),
                            left=max(-min(ks), 0))
