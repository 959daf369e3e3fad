"""The Ehrenfest urn: micro and macro chains, averages, and the toy Boltzmann ODE."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .seqcore import (
    BitLike,
    BitString,
    Curve,
    SplitMix64,
    as_bits,
    derive_seeds,
    splitmix64_array,
    uniform_indices,
)

# Entropy production at f in {0, 1}, where the log-ratio diverges.
INF_RATE = math.inf
MICRO_ENUM_MAX = 20


@dataclass(frozen=True)
class MarkovSpec:
    """Finite chain on states 0..n_states-1 with sparse row access."""

    n_states: int
    row: Callable[[int], Mapping[int, object]]
    initial: Sequence | None = None
    name: str = ""

    def check_rows(self, tol: float = 1e-12) -> None:
        for x in range(self.n_states):
            total = sum(self.row(x).values())
            if isinstance(total, Fraction) or isinstance(total, int):
                if total != 1:
                    raise ValueError(f"row {x} sums to {total}")
            elif abs(total - 1) > tol:
                raise ValueError(f"row {x} sums to {total}")

    def act(self, mu: Sequence) -> list:
        """mu P, evaluated row by row without storing P."""
        out = [0] * self.n_states
        for x, mx in enumerate(mu):
            if mx:
                for y, pxy in self.row(x).items():
                    out[y] += mx * pxy
        return out


# ---------------------------------------------------------------------------
# micro and macro chains


def micro_step(a: BitLike, rng: SplitMix64) -> BitString:
    """Move one uniformly chosen ball to the other urn."""
    bits = as_bits(a)
    if bits.size == 0:
        raise ValueError("need at least one ball")
    out = bits.copy()
    out[rng.randbelow(bits.size)] ^= 1
    return BitString(out)


def micro_chain(N: int) -> MarkovSpec:
    """Micro chain on 2^N states encoded as integers (bit n = urn of ball n)."""
    if not 1 <= N <= MICRO_ENUM_MAX:
        raise ValueError(f"micro chain enumerated only for 1 <= N <= {MICRO_ENUM_MAX}")
    p = Fraction(1, N)

    def row(a: int) -> dict:
        return {a ^ (1 << n): p for n in range(N)}

    return MarkovSpec(1 << N, row, name=f"ehrenfest-micro(N={N})")


def macro_row(m: int, N: int) -> dict:
    """P_{m,m-1} = m/N, P_{m,m+1} = (N-m)/N."""
    if not 0 <= m <= N:
        raise ValueError(f"m must lie in [0, {N}]")
    out = {}
    if m > 0:
        out[m - 1] = Fraction(m, N)
    if m < N:
        out[m + 1] = Fraction(N - m, N)
    return out


def macro_chain(N: int) -> MarkovSpec:
    return MarkovSpec(N + 1, lambda m: macro_row(m, N), name=f"ehrenfest-macro(N={N})")


def stationary(model: str, N: int) -> list[Fraction]:
    """Flat law 2^-N on microstates or the binomial law on m, as exact rationals."""
    if N < 1:
        raise ValueError("N must be positive")
    if model == "micro":
        if N > MICRO_ENUM_MAX:
            raise ValueError("micro stationary law is enumerated only for small N")
        return [Fraction(1, 1 << N)] * (1 << N)
    if model == "macro":
        return [Fraction(math.comb(N, m), 1 << N) for m in range(N + 1)]
    raise ValueError(f"unknown model {model!r}")


def coarse_grain(a: BitLike) -> int:
    return int(np.count_nonzero(as_bits(a)))


def detailed_balance_check(
    spec: MarkovSpec, pi: Sequence, T: Callable[[int], int] = lambda x: x, tol=1e-12
):
    """Max over (x, y) of |pi_{Ty} P_{Ty,Tx} - pi_x P_{xy}|; returns (ok, violation)."""
    total = sum(pi)
    if any(v < 0 for v in pi) or abs(total - 1) > tol:
        raise ValueError("pi is not a probability distribution")
    rows = {}

    def P(x, y):
        if x not in rows:
            rows[x] = spec.row(x)
        return rows[x].get(y, 0)

    pairs = set()
    for x in range(spec.n_states):
        for y in spec.row(x):
            pairs.add((x, y))
            pairs.add((T(y), T(x)))
    worst = 0
    for x, y in pairs:
        gap = abs(pi[T(y)] * P(T(y), T(x)) - pi[x] * P(x, y))
        if gap > worst:
            worst = gap
    return worst <= tol, worst


# ---------------------------------------------------------------------------
# averages and the limiting ODE


def average_closed_form(N: int, f0: float, steps) -> np.ndarray:
    """f_N(k/N) average = 1/2 + (f0 - 1/2)(1 - 2/N)^k."""
    k = np.asarray(steps)
    return 0.5 + (f0 - 0.5) * (1.0 - 2.0 / N) ** k


def average_recursion(N: int, f0: float, n_steps: int) -> np.ndarray:
    """Iterate f <- f + (1 - 2 f)/N, starting from f0."""
    out = np.empty(n_steps + 1)
    f = float(f0)
    for k in range(n_steps + 1):
        out[k] = f
        f = f + (1.0 - 2.0 * f) / N
    return out


def average_curve(N: int, f0: float, t_grid) -> Curve:
    """Mean fraction in urn 1 at rescaled times t (evaluated at floor(N t))."""
    if not 0 <= f0 <= 1:
        raise ValueError("f0 must lie in [0, 1]")
    t = np.asarray(t_grid, dtype=float)
    k = np.floor(N * t + 1e-9).astype(np.int64)
    return Curve(t, average_closed_form(N, f0, k), {"model": "ehrenfest", "N": N, "f0": f0})


def ode_solution(f0: float, t) -> np.ndarray:
    """f(t) = 1/2 + (f0 - 1/2) e^{-2t}, the solution of df/dt = 1 - 2f."""
    return 0.5 + (f0 - 0.5) * np.exp(-2.0 * np.asarray(t, dtype=float))


def entropy(f):
    """Shannon entropy (nats) of the law with P(1) = f; 0 ln 0 = 0."""
    f = np.asarray(f, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(f > 0, -f * np.log(np.where(f > 0, f, 1.0)), 0.0)
        b = np.where(f < 1, -(1 - f) * np.log(np.where(f < 1, 1 - f, 1.0)), 0.0)
    out = a + b
    return float(out) if out.ndim == 0 else out


def entropy_rate(f):
    """dS/dt = (2f - 1) ln(f / (1 - f)) along df/dt = 1 - 2f; +inf at f in {0, 1}."""
    f = np.asarray(f, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (2 * f - 1) * np.log(f / (1 - f))
    out = np.where((f <= 0) | (f >= 1), INF_RATE, out)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ReversalResiduals:
    """The reversed curve and its defects against the forward and backward ODEs."""

    curve: Curve
    forward: np.ndarray
    backward: np.ndarray


def reversed_curve(f0: float, tau: float, t_grid=None) -> ReversalResiduals:
    """g(t) = f(tau - t) for the ODE solution, with exact derivative residuals.

    forward:  g' - (1 - 2g)      (defect against the toy Boltzmann equation)
    backward: g' + (1 - 2g)      (defect against the reversed equation)
    """
    t = np.linspace(0.0, tau, 101) if t_grid is None else np.asarray(t_grid, float)
    g = ode_solution(f0, tau - t)
    dg = -(1.0 - 2.0 * g)  # d/dt f(tau - t) = -f'(tau - t)
    c = Curve(t, g, {"model": "ehrenfest-ode", "f0": f0, "tau": tau, "reversed": True})
    return ReversalResiduals(c, dg - (1.0 - 2.0 * g), dg + (1.0 - 2.0 * g))


def curve_residuals(curve: Curve):
    """Finite-difference defects of a sampled curve against f' = 1-2f and f' = -(1-2f)."""
    d = np.gradient(curve.values, curve.times, edge_order=2)
    rhs = 1.0 - 2.0 * curve.values
    return d - rhs, d + rhs


# ---------------------------------------------------------------------------
# Monte Carlo


def initial_microstate(N: int, f0: float) -> np.ndarray:
    """Deterministic start: the first round(f0 N) balls in urn 1."""
    m0 = int(round(f0 * N))
    a = np.zeros(N, dtype=np.uint8)
    a[:m0] = 1
    return a


def simulate_micro_paths(N: int, n_steps: int, paths: int, seed: int, a0=None) -> np.ndarray:
    """f_N after each of 0..n_steps single-ball moves, for independent paths.

    Path j draws its ball choices from stream derive_seed(seed, j).
    Returns an array of shape (paths, n_steps + 1).
    """
    a0 = np.zeros(N, dtype=np.uint8) if a0 is None else as_bits(a0)
    if a0.size != N:
        raise ValueError("initial microstate has wrong length")
    seeds = derive_seeds(seed, np.arange(paths, dtype=np.uint64))
    state = np.tile(a0, (paths, 1))
    m = np.full(paths, int(a0.sum()), dtype=np.int64)
    out = np.empty((paths, n_steps + 1))
    out[:, 0] = m / N
    rows = np.arange(paths)
    chunk = 256
    for k0 in range(0, n_steps, chunk):
        k1 = min(k0 + chunk, n_steps)
        idx = uniform_indices(
            splitmix64_array(seeds[:, None], np.arange(k0, k1, dtype=np.uint64)[None, :]), N
        )
        for j, k in enumerate(range(k0, k1)):
            balls = idx[:, j]
            was = state[rows, balls]
            state[rows, balls] = was ^ 1
            m += 1 - 2 * was.astype(np.int64)
            out[:, k + 1] = m / N
    return out


def simulate_micro_path(a0: BitLike, n_steps: int, seed: int) -> np.ndarray:
    """Sequence of macrostates m(X(t)) along one micro path, t = 0..n_steps."""
    state = as_bits(a0).copy()
    N = state.size
    idx = uniform_indices(splitmix64_array(seed, np.arange(n_steps, dtype=np.uint64)), N)
    m = np.empty(n_steps + 1, dtype=np.int64)
    m[0] = int(state.sum())
    cur = m[0]
    for k, b in enumerate(idx):
        cur += 1 - 2 * int(state[b])
        state[b] ^= 1
        m[k + 1] = cur
    return m


def monte_carlo_curve(N: int, f0: float, tau: float, paths: int, seed: int):
    """Times k/N, path-averaged f_N and its standard error up to rescaled time tau."""
    n_steps = int(math.floor(N * tau + 1e-9))
    f = simulate_micro_paths(N, n_steps, paths, seed, initial_microstate(N, f0))
    m = np.rint(f * N).astype(np.int64)  # integer counts keep degenerate steps exact
    times = np.arange(n_steps + 1) / N
    mean = m.sum(axis=0) / (paths * N)
    se = m.std(axis=0, ddof=1) / (N * math.sqrt(paths)) if paths > 1 else np.zeros_like(mean)
    return times, mean, se
