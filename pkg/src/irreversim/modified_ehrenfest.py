"""Modified Ehrenfest model: N independent two-state chains with flip probability p.

Ball n of replica r is driven by the stream
``derive_seed(derive_seed(seed, r), n)``: output 0 decides the initial urn
(Bernoulli(alpha)) and output t + 1 decides whether the ball jumps between
t and t + 1 (Bernoulli(p)).  Enlarging N therefore extends the same path
instead of resampling it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .largedev import DeviationEvent, exact_tail, tail_probability
from .seqcore import BernoulliPrior, Curve, bits_from_u64, derive_seeds, splitmix64_array


@dataclass(frozen=True)
class BallChainParams:
    p: float
    alpha: float

    def __post_init__(self):
        if not 0 < self.p < 0.5:
            raise ValueError(f"p must lie in (0, 1/2), got {self.p}")
        if not 0 <= self.alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    def transition_matrix(self) -> np.ndarray:
        p = self.p
        return np.array([[1 - p, p], [p, 1 - p]])


@dataclass(frozen=True)
class PathEnsemble:
    """X[t, n] for t = 0..tau and n < N, with the jumps that produced it."""

    X: np.ndarray
    params: BallChainParams | None = None
    seed: int | None = None

    @property
    def N(self) -> int:
        return self.X.shape[1]

    @property
    def tau(self) -> int:
        return self.X.shape[0] - 1

    @property
    def jumps(self) -> np.ndarray:
        """Y[t, n] = X[t, n] XOR X[t+1, n] for t < tau."""
        return self.X[1:] ^ self.X[:-1]


def _replica_paths(params: BallChainParams, N: int, tau: int, replica_seeds) -> np.ndarray:
    """Paths for several replicas at once: shape (replicas, tau + 1, N)."""
    ball_seeds = derive_seeds(np.asarray(replica_seeds, np.uint64)[:, None],
                              np.arange(N, dtype=np.uint64)[None, :])
    x0 = bits_from_u64(splitmix64_array(ball_seeds, 0), params.alpha)
    X = np.empty((len(ball_seeds), tau + 1, N), dtype=np.uint8)
    X[:, 0] = x0
    if tau:
        k = np.arange(1, tau + 1, dtype=np.uint64)[None, :, None]
        J = bits_from_u64(splitmix64_array(ball_seeds[:, None, :], k), params.p)
        X[:, 1:] = np.bitwise_xor.accumulate(J, axis=1) ^ x0[:, None, :]
    return X


def sample_ensemble(params: BallChainParams, N: int, tau: int, seed: int) -> PathEnsemble:
    if N < 1 or tau < 0:
        raise ValueError("need N >= 1 and tau >= 0")
    X = _replica_paths(params, N, tau, derive_seeds(seed, np.array([0], np.uint64)))[0]
    return PathEnsemble(X, params, seed)


def empirical_curve(ens: PathEnsemble) -> Curve:
    """f_N(t) = N^-1 sum_n X_n(t)."""
    t = np.arange(ens.tau + 1)
    meta = {"model": "modified-ehrenfest", "N": ens.N, "seed": ens.seed}
    if ens.params is not None:
        meta.update(p=ens.params.p, alpha=ens.params.alpha)
    return Curve(t, ens.X.mean(axis=1), meta, name="f_emp")


def mean_values(params: BallChainParams, t) -> np.ndarray:
    return 0.5 + (params.alpha - 0.5) * (1.0 - 2.0 * params.p) ** np.asarray(t)


def mean_curve(params: BallChainParams, t_grid) -> Curve:
    """f(t) = 1/2 + (alpha - 1/2)(1 - 2p)^t at integer times."""
    t = np.asarray(t_grid)
    if np.any(t < 0) or np.any(t != np.floor(t)):
        raise ValueError("times must be nonnegative integers")
    return Curve(t, mean_values(params, t),
                 {"model": "modified-ehrenfest", "p": params.p, "alpha": params.alpha},
                 name="f_exact")


def mean_recursion(params: BallChainParams, tau: int) -> np.ndarray:
    out = np.empty(tau + 1)
    f = params.alpha
    for t in range(tau + 1):
        out[t] = f
        f = f + params.p * (1 - 2 * f)
    return out


@dataclass(frozen=True)
class DeviationEstimate:
    N: int
    estimate: float
    stderr: float
    hits: int
    trials: int
    lower: float | None = None  # binomial: max_t P(|f_N(t) - f(t)| > 1/m)
    upper: float | None = None  # binomial: sum_t P(|f_N(t) - f(t)| > 1/m)


def per_time_tails(params: BallChainParams, N: int, tau: int, m: int, exact: bool = False):
    """P(|f_N(t) - f(t)| > 1/m) for each t; N f_N(t) is Binomial(N, f(t)).

    ``exact=True`` returns rationals from the integer enumeration (slow for large N).
    """
    out = []
    for t in range(tau + 1):
        f = float(mean_values(params, t))
        ev = DeviationEvent(N, Fraction(f), Fraction(1, m), BernoulliPrior(Fraction(f)))
        out.append(exact_tail(ev) if exact else tail_probability(ev))
    return out


def deviation_probability(
    params: BallChainParams,
    N: int,
    tau: int,
    m: int,
    trials: int,
    seed: int,
    sup: bool = True,
    bracket: bool = False,
    chunk_elems: int = 1 << 22,
) -> DeviationEstimate:
    """Monte Carlo estimate of P(W_N(m)), W_N(m) = { sup_t |f_N(t) - f(t)| > 1/m }.

    With ``sup=False`` the event is taken at the single time ``tau``.  With
    ``bracket=True`` the exact per-time binomial tails give the bracket
    max_t P_t <= P(W_N(m)) <= sum_t P_t.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if m < 1:
        raise ValueError("m must be a positive integer")
    f = mean_values(params, np.arange(tau + 1))
    thr = 1.0 / m
    chunk = max(1, chunk_elems // (N * (tau + 1)))
    hits = 0
    replicas = derive_seeds(seed, np.arange(trials, dtype=np.uint64))
    for r0 in range(0, trials, chunk):
        X = _replica_paths(params, N, tau, replicas[r0:r0 + chunk])
        fN = X.sum(axis=2, dtype=np.int64) / N
        dev = np.abs(fN - f[None, :])
        d = dev.max(axis=1) if sup else dev[:, -1]
        hits += int(np.count_nonzero(d > thr))
    est = hits / trials
    se = math.sqrt(est * (1 - est) / trials)
    lower = upper = None
    if bracket:
        tails = per_time_tails(params, N, tau, m)
        if not sup:
            tails = tails[-1:]
        lower = float(max(tails))
        upper = float(min(sum(tails), 1))
    return DeviationEstimate(N, est, se, hits, trials, lower, upper)


@dataclass(frozen=True)
class StosszahlReport:
    t: int
    statistic: float
    scale: float


def stosszahl_statistic(ens: PathEnsemble, p: float | None = None) -> list[StosszahlReport]:
    """Z_N(t) = N^-1 sum_n X_n(t) (Y_n(t) - p) for t < tau."""
    if ens.tau < 1:
        raise ValueError("need tau >= 1")
    if p is None:
        if ens.params is None:
            raise ValueError("flip probability p is required")
        p = ens.params.p
    X = ens.X[:-1].astype(float)
    Z = (X * (ens.jumps - p)).mean(axis=1)
    scale = 1 / math.sqrt(ens.N)
    return [StosszahlReport(t, float(z), scale) for t, z in enumerate(Z)]


def tbe_residuals(values, p: float):
    """Defects of a discrete curve g against g(t+1) = g(t) + p(1 - 2g(t)) and its inverse.

    forward:  g(t+1) - g(t) - p(1 - 2 g(t))
    backward: g(t) - g(t+1) - p(1 - 2 g(t+1))
    """
    g = np.asarray(values, dtype=float)
    fwd = g[1:] - g[:-1] - p * (1 - 2 * g[:-1])
    bwd = g[:-1] - g[1:] - p * (1 - 2 * g[1:])
    return fwd, bwd


def reversal_residuals(curve: Curve, p: float):
    """Residuals of the time-reversed curve g(t) = curve(tau - t)."""
    if len(curve) < 2:
        raise ValueError("need tau >= 1")
    return tbe_residuals(curve.values[::-1], p)


@dataclass(frozen=True)
class VarianceDecomposition:
    var_mean: float      # Var(S_N) across replicas
    sigma2: float        # Var(X_1)
    rho: float           # Cov(X_1, X_2)
    predicted: float     # sigma2 / N + (1 - 1/N) rho

    @property
    def gap(self) -> float:
        return abs(self.var_mean - self.predicted)


def exchangeable_variance(X0: np.ndarray) -> VarianceDecomposition:
    """Compare Var(S_N) with sigma^2/N + (1 - 1/N) rho across replica rows of X0.

    ``X0`` has shape (replicas, N).  sigma^2 = Var(X_1) and rho = Cov(X_1, X_2)
    are estimated from the first two balls only, so the gap is a genuine
    statistical discrepancy rather than an algebraic identity.
    """
    X0 = np.asarray(X0, dtype=float)
    R, N = X0.shape
    if R < 2:
        raise ValueError("need at least two replicas")
    if N < 2:
        raise ValueError("need at least two balls")
    var_mean = float(X0.mean(axis=1).var(ddof=1))
    cov = np.cov(X0[:, 0], X0[:, 1], ddof=1)
    sigma2, rho = float(cov[0, 0]), float(cov[0, 1])
    predicted = sigma2 / N + (1 - 1 / N) * rho
    return VarianceDecomposition(var_mean, sigma2, rho, predicted)


def initial_replicas(params: BallChainParams, N: int, replicas: int, seed: int) -> np.ndarray:
    """X(0) for several independent replicas, shape (replicas, N)."""
    return _replica_paths(params, N, 0, derive_seeds(seed, np.arange(replicas, dtype=np.uint64)))[:, 0]
