"""Acceptance suite: one test per numbered criterion, each printing a PASS/FAIL line.

The lines are collected in RESULTS and echoed again in the terminal summary
(see conftest.py), so `pytest -v` shows them even when output is captured.
Run this file directly with python for the lines alone.
"""

import math
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from irreversim import cli
from irreversim import ehrenfest as eh
from irreversim import ergodic as eg
from irreversim import kac
from irreversim import modified_ehrenfest as me
from irreversim.largedev import DeviationEvent, empirical_rate, verify_bound
from irreversim.randomness import all_zeros, borel_defect, champernowne_prefix, deficiency
from irreversim.seqcore import FAIR, BitString, Cylinder, SeededBitSource, SplitMix64

RESULTS: list[str] = []


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_01_coin_lln():
    t0 = time.perf_counter()
    N = 10**6
    gaps = [abs(SeededBitSource(seed).bits(N).mean() - 0.5) for seed in range(100)]
    good = sum(g <= 5 / math.sqrt(N) for g in gaps)
    dt = time.perf_counter() - t0
    report(1, good >= 99 and dt < 10, f"{good}/100 seeds within 5/sqrt(N); {dt:.1f}s")


def test_criterion_02_large_deviations():
    failures = 0
    for eps in ("0.05", "0.1", "0.2", "0.4"):
        rows, _ = verify_bound(FAIR, Fraction(1, 2), Fraction(eps), range(10, 2049))
        failures += sum(not r.ok for r in rows)
    rate_gap = 0.0
    for eps in (0.05, 0.1, 0.2, 0.4):
        ev = DeviationEvent(4096, Fraction(1, 2), Fraction(eps))
        rate_gap = max(rate_gap, abs(empirical_rate(ev) - ev.exponent()))
    report(2, failures == 0 and rate_gap <= 0.05,
           f"{failures} dominance failures over 4x2039 cases; worst rate gap {rate_gap:.4f} nats")


def test_criterion_03_ehrenfest_averages():
    worst = 0.0
    for N in (1, 2, 3, 10, 57, 100, 500, 1000):
        for f0 in (0.0, 0.3, 0.5, 1.0):
            it = eh.average_recursion(N, f0, 10**4)
            cf = eh.average_closed_form(N, f0, np.arange(10**4 + 1))
            worst = max(worst, float(np.max(np.abs(it - cf))))
    mc_ok = True
    zmax = 0.0
    for N in (10, 100):
        times, mean, se = eh.monte_carlo_curve(N, 1.0, 2.0, 10**4, seed=N)
        exact = eh.average_closed_form(N, 1.0, np.arange(times.size))
        gap = np.abs(mean - exact)
        mc_ok &= bool(np.all(gap <= 4 * se + 1e-15))
        zmax = max(zmax, float(np.max(np.where(se > 0, gap / np.where(se > 0, se, 1), 0))))
    t = np.arange(0, 10 + 1e-12, 1e-3)
    h_ok = True
    for f0 in np.round(np.arange(0.1, 1.0, 0.1), 1):
        f = eh.ode_solution(f0, t)
        h_ok &= bool(np.all(eh.entropy_rate(f) >= 0) and np.all(np.diff(eh.entropy(f)) >= -1e-15))
    report(3, worst <= 1e-12 and mc_ok and h_ok,
           f"recursion gap {worst:.2e}; MC max z {zmax:.2f}; H-theorem {'holds' if h_ok else 'violated'}")


def test_criterion_04_detailed_balance():
    worst = Fraction(0)
    for N in range(1, 13):
        ok, w = eh.detailed_balance_check(eh.micro_chain(N), eh.stationary("micro", N))
        worst = max(worst, w)
    for N in range(1, 201):
        ok, w = eh.detailed_balance_check(eh.macro_chain(N), eh.stationary("macro", N))
        worst = max(worst, w)
    report(4, worst <= 1e-12, f"max violation {float(worst):.2e} (micro N<=12, macro N<=200)")


def test_criterion_05_modified_ehrenfest():
    t0 = time.perf_counter()
    P = me.BallChainParams(0.25, 0.9)
    N, tau = 10**4, 10
    exact = me.mean_values(P, np.arange(tau + 1))
    good = sum(
        float(np.max(np.abs(me.empirical_curve(me.sample_ensemble(P, N, tau, seed)).values - exact)))
        <= 4 / math.sqrt(N)
        for seed in range(100)
    )
    grid = (64, 256, 1024, 4096)
    d = [me.deviation_probability(P, n, tau, 10, 4000, seed=n, bracket=True) for n in grid]
    est = [x.estimate for x in d]
    # Monte Carlo with 4000 trials cannot resolve probabilities below ~1/4000
    nonincreasing = all(b <= a for a, b in zip(est, est[1:]))
    strict_nonzero = all(b < a for a, b in zip(est, est[1:]) if a > 0)
    ratios = []
    for (n1, a), (n2, b) in zip(zip(grid, est), zip(grid[1:], est[1:])):
        if a > 0 and b > 0:
            ratios.append((b / a) ** (1 / math.log2(n2 / n1)))
    ratio_ok = all(r < 0.9 for r in ratios)
    # binomial bracket: the true probability at the larger N lies below the one at the smaller N
    certified = all(d2.upper < d1.lower for d1, d2 in zip(d, d[1:]))
    dt = time.perf_counter() - t0
    detail = (f"{good}/100 seeds within 4/sqrt(N); MC estimates {est}; "
              f"per-doubling ratios {[round(r, 3) for r in ratios]}; "
              f"bracket-certified strict decrease {certified}; {dt:.1f}s")
    report(5, good >= 95 and nonincreasing and strict_nonzero and ratio_ok and certified and dt < 60, detail)


def test_criterion_06_time_asymmetry():
    p, tau = 0.25, 10
    curve = me.mean_curve(me.BallChainParams(p, 0.9), np.arange(tau + 1))
    fwd, bwd = me.tbe_residuals(curve.values, p)
    rf, rb = me.reversal_residuals(curve, p)
    ok = (np.max(np.abs(rf)) >= 1e-3 and np.max(np.abs(rb)) <= 1e-12
          and np.max(np.abs(bwd)) >= 1e-3 and np.max(np.abs(fwd)) <= 1e-12)
    report(6, bool(ok), f"reversed: fwd {np.max(np.abs(rf)):.3e}, bwd {np.max(np.abs(rb)):.1e}; "
                        f"forward: fwd {np.max(np.abs(fwd)):.1e}, bwd {np.max(np.abs(bwd)):.3e}")


def test_criterion_07_stosszahl_defects():
    N, p, beta = 4096, 0.25, 0.25
    P = me.BallChainParams(p, 0.9)
    bound_me = 4 * math.sqrt(p * (1 - p) / N)
    good_me = sum(
        all(abs(r.statistic) <= bound_me for r in me.stosszahl_statistic(me.sample_ensemble(P, N, 11, seed)))
        for seed in range(100)
    )
    bound_kac = 4 * math.sqrt(beta * (1 - beta) / (2 * N + 1))
    good_kac = 0
    for seed in range(100):
        w = kac.KacWindow.sample(N, 10, 0.9, beta, seed)
        good_kac += all(abs(kac.stosszahl_statistic(w, t)) <= bound_kac for t in range(11))
    report(7, good_me >= 95 and good_kac >= 95, f"modified {good_me}/100, Kac {good_kac}/100 seeds within bound")


def test_criterion_08_kac_structure():
    t0 = time.perf_counter()
    rng = SplitMix64(8)
    bad = 0
    for i in range(1000):
        # mostly small rings plus a tail up to 10^5 sites
        L = 2 * rng.randbelow(50 if i % 10 else 50_000) + 1
        beta = (1 + rng.randbelow(7)) / 8
        s = kac.sample_ring(L, 0.5, beta, rng.next_u64())
        t = rng.randbelow(2 * L + 1)
        T = kac.time_reverse
        checks = [
            T(T(s)) == s,
            kac.evolve(T(s), t) == T(kac.evolve(s, -t)),
            kac.evolve(s, 2 * L) == s,
            kac.macro(kac.evolve(s, t))[1] == kac.macro(s)[1],
        ]
        small_t = t % 64
        checks.append(kac.evolve(s, small_t, "iterate") == kac.evolve(s, small_t, "closed"))
        bad += not all(checks)
    dt = time.perf_counter() - t0
    report(8, bad == 0 and dt < 10, f"{bad} failing states of 1000; {dt:.1f}s")


def test_criterion_09_kac_boltzmann():
    N, tmax = 50_000, 10
    exact = kac.mean_values(0.9, 0.25, np.arange(tmax + 1))
    bound = 4 / math.sqrt(2 * N + 1)
    good = 0
    for seed in range(100):
        w = kac.KacWindow.sample(N, tmax, 0.9, 0.25, seed)
        f = np.array([kac.window_fraction(w, t) for t in range(tmax + 1)])
        good += bool(np.all(np.abs(f - exact) <= bound))
    grid = (50, 200, 800, 3200)
    est = [kac.deviation_probability(0.9, 0.25, n, tmax, 10, 1000, seed=n).estimate for n in grid]
    decreasing = all(b <= a for a, b in zip(est, est[1:])) and est[-1] < est[0]
    report(9, good >= 95 and decreasing, f"{good}/100 windows of {2 * N + 1} sites within bound; "
                                         f"deviation estimates {est}")


def test_criterion_10_ergodic():
    white = eg.PairCylinder.of(x={0: 1})
    worst = 0.0
    for alpha in np.linspace(0, 1, 5):
        for beta in np.linspace(0, 1, 5):
            for t in range(20):
                got = eg.exact_pushforward_probability(white, t, alpha, beta)
                worst = max(worst, abs(got - kac.mean_values(alpha, beta, t)))
    w = kac.KacWindow.sample(2000, 8, 0.9, 0.25, seed=10)
    two_sided = all(eg.kac_two_sided_average(w, white, t) == kac.window_fraction(w, t) for t in range(9))
    N = 10**6
    src = SeededBitSource(10)
    bits = src.bits(N + 4)
    zmax = 0.0
    for k in (1, 2, 3):
        for word in product("01", repeat=k):
            sigma = "".join(word)
            freq = eg.birkhoff_average(eg.ErgodicExperiment(bits, Cylinder(BitString(sigma)), N))
            zmax = max(zmax, abs(freq - 2.0**-k) / eg.block_frequency_stderr(sigma, N))
    report(10, worst <= 1e-12 and two_sided and zmax <= 4,
           f"pushforward gap {worst:.1e}; two-sided equals f_N(t) {two_sided}; "
           f"max |z| over 14 blocks {zmax:.2f}")


def test_criterion_11_randomness_controls():
    N = 2**16
    d_zero = deficiency(all_zeros(N)).deficiency
    c = champernowne_prefix(N)
    d_champ = deficiency(c).deficiency
    b1, b2 = borel_defect(c, 1), borel_defect(c, 2)
    fair = float(np.median([deficiency(SeededBitSource(seed).bits(N)).deficiency for seed in range(100)]))
    parts = {
        "zeros": d_zero >= 0.5 * N,
        "champernowne deficiency": d_champ >= 0.25 * N,
        "champernowne borel": b1 <= 0.05 and b2 <= 0.05,
        "fair median": fair <= 0.15 * N,
    }
    report(11, all(parts.values()),
           f"zeros {d_zero} (>= {N // 2}); champernowne {d_champ} (needs >= {N // 4}); "
           f"borel k=1 {b1:.4f}, k=2 {b2:.4f}; fair median {fair:.0f}; "
           f"failed: {[k for k, v in parts.items() if not v] or 'none'}")


def test_criterion_12_determinism(tmp_path):
    differing = []
    for exp in cli.EXPERIMENTS:
        blobs = []
        for run in ("a", "b"):
            path = tmp_path / f"{exp}-{run}.csv"
            assert cli.main([exp, "--seed", "12", "--out", str(path), "--out-dir", str(tmp_path)]) == 0
            blobs.append(path.read_bytes())
        if blobs[0] != blobs[1]:
            differing.append(exp)
    report(12, not differing, f"{len(cli.EXPERIMENTS) - len(differing)}/{len(cli.EXPERIMENTS)} "
                              f"experiments byte-identical at default sizes")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
