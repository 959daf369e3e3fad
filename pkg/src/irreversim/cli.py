"""Command-line experiment runner.

    irreversim run <experiment> [flags]
    irreversim <experiment> [flags]

Each run writes a CSV of result rows and a JSON summary (schema tag, config
echo, summary statistics, wall-clock).  ``--plots`` adds two-column data files
and a static SVG per curve.  Exit codes: 0 success, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Callable

import numpy as np

from . import ehrenfest as eh
from . import ergodic as erg
from . import kac
from . import largedev as ld
from . import modified_ehrenfest as me
from . import randomness as rnd
from .seqcore import (
    FAIR,
    BernoulliPrior,
    BitString,
    Curve,
    Cylinder,
    SeededBitSource,
    all_strings,
    derive_seed,
    running_means,
)

SCHEMA_VERSION = "irreversim.run/1"
OUT_ENV = "IRREVERSIM_OUT"
EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 2, 3

log = logging.getLogger("irreversim")

EXPERIMENTS = (
    "coin-lln",
    "largedev-verify",
    "randomness-report",
    "ehrenfest",
    "modified-ehrenfest",
    "kac-ring",
    "kac-chain",
    "ergodic-suite",
)


class UsageError(ValueError):
    pass


# defaults that differ between experiments; anything absent falls back to the field default
_DEFAULTS = {
    "coin-lln": dict(n=100_000),
    "largedev-verify": dict(n=256, eps=0.1),
    "randomness-report": dict(n=1 << 14, trials=10, block_k=2),
    "ehrenfest": dict(n=100, tau=5.0, f0=1.0, trials=200),
    "modified-ehrenfest": dict(n=4096, tau=10, p=0.25, alpha=0.9, trials=1000, m=10),
    "kac-ring": dict(l=1001, t=20, alpha=0.9, beta=0.25, trials=1000, m=10),
    "kac-chain": dict(n=50_000, t=10, alpha=0.9, beta=0.25, trials=1000, m=10),
    "ergodic-suite": dict(n=50_000, t=5, alpha=0.9, beta=0.25, trials=20),
}


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    seed: int = 0
    n: int | None = None
    l: int | None = None
    tau: float | None = None
    t: int | None = None
    p: float | None = None
    alpha: float | None = None
    beta: float | None = None
    m: int | None = None
    trials: int | None = None
    block_k: int | None = None
    f0: float | None = None
    eps: float | None = None
    q1: float = 0.5
    grid: tuple = ()
    sample_fraction: bool = False
    out_dir: str | None = None
    csv_path: str | None = None
    summary_path: str | None = None
    plots: bool = False

    def resolved(self) -> "ExperimentConfig":
        """Fill unset parameters with the experiment's defaults and validate."""
        if self.experiment not in EXPERIMENTS:
            raise UsageError(f"unknown experiment {self.experiment!r}")
        vals = asdict(self)
        for k, v in _DEFAULTS[self.experiment].items():
            if vals[k] is None:
                vals[k] = v
        if vals["out_dir"] is None:
            vals["out_dir"] = os.environ.get(OUT_ENV, ".")
        vals["grid"] = tuple(vals["grid"])
        cfg = ExperimentConfig(**vals)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if not 0 <= self.seed < 1 << 64:
            raise UsageError("seed must lie in [0, 2^64)")
        for name in ("alpha", "beta", "f0", "q1"):
            v = getattr(self, name)
            if v is not None and not 0 <= v <= 1:
                raise UsageError(f"{name} must lie in [0, 1], got {v}")
        if self.p is not None and not 0 < self.p < 0.5:
            raise UsageError(f"p must lie in (0, 1/2), got {self.p}")
        if self.eps is not None and not 0 < self.eps < 1:
            raise UsageError(f"eps must lie in (0, 1), got {self.eps}")
        for name in ("n", "l", "m", "trials", "block_k"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise UsageError(f"{name} must be positive, got {v}")
        for name in ("t", "tau"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise UsageError(f"{name} must be nonnegative, got {v}")
        if self.l is not None and self.l % 2 == 0:
            raise UsageError(f"l must be odd, got {self.l}")
        if any(g < 1 for g in self.grid):
            raise UsageError("grid sizes must be positive")

    def echo(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(self).items()}

    @property
    def csv_file(self) -> Path:
        return Path(self.csv_path or Path(self.out_dir) / f"{self.experiment}.csv")

    @property
    def summary_file(self) -> Path:
        return Path(self.summary_path or Path(self.out_dir) / f"{self.experiment}.json")


@dataclass
class RunRecord:
    config: ExperimentConfig
    header: list[str]
    rows: list[list]
    summary: dict = field(default_factory=dict)
    curves: list[Curve] = field(default_factory=list)
    wall_clock: float = 0.0

    def as_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "config": self.config.echo(),
            "columns": self.header,
            "n_rows": len(self.rows),
            "summary": _jsonable(self.summary),
            "wall_clock_seconds": self.wall_clock,
        }


# ---------------------------------------------------------------------------
# formatting


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, Fraction):
        v = float(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else fmt(v)
    return v


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# experiments


def _checkpoints(n: int) -> list[int]:
    pts = sorted({1 << k for k in range(n.bit_length()) if 1 << k <= n} | {n})
    return pts


def run_coin_lln(cfg: ExperimentConfig) -> RunRecord:
    bits = SeededBitSource(cfg.seed).bits(cfg.n)
    means = running_means(bits)
    pts = _checkpoints(cfg.n)
    rows = [[N, means[N - 1]] for N in pts]
    final = float(abs(means[-1] - 0.5))
    summary = {
        "N": cfg.n,
        "S_N": float(means[-1]),
        "abs_deviation": final,
        "bound_5_over_sqrtN": 5 / math.sqrt(cfg.n),
        "within_bound": final <= 5 / math.sqrt(cfg.n),
    }
    curve = Curve(np.array(pts, float), means[np.array(pts) - 1], {"seed": cfg.seed}, name="S_N")
    return RunRecord(cfg, ["N", "S_N"], rows, summary, [curve])


def run_largedev(cfg: ExperimentConfig) -> RunRecord:
    q1 = Fraction(cfg.q1)
    prior = FAIR if q1 == Fraction(1, 2) else BernoulliPrior(q1)
    eps = Fraction(cfg.eps)
    grid = cfg.grid or range(1, cfg.n + 1)
    table, partial = ld.verify_bound(prior, prior.q1, eps, grid)
    rows = [[r.N, r.exact, r.bound, r.ok] for r in table]
    last = ld.DeviationEvent(table[-1].N, prior.q1, eps, prior)
    summary = {
        "all_ok": all(r.ok for r in table),
        "violations": sum(not r.ok for r in table),
        "partial_sum_exact": float(partial),
        "exponent": last.exponent(),
        "empirical_rate_at_max_N": ld.empirical_rate(last) if table[-1].exact else None,
    }
    return RunRecord(cfg, ["N", "exact", "bound", "ok"], rows, summary)


def run_randomness(cfg: ExperimentConfig) -> RunRecord:
    N = cfg.n
    rows = []
    for i in range(cfg.trials):
        s = derive_seed(cfg.seed, i)
        rep = rnd.deficiency(SeededBitSource(s).bits(N))
        rows.append([s, rep.N, rep.neg_log_prob, rep.k_estimate, rep.deficiency])
    champ = rnd.champernowne_prefix(N)
    controls = {
        "all_zeros": rnd.all_zeros(N),
        "alternating": rnd.alternating(N),
        "champernowne": champ,
    }
    summary = {
        "median_deficiency_fair": float(np.median([r[4] for r in rows])),
        "controls": {
            name: {
                "deficiency": rnd.deficiency(s).deficiency,
                "borel_defect": {k: rnd.borel_defect(s, k) for k in range(1, cfg.block_k + 1)},
            }
            for name, s in controls.items()
        },
    }
    test = rnd.deviation_test(Fraction(1, 10))
    n_max = min(N, 2000)
    summary["solovay_deviation_0.1"] = {
        name: rnd.solovay_membership(test, s, n_max).count for name, s in controls.items()
    }
    summary["solovay_deviation_0.1"]["fair_seed_0"] = rnd.solovay_membership(
        test, SeededBitSource(derive_seed(cfg.seed, 0)), n_max).count
    return RunRecord(cfg, ["seed", "N", "neg_log_prob", "k_estimate", "deficiency"], rows, summary)


def run_ehrenfest(cfg: ExperimentConfig) -> RunRecord:
    N = cfg.n
    times, f_mc, se = eh.monte_carlo_curve(N, cfg.f0, cfg.tau, cfg.trials, cfg.seed)
    k = np.arange(times.size)
    f_avg = eh.average_closed_form(N, cfg.f0, k)
    S = eh.entropy(f_avg)
    dS = eh.entropy_rate(f_avg)
    rows = [[times[i], f_avg[i], f_mc[i], S[i], dS[i]] for i in range(times.size)]
    z = np.abs(f_mc - f_avg) / np.where(se > 0, se, np.inf)
    macro_ok, macro_gap = eh.detailed_balance_check(eh.macro_chain(N), eh.stationary("macro", N))
    summary = {
        "max_abs_mc_gap": float(np.max(np.abs(f_mc - f_avg))),
        "max_standard_errors": float(np.max(z)),
        "max_ode_gap": float(np.max(np.abs(f_avg - eh.ode_solution(cfg.f0, times)))),
        "macro_detailed_balance_violation": float(macro_gap),
    }
    curves = [Curve(times, f_avg, {}, "f_avg"), Curve(times, f_mc, {}, "f_mc")]
    return RunRecord(cfg, ["t", "f_avg", "f_mc", "S", "dSdt"], rows, summary, curves)


def run_modified_ehrenfest(cfg: ExperimentConfig) -> RunRecord:
    params = me.BallChainParams(cfg.p, cfg.alpha)
    tau = int(cfg.tau)
    ens = me.sample_ensemble(params, cfg.n, tau, cfg.seed)
    emp = me.empirical_curve(ens)
    exact = me.mean_curve(params, np.arange(tau + 1))
    z = [r.statistic for r in me.stosszahl_statistic(ens)] + [None] if tau else [None]
    rows = [[t, emp.values[t], exact.values[t], z[t]] for t in range(tau + 1)]
    grid = cfg.grid or (64, 256, 1024, 4096)
    table = []
    for N in grid:
        d = me.deviation_probability(params, N, tau, cfg.m, cfg.trials,
                                     derive_seed(cfg.seed, N), bracket=True)
        table.append({"N": N, "estimate": d.estimate, "stderr": d.stderr,
                      "lower": d.lower, "upper": d.upper})
    fwd, bwd = me.tbe_residuals(exact.values, cfg.p)
    rf, rb = me.reversal_residuals(exact, cfg.p)
    summary = {
        "sup_gap": float(np.max(np.abs(emp.values - exact.values))),
        "bound_4_over_sqrtN": 4 / math.sqrt(cfg.n),
        "deviation_probability": table,
        "forward_curve_residuals": {"forward": float(np.max(np.abs(fwd))),
                                    "backward": float(np.max(np.abs(bwd)))},
        "reversed_curve_residuals": {"forward": float(np.max(np.abs(rf))),
                                     "backward": float(np.max(np.abs(rb)))},
    }
    return RunRecord(cfg, ["t", "f_emp", "f_exact", "z_stoss"], rows, summary, [emp, exact])


def _deviation_fraction(f: np.ndarray, exact: np.ndarray, m: int) -> float:
    return float(np.mean(np.max(np.abs(f - exact[None, :]), axis=1) > 1 / m))


def run_kac_ring(cfg: ExperimentConfig) -> RunRecord:
    f, d = kac.ring_ensemble_curves(cfg.l, cfg.alpha, cfg.beta, cfg.t, cfg.trials, cfg.seed,
                                    stoss=True)
    t = np.arange(cfg.t + 1)
    exact = kac.mean_values(cfg.alpha, cfg.beta, t)
    f_emp = f.mean(axis=0)
    d_mean = d.mean(axis=0)
    rows = [[i, f_emp[i], exact[i], d_mean[i]] for i in t]
    summary = {
        "L": cfg.l,
        "trials": cfg.trials,
        "deviation_probability_sup": _deviation_fraction(f, exact, cfg.m),
        "max_ensemble_gap": float(np.max(np.abs(f_emp - exact))),
        "max_abs_stoss_defect_single": float(np.max(np.abs(d))),
    }
    curves = [Curve(t.astype(float), f_emp, {}, "f_emp"), Curve(t.astype(float), exact, {}, "f_exact")]
    return RunRecord(cfg, ["t", "f_emp", "f_exact", "stoss_defect"], rows, summary, curves)


def run_kac_chain(cfg: ExperimentConfig) -> RunRecord:
    w = kac.KacWindow.sample(cfg.n, cfg.t, cfg.alpha, cfg.beta, cfg.seed)
    t = np.arange(cfg.t + 1)
    exact = kac.mean_values(cfg.alpha, cfg.beta, t)
    f_emp = np.array([kac.window_fraction(w, i) for i in t])
    stoss = [kac.stosszahl_statistic(w, i, cfg.beta, cfg.sample_fraction) for i in t]
    rows = [[i, f_emp[i], exact[i], stoss[i]] for i in t]
    grid = cfg.grid or (50, 200, 800, 3200)
    table = []
    for N in grid:
        d = kac.deviation_probability(cfg.alpha, cfg.beta, N, cfg.t, cfg.m, cfg.trials,
                                      derive_seed(cfg.seed, N))
        table.append({"N": N, "estimate": d.estimate, "stderr": d.stderr})
    summary = {
        "window_sites": 2 * cfg.n + 1,
        "sup_gap": float(np.max(np.abs(f_emp - exact))),
        "bound_4_over_sqrt_sites": 4 / math.sqrt(2 * cfg.n + 1),
        "deviation_probability": table,
    }
    curves = [Curve(t.astype(float), f_emp, {}, "f_emp"), Curve(t.astype(float), exact, {}, "f_exact")]
    return RunRecord(cfg, ["t", "f_emp", "f_exact", "stoss_defect"], rows, summary, curves)


def run_ergodic(cfg: ExperimentConfig) -> RunRecord:
    width1 = [erg.PairCylinder(((ch, 0, b),)) for ch in ("x", "y") for b in (0, 1)]
    cyls = width1 + erg.random_cylinders(cfg.trials, derive_seed(cfg.seed, 1))
    w = erg.window_for(cyls, cfg.n, cfg.t, cfg.alpha, cfg.beta, cfg.seed)
    table = erg.macroscopic_law_suite(w, cfg.t, cfg.n, cyls)
    rows = [[r.cylinder, r.t, r.N, r.empirical, r.exact, r.gap, r.stderr] for r in table]
    src = SeededBitSource(derive_seed(cfg.seed, 2))
    horizon = 2 * cfg.n + 1
    bits = src.bits(horizon + 3)
    birk = {}
    for k in (1, 2, 3):
        for sigma in all_strings(k):
            exp = erg.ErgodicExperiment(bits, Cylinder(sigma), horizon)
            birk[str(sigma)] = {
                "frequency": erg.birkhoff_average(exp),
                "stderr": erg.block_frequency_stderr(sigma, horizon),
            }
    summary = {
        "max_gap": max(r.gap for r in table),
        "bound_8_over_sqrtN": 8 / math.sqrt(cfg.n),
        "birkhoff_fair_source": birk,
        "computability": "alpha and beta are binary64 values, hence computable",
    }
    return RunRecord(cfg, ["cylinder", "t", "N", "empirical", "exact", "gap", "stderr"], rows, summary)


RUNNERS: dict[str, Callable[[ExperimentConfig], RunRecord]] = {
    "coin-lln": run_coin_lln,
    "largedev-verify": run_largedev,
    "randomness-report": run_randomness,
    "ehrenfest": run_ehrenfest,
    "modified-ehrenfest": run_modified_ehrenfest,
    "kac-ring": run_kac_ring,
    "kac-chain": run_kac_chain,
    "ergodic-suite": run_ergodic,
}


def execute(cfg: ExperimentConfig) -> RunRecord:
    """Dispatch to the owning module without touching the filesystem."""
    cfg = cfg.resolved()
    t0 = time.perf_counter()
    rec = RUNNERS[cfg.experiment](cfg)
    rec.wall_clock = time.perf_counter() - t0
    return rec


def write_record(rec: RunRecord) -> list[Path]:
    cfg = rec.config
    paths = [cfg.csv_file, cfg.summary_file]
    for p in paths:
        p.parent.mkdir(parents=True, exist_ok=True)
    with open(cfg.csv_file, "w", newline="", encoding="utf-8") as fh:
        fh.write(csv_text(rec.header, rec.rows))
    with open(cfg.summary_file, "w", encoding="utf-8") as fh:
        json.dump(rec.as_json(), fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")
    if cfg.plots:
        paths += emit_plotdata(rec, Path(cfg.out_dir) / f"{cfg.experiment}-plots")
    return paths


def run(cfg: ExperimentConfig) -> RunRecord:
    """Run one experiment and persist its CSV rows and JSON summary."""
    rec = execute(cfg)
    write_record(rec)
    return rec


# ---------------------------------------------------------------------------
# plot data


def svg_line_chart(curve: Curve, width: int = 480, height: int = 320) -> str:
    """Minimal static SVG; coordinates are rounded so output is byte-stable."""
    t = np.asarray(curve.times, float)
    v = np.asarray(curve.values, float)
    ok = np.isfinite(v)
    t, v = t[ok], v[ok]
    pad = 40
    t0, t1 = (float(t.min()), float(t.max())) if t.size else (0.0, 1.0)
    v0, v1 = (float(v.min()), float(v.max())) if v.size else (0.0, 1.0)
    if t1 == t0:
        t1 = t0 + 1
    if v1 == v0:
        v0, v1 = v0 - 0.5, v1 + 0.5
    xs = pad + (t - t0) / (t1 - t0) * (width - 2 * pad)
    ys = height - pad - (v - v0) / (v1 - v0) * (height - 2 * pad)
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" '
        f'fill="none" stroke="#888"/>\n'
        f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{pts}"/>\n'
        f'<text x="{pad}" y="{pad - 10}" font-size="12">{curve.name}</text>\n'
        f'<text x="{pad}" y="{height - 10}" font-size="10">t: {t0:.6g} .. {t1:.6g}</text>\n'
        f'<text x="{width - pad}" y="{height - 10}" font-size="10" text-anchor="end">'
        f"value: {v0:.6g} .. {v1:.6g}</text>\n"
        "</svg>\n"
    )


def emit_plotdata(rec: RunRecord, out_dir: str | Path) -> list[Path]:
    """Write <name>.dat (t value) and <name>.svg per curve; no-op with a warning if empty."""
    if not rec.curves:
        log.warning("record has no curves; nothing to plot")
        return []
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for i, c in enumerate(rec.curves):
        stem = c.name or f"curve{i}"
        dat = out / f"{stem}.dat"
        with open(dat, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("# t value\n")
            for t, v in zip(c.times, c.values):
                fh.write(f"{fmt(t)} {fmt(v)}\n")
        svg = out / f"{stem}.svg"
        svg.write_text(svg_line_chart(c), encoding="utf-8")
        written += [dat, svg]
    return written


# ---------------------------------------------------------------------------
# argument parsing


def _grid(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated integers: {text}") from e


def _seed(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="irreversim",
        description="Seeded experiments on urn models, the Kac ring and randomness diagnostics.",
    )
    ap.add_argument("experiment", choices=EXPERIMENTS)
    ap.add_argument("--seed", type=_seed, default=0, help="64-bit master seed")
    ap.add_argument("--n", type=int, help="sample size / balls / window half-width")
    ap.add_argument("--l", type=int, help="ring length (odd)")
    ap.add_argument("--tau", type=float, help="horizon")
    ap.add_argument("--t", type=int, help="evolution time")
    ap.add_argument("--p", type=float, help="flip probability in (0, 1/2)")
    ap.add_argument("--alpha", type=float, help="initial white/urn-1 probability")
    ap.add_argument("--beta", type=float, help="mark density")
    ap.add_argument("--m", type=int, help="deviation threshold 1/m")
    ap.add_argument("--trials", type=int, help="replicas, paths or cylinders")
    ap.add_argument("--block-k", dest="block_k", type=int, help="largest block length")
    ap.add_argument("--f0", type=float, help="initial urn-1 fraction")
    ap.add_argument("--eps", type=float, help="deviation size")
    ap.add_argument("--q1", type=float, default=0.5, help="prior probability of a 1")
    ap.add_argument("--grid", type=_grid, default=(), help="comma-separated sizes")
    ap.add_argument("--sample-fraction", action="store_true",
                    help="Stosszahl defect against the sampled mark fraction")
    ap.add_argument("--out-dir", dest="out_dir", help=f"default ${OUT_ENV} or .")
    ap.add_argument("--out", dest="csv_path", help="CSV path")
    ap.add_argument("--summary", dest="summary_path", help="JSON summary path")
    ap.add_argument("--plots", action="store_true", help="also write .dat and .svg per curve")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def parse_config(argv: list[str]) -> ExperimentConfig:
    if argv and argv[0] == "run":
        argv = argv[1:]
    ns = vars(build_parser().parse_args(argv))
    ns.pop("verbose")
    return ExperimentConfig(**ns)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.INFO if "-v" in argv or "--verbose" in argv else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = parse_config(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        rec = execute(cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        paths = write_record(rec)
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    for p in paths:
        log.info("wrote %s", p)
    print(json.dumps(_jsonable(rec.summary), sort_keys=True, allow_nan=False))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
