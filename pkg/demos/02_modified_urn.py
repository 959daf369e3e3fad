"""Independent flipping balls: concentration of the urn fraction and its decay rate."""
# %%
import numpy as np

from irreversim import modified_ehrenfest as me

params = me.BallChainParams(p=0.25, alpha=0.9)
tau = 10

# %% one large ensemble tracks the deterministic curve
ens = me.sample_ensemble(params, 4096, tau, seed=3)
emp = me.empirical_curve(ens).values
exact = me.mean_values(params, np.arange(tau + 1))
print("t  empirical  exact")
for t in range(tau + 1):
    print(f"{t:2d} {emp[t]:.4f}    {exact[t]:.4f}")

# %% the chance of a visible deviation shrinks fast with N
for N in (64, 256, 1024):
    d = me.deviation_probability(params, N, tau, m=10, trials=2000, seed=N, bracket=True)
    print(f"N={N:5d}  estimate={d.estimate:.4f}  bracket=[{d.lower:.2e}, {d.upper:.2e}]")

# %% balls entering and leaving urn 1 are uncorrelated with the current occupancy
z = [r.statistic for r in me.stosszahl_statistic(ens)]
print("largest |Z|:", f"{max(map(abs, z)):.4f}", "scale 1/sqrt(N):", 1 / 64)

# %% the forward curve solves the forward recursion; its reversal only the backward one
curve = me.mean_curve(params, np.arange(tau + 1))
fwd, bwd = me.tbe_residuals(curve.values, params.p)
rf, rb = me.reversal_residuals(curve, params.p)
print(f"forward curve: {np.max(np.abs(fwd)):.1e} / {np.max(np.abs(bwd)):.3f}")
print(f"reversed curve: {np.max(np.abs(rf)):.3f} / {np.max(np.abs(rb)):.1e}")
