"""Ehrenfest urn: the average relaxes monotonically while single paths fluctuate."""
# %%
import numpy as np

from irreversim import ehrenfest as eh

N, tau = 50, 3.0

# %% exact average against Monte Carlo paths, all balls starting in urn 1
times, mc, se = eh.monte_carlo_curve(N, 1.0, tau, paths=2000, seed=1)
exact = eh.average_closed_form(N, 1.0, np.arange(times.size))
for i in range(0, times.size, 25):
    print(f"t={times[i]:5.2f}  exact={exact[i]:.4f}  mc={mc[i]:.4f} +- {se[i]:.4f}")

# %% one path on its own keeps wandering around 1/2
path = eh.simulate_micro_path("1" * N, int(tau * N), seed=7) / N
print("single path, last ten values:", np.round(path[-10:], 2))

# %% entropy of the continuum limit never decreases
t = np.linspace(0, tau, 7)
f = eh.ode_solution(1.0, t)
print("S(t):", np.round(eh.entropy(f), 4))

# %% the same curve run backwards solves the backward equation, not the forward one
r = eh.reversed_curve(1.0, tau, np.linspace(0, tau, 61))
print(f"reversed curve: forward residual {np.max(np.abs(r.forward)):.3f}, "
      f"backward residual {np.max(np.abs(r.backward)):.1e}")

# %% the chain itself is reversible: detailed balance holds exactly
ok, worst = eh.detailed_balance_check(eh.macro_chain(N), eh.stationary("macro", N))
print("detailed balance for the count chain:", ok, worst)
