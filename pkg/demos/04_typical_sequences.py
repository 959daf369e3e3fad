"""Typical coin sequences: law of large numbers, tail bounds, compressibility, block counts."""
# %%
from fractions import Fraction

import numpy as np

from irreversim import ergodic as eg
from irreversim.largedev import DeviationEvent, cramer_bound, exact_tail
from irreversim.randomness import alternating, champernowne_prefix, deficiency
from irreversim.seqcore import BitString, Cylinder, SeededBitSource

# %% running means settle at 1/2
bits = SeededBitSource(2024).bits(10**6)
for N in (10, 1000, 10**6):
    print(f"N={N:8d}  mean={bits[:N].mean():.5f}")

# %% exact tails sit under the exponential bound
for N in (10, 100, 1000):
    ev = DeviationEvent(N, Fraction(1, 2), Fraction(1, 10))
    print(f"N={N:5d}  exact={float(exact_tail(ev)):.3e}  bound={cramer_bound(ev):.3e}")

# %% compression separates patterned strings from coin flips
N = 2**14
for name, s in [("coin", SeededBitSource(1).bits(N)), ("alternating", alternating(N)),
                ("champernowne", champernowne_prefix(N))]:
    print(f"{name:13s} deficiency {deficiency(s).deficiency:7d}")

# %% every short block shows up with its fair frequency
for sigma in ("0", "11", "010"):
    freq = eg.birkhoff_average(eg.ErgodicExperiment(bits, Cylinder(BitString(sigma)), 10**6 - 4))
    print(f"{sigma:4s} {freq:.5f}  expected {2.0 ** -len(sigma):.5f}")
