# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
# ---

# %% [markdown]
# # Oscillating spectra away from the highest weight
#
# With d = j - m, the sequence J -> lambda^(J) is no longer monotone once
# d >= 1. At j = 100 it has exactly d strict local minima and d strict local
# maxima. For d = 1 the turning points sit at floor(sqrt(2j)) and
# floor(sqrt(6j)).

# %%
import math

import numpy as np

from orbit_berezin import HalfInt, dominance, oscillation_profile, spectrum

# %%
tj = 200
for d in range(0, 5):
    prof = oscillation_profile(HalfInt(tj), HalfInt(tj - 2 * d))
    print(f"d={d}: minima={prof.minima} maxima={prof.maxima} plateaus={prof.plateaus}")
print("predicted turning points for d=1:", math.isqrt(tj), math.isqrt(3 * tj))

# %% [markdown]
# A coarse text plot of log10(lambda) for d = 2, sampled every 8th J.

# %%
values = np.array([float(v) for v in spectrum(HalfInt(tj), HalfInt(tj - 4)).values])
logs = np.log10(np.maximum(values, 1e-300))
lo = logs[np.isfinite(logs)].min()
for J in range(0, tj + 1, 8):
    bar = int(40 * (logs[J] - lo) / (0 - lo))
    print(f"{J:4d} {'#' * bar}")

# %% [markdown]
# Even with the oscillations, lambda^(1) stays the largest nontrivial
# eigenvalue for the weights checked here.

# %%
print(all(dominance(HalfInt(tj), HalfInt(tj - 2 * d)) for d in range(1, 5)))

# %% [markdown]
# The same data is written as CSV by `orbit-berezin figure1 --j 100 --out DIR`.
