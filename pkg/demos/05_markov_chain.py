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
# # Repeated measurement as a random walk
#
# Measuring the orbit POVM, preparing the corresponding state, and measuring
# again is a Markov chain on the sphere. Its transition kernel is the
# Berezin kernel, so the lag-1 autocorrelation of any degree-1 harmonic
# (here the z coordinate) estimates lambda^(1) = m^2 / (j(j+1)).

# %%
from orbit_berezin import HalfInt, eigenvalue
from orbit_berezin.chain import ChainConfig, estimate_lambda1, merge_estimates

# %%
for tj, tm in [(1, 1), (10, 10), (10, 6), (10, 0)]:
    j, m = HalfInt(tj), HalfInt(tm)
    est = estimate_lambda1(ChainConfig(j, m, 50_000, seed=2024 + tj + tm))
    exact = float(eigenvalue(j, m, 1))
    print(f"j={j} m={m}: lambda1_hat={est.lambda1_hat:+.4f} +- {est.std_error:.4f}"
          f"  exact={exact:.4f}  acceptance={est.acceptance_rate:.3f}")

# %% [markdown]
# Independent chains can be pooled; lag 2 should land near lambda1 squared.

# %%
runs = [estimate_lambda1(ChainConfig(HalfInt(4), HalfInt(4), 20_000, seed)) for seed in range(4)]
pooled = merge_estimates(runs)
lam = float(eigenvalue(HalfInt(4), HalfInt(4), 1))
print(f"pooled lambda1 = {pooled.lambda1_hat:.4f} +- {pooled.std_error:.4f} (exact {lam:.4f})")
print(f"pooled lag2    = {pooled.lag2_hat:.4f} +- {pooled.lag2_std_error:.4f} (lambda1^2 = {lam * lam:.4f})")
print(f"gap estimate   = {pooled.gap_hat:.4f}")
