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
# # Floating-point cross-checks on the sphere and on SU(2)
#
# Two numerical routes to the same rational numbers:
#
# * the Berezin kernel is zonal, so Funk-Hecke turns each eigenvalue into a
#   one-dimensional integral against a Legendre polynomial;
# * the eigenvalues are also inner products of u with characters of SU(2),
#   which we integrate over the group with Haar measure.

# %%
import numpy as np

from orbit_berezin import HalfInt, eigenvalue
from orbit_berezin.su2 import character_inner_product, funk_hecke_eigenvalue, zonal_kernel

# %% [markdown]
# The kernel for j = 3, m = 1 as a function of the angle between two points.

# %%
kernel = zonal_kernel(HalfInt(6), HalfInt(2))
for g in np.linspace(0, np.pi, 7):
    print(f"gamma={g:5.3f}  kernel={float(kernel(g)):8.5f}")

# %% [markdown]
# Funk-Hecke with 200 Gauss-Legendre nodes. Degrees above 2j are annihilated.

# %%
j, m = HalfInt(6), HalfInt(2)
for k in range(0, 9):
    exact = float(eigenvalue(j, m, k)) if k <= 6 else 0.0
    num = funk_hecke_eigenvalue(j, m, k, 200)
    print(f"k={k}  numeric={num:+.15f}  exact={exact:+.15f}")

# %% [markdown]
# Characters: half-integer J and J > 2j give zero.

# %%
j, m = HalfInt(2), HalfInt(0)
for tJ in range(0, 6):
    J = HalfInt(tJ)
    exact = float(eigenvalue(j, m, tJ // 2)) if tJ % 2 == 0 and tJ // 2 <= 2 else 0.0
    print(f"J={J!s:>3}  <u, chi> = {character_inner_product(j, m, J, 30):+.12f}  expected {exact:+.12f}")
