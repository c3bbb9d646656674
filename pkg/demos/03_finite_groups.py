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
# # Finite-group orbit POVMs
#
# Pick a group G, an irrep rho and a unit vector v. The orbit of v modulo
# phases is the finite set G/K, K being the phase stabilizer. The Berezin
# transform is a symmetric stochastic matrix on G/K, which we can
# diagonalise by brute force and compare with harmonic-analysis predictions.

# %%
import numpy as np

from orbit_berezin.finite import (
    berezin_matrix,
    gelfand_check,
    irreps_of,
    make_group,
    normalized,
    orbit_povm,
    predicted_spectrum_gelfand,
    predicted_spectrum_general,
)
from orbit_berezin.numerics import symmetric_eigenvalues

np.set_printoptions(precision=6, suppress=True)

# %% [markdown]
# ## Dihedral group of the square, v = e1
#
# The stabilizer is {e, r^2, s, r^2 s}, so G/K has two points and the pair
# (G, K) is Gelfand: the spectrum is read off from characters.

# %%
G = make_group("dihedral(4)")
irreps = irreps_of(G)
povm = orbit_povm(irreps[-1], [1.0, 0.0])
print("K =", [G.labels[k] for k in povm.stabilizer])
M = berezin_matrix(povm)
print(M)
print("brute force :", symmetric_eigenvalues(M))
print("characters  :", predicted_spectrum_gelfand(povm.u_values, irreps, povm.stabilizer))

# %% [markdown]
# ## Frobenius group of order 21, generic vector
#
# Now K is trivial and (G, K) is not Gelfand. Characters no longer suffice;
# the spectrum is the union of the spectra of the Fourier blocks, each
# repeated dim(phi) times.

# %%
G = make_group("frobenius21")
irreps = irreps_of(G)
povm = orbit_povm(irreps[3], normalized([1.0, 0.5, 1 / 3]))
print("|G/K| =", povm.omega_size, " Gelfand:", gelfand_check(G, povm.stabilizer))
computed = symmetric_eigenvalues(berezin_matrix(povm))
general = predicted_spectrum_general(povm.u_values, irreps, povm.stabilizer)
print("brute force:", computed)
print("Fourier    :", general.real)
print("max deviation:", np.max(np.abs(computed - general)))
