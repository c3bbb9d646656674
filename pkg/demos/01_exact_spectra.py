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
# # Exact spectra
#
# For the spin-j irrep of SU(2) and a weight vector of weight m, the
# Berezin transform on the sphere acts on degree-J spherical harmonics by a
# rational number. This notebook prints a few spectra and checks the
# identities they satisfy.

# %%
from fractions import Fraction

from orbit_berezin import HalfInt, eigenvalue, spectral_gap, spectrum

# %% [markdown]
# A small case: j = 3/2, m = 1/2. The J = 0 eigenvalue is always 1 (constants
# are fixed) and multiplicities are 2J + 1.

# %%
table = spectrum(HalfInt.parse("3/2"), HalfInt.parse("1/2"))
for e in table.entries:
    print(f"J={e.J}  lambda={e.value!s:>8}  mult={e.multiplicity}")

# %% [markdown]
# The weighted trace is 2j + 1 and lambda^(1) only depends on m^2.

# %%
total = sum(e.multiplicity * e.value for e in table.entries)
print("sum (2J+1) lambda =", total)
j, m = table.j.value, table.m.value
print("lambda^(1) =", table.values[1], " m^2/(j(j+1)) =", m * m / (j * (j + 1)))

# %% [markdown]
# Highest weight vectors (coherent states) give a monotone spectrum and
# the gap 1/(j+1). Moving one step down in weight changes the picture.

# %%
for tj in (4, 10, 40):
    J = HalfInt(tj)
    print(f"j={J}:  gap(m=j) = {spectral_gap(J, J)},  gap(m=j-1) = {spectral_gap(J, HalfInt(tj - 2))}")

# %% [markdown]
# Values are exact `Fraction`s, so large spins are no problem.

# %%
lam = eigenvalue(HalfInt(400), HalfInt(396), 3)
print(type(lam).__name__, float(lam), "digits in denominator:", len(str(lam.denominator)))
assert lam == eigenvalue(HalfInt(400), HalfInt(-396), 3)
assert isinstance(lam, Fraction)
