"""Spectra of Berezin transforms of orbit POVMs.

Exact rational spectra for SU(2) orbit POVMs on the sphere, together with
independent numerical oracles: finite-group brute force, sphere quadrature,
SU(2) Haar integration and a Markov-chain simulation.
"""

from .halfint import HalfInt
from .exact import (
    SpectrumTable,
    asymptotic_residual,
    cg_squared,
    dominance,
    eigenvalue,
    highest_weight_closed_form,
    oscillation_profile,
    spectral_gap,
    spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "HalfInt",
    "SpectrumTable",
    "asymptotic_residual",
    "cg_squared",
    "dominance",
    "eigenvalue",
    "highest_weight_closed_form",
    "oscillation_profile",
    "spectral_gap",
    "spectrum",
]
