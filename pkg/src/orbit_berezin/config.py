"""Floating-point tolerances shared by every module and by the test-suite."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    quadrature_weight_sum: float = 1e-13
    quadrature_exactness: float = 1e-12
    hermitian: float = 1e-12
    symmetric_eig: float = 1e-10
    general_eig: float = 1e-9
    unitarity: float = 1e-12
    homomorphism: float = 1e-12
    schur: float = 1e-9
    unit_vector: float = 1e-12
    stabilizer_accept: float = 1e-10
    stabilizer_reject: float = 1e-6
    bi_invariance: float = 1e-12
    bi_invariance_error: float = 1e-9
    markov_rows: float = 1e-10
    convolution: float = 1e-10
    rank_one: float = 1e-9
    spectrum_match: float = 1e-9
    funk_hecke: float = 1e-9
    character_integral: float = 1e-6
    character_limit: float = 1e-9


TOL = Tolerances()

# Configured caps (not hard mathematical limits).
MAX_GAUSS_NODES = 10_000
MAX_GENERAL_EIG_DIM = 32
MAX_SCAN_TWICE_J = 800
MAX_CHAIN_REJECTIONS = 1_000_000
