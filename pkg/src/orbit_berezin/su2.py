"""Floating-point SU(2) oracle.

The Berezin kernel of the weight-``m`` orbit POVM in the spin-``j``
representation is zonal on S^2: it only depends on the geodesic angle
``gamma`` between two points and equals ``(2j+1) d^j_{mm}(gamma)^2``.
Its eigenvalue on degree-k harmonics is the Funk-Hecke integral
``(1/2) int_{-1}^{1} kernel(arccos t) P_k(t) dt``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lgamma, sqrt
from typing import Callable

import numpy as np

from .halfint import HalfInt, check_spin_pair
from .numerics import gauss_legendre, legendre_p

# Above this twice-spin the factorial prefactors and half-angle powers are
# evaluated in log space.
LOG_SPACE_TWICE_J = 60


def _wigner_terms(tj, tm1, tm2):
    """Yield ``(sign, coefficient or log-coefficient, cos exponent, sin exponent)``."""
    # twice-values -> integer combinations used in the factorial arguments
    jp2, jm2 = (tj + tm2) // 2, (tj - tm2) // 2
    jp1, jm1 = (tj + tm1) // 2, (tj - tm1) // 2
    delta = (tm2 - tm1) // 2  # m2 - m1
    log_space = tj > LOG_SPACE_TWICE_J
    k_lo = max(0, delta)
    k_hi = min(jp2, jm1)
    for k in range(k_lo, k_hi + 1):
        sign = -1.0 if (k - delta) % 2 else 1.0
        denoms = (jp2 - k, k, jm1 - k, k - delta)
        if log_space:
            coef = 0.5 * (lgamma(jp2 + 1) + lgamma(jm2 + 1) + lgamma(jp1 + 1) + lgamma(jm1 + 1))
            coef -= sum(lgamma(x + 1) for x in denoms)
        else:
            num = factorial(jp2) * factorial(jm2) * factorial(jp1) * factorial(jm1)
            den = 1
            for x in denoms:
                den *= factorial(x)
            coef = sqrt(Fraction(num, den * den))
        yield sign, coef, tj - 2 * k + delta, 2 * k - delta


def wigner_small_d(j, m1, m2, beta):
    """Wigner ``d^j_{m1 m2}(beta)`` for scalar or array ``beta``."""
    tj, tm1 = check_spin_pair(j, m1)
    _, tm2 = check_spin_pair(j, m2)
    b = np.asarray(beta, dtype=float)
    c = np.cos(b / 2.0)
    s = np.sin(b / 2.0)
    total = np.zeros_like(b)
    if tj > LOG_SPACE_TWICE_J:
        with np.errstate(divide="ignore"):
            logc, logs = np.log(np.abs(c)), np.log(np.abs(s))
        for sign, logcoef, ec, es in _wigner_terms(tj, tm1, tm2):
            sgn = sign * np.sign(c) ** ec * np.sign(s) ** es
            expo = logcoef + (ec * logc if ec else 0.0) + (es * logs if es else 0.0)
            total = total + sgn * np.exp(expo)
    else:
        for sign, coef, ec, es in _wigner_terms(tj, tm1, tm2):
            total = total + sign * coef * c ** ec * s ** es
    return float(total) if total.ndim == 0 else total


@dataclass(frozen=True)
class ZonalKernel:
    """Berezin kernel as a function of the geodesic angle in radians."""

    j: HalfInt
    m: HalfInt
    evaluator: Callable

    def __call__(self, gamma):
        return self.evaluator(gamma)

    @property
    def peak(self) -> float:
        return self.j.twice + 1.0


def zonal_kernel(j, m) -> ZonalKernel:
    tj, tm = check_spin_pair(j, m)
    J, M = HalfInt(tj), HalfInt(tm)

    def evaluate(gamma):
        return (tj + 1) * np.square(wigner_small_d(J, M, M, gamma))

    return ZonalKernel(J, M, evaluate)


def funk_hecke_eigenvalue(j, m, k: int, order: int) -> float:
    """Eigenvalue of the zonal Markov kernel on degree-``k`` harmonics."""
    tj, _ = check_spin_pair(j, m)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if order < tj + k + 2:
        raise ValueError(f"quadrature order {order} below the minimum {tj + k + 2}")
    rule = gauss_legendre(order)
    t = rule.nodes
    kernel = zonal_kernel(j, m)
    return 0.5 * float(np.dot(rule.weights, kernel(np.arccos(t)) * legendre_p(k, t)))


@dataclass(frozen=True)
class EulerAngles:
    """ZYZ Euler angles of an SU(2) element (gamma has period 4 pi)."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.alpha < 2 * np.pi:
            raise ValueError("alpha must lie in [0, 2 pi)")
        if not 0.0 <= self.beta <= np.pi:
            raise ValueError("beta must lie in [0, pi]")
        if not 0.0 <= self.gamma < 4 * np.pi:
            raise ValueError("gamma must lie in [0, 4 pi)")

    def half_trace(self) -> float:
        """``cos psi = cos(beta/2) cos((alpha+gamma)/2)``."""
        return np.cos(self.beta / 2) * np.cos((self.alpha + self.gamma) / 2)


def _chebyshev_u(n: int, x):
    # U_n(cos psi) = sin((n+1) psi) / sin psi, no removable singularity
    u_prev = np.ones_like(x)
    if n == 0:
        return u_prev
    u = 2.0 * x
    for _ in range(n - 1):
        u_prev, u = u, 2.0 * x * u - u_prev
    return u


def su2_character(J, g: EulerAngles) -> float:
    """Character of the spin-``J`` irrep, ``sin((2J+1) psi) / sin psi``."""
    tJ = HalfInt.parse(J).twice
    if tJ < 0:
        raise ValueError("J must be nonnegative")
    return float(_chebyshev_u(tJ, np.asarray(g.half_trace(), dtype=float)))


def character_inner_product(j, m, J, order: int) -> float:
    """``<u_{j,m}, chi_J>`` by direct integration against Haar measure.

    Haar density on the Euler box is ``sin(beta) / (16 pi^2)``. The periodic
    angles use the uniform (trapezoid) rule and ``cos(beta)`` uses
    Gauss-Legendre, each with ``order`` points.
    """
    tj, tm = check_spin_pair(j, m)
    tJ = HalfInt.parse(J).twice
    if tJ < 0:
        raise ValueError("J must be nonnegative")
    if order < 2 * tj + 2 * tJ + 8:
        raise ValueError(f"order {order} below the minimum {2 * tj + 2 * tJ + 8}")
    rule = gauss_legendre(order)
    alpha = 2 * np.pi * np.arange(order) / order
    gamma = 4 * np.pi * np.arange(order) / order
    beta = np.arccos(rule.nodes)
    u = (tj + 1) * np.square(wigner_small_d(HalfInt(tj), HalfInt(tm), HalfInt(tm), beta))
    half_sum = np.cos((alpha[:, None] + gamma[None, :]) / 2.0)
    cos_psi = half_sum[:, :, None] * np.cos(beta / 2.0)[None, None, :]
    chi = _chebyshev_u(tJ, cos_psi)
    per_beta = chi.mean(axis=(0, 1))
    # 2 pi * 4 pi / (16 pi^2) = 1/2
    return 0.5 * float(np.dot(rule.weights, u * per_beta))
