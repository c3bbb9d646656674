"""Exact rational spectrum of the Berezin transform of SU(2) orbit POVMs.

For spin ``j`` and weight ``m`` the transform acts on L2(S^2) with eigenvalue
``lambda^(J)`` on the degree-J spherical harmonics, ``0 <= J <= 2j``:

    lambda^(J) = (2j)!(2j+1)! / ((2j-J)!(2j+J+1)!)
                 * ( sum_z (-1)^z C(2j-J, z) C(J, j-m-z)^2 / C(2j, j-m) )^2

All values are :class:`fractions.Fraction`; nothing is rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from operator import mul
from typing import NamedTuple

from .halfint import HalfInt, check_spin_pair


@lru_cache(maxsize=4096)
def _factorial(n: int) -> int:
    return factorial(n)


def _check_J(tj: int, J) -> int:
    if isinstance(J, HalfInt):
        if not J.is_integer:
            raise ValueError(f"J must be an integer, got {J}")
        J = J.twice // 2
    if isinstance(J, bool) or int(J) != J:
        raise ValueError(f"J must be an integer, got {J!r}")
    J = int(J)
    if not 0 <= J <= tj:
        raise ValueError(f"J={J} outside [0, 2j] = [0, {tj}]")
    return J


def _prefactor(n: int, J: int) -> tuple[int, int]:
    return _factorial(n) * _factorial(n + 1), _factorial(n - J) * _factorial(n + J + 1)


@lru_cache(maxsize=1024)
def _signed_row(a: int) -> tuple[int, ...]:
    # (-1)^z C(a, z)
    return tuple(-c if z & 1 else c for z, c in enumerate(comb(a, z) for z in range(a + 1)))


@lru_cache(maxsize=1024)
def _squared_row(a: int) -> tuple[int, ...]:
    return tuple(comb(a, k) ** 2 for k in range(a + 1))


def _alternating_sum(n: int, d: int, J: int) -> int:
    # sum over z of (-1)^z C(n-J, z) C(J, d-z)^2; out-of-range binomials vanish
    signed = _signed_row(n - J)
    squares = _squared_row(J)
    lo, hi = max(0, d - J), min(d, n - J)
    if lo > hi:
        return 0
    # C(J, d-z) = C(J, J-d+z), so both rows are read forwards
    off = J - d
    return sum(map(mul, signed[lo:hi + 1], squares[off + lo:off + hi + 1]))


def _lambda(n: int, d: int, J: int) -> Fraction:
    num, den = _prefactor(n, J)
    s = _alternating_sum(n, d, J)
    c = comb(n, d)
    return Fraction(num * s * s, den * c * c)


def _spectrum_values(n: int, d: int) -> list[Fraction]:
    c2 = comb(n, d) ** 2
    top = _factorial(n) * _factorial(n + 1)
    out = []
    for J in range(n + 1):
        s = _alternating_sum(n, d, J)
        out.append(Fraction(top * s * s, _factorial(n - J) * _factorial(n + J + 1) * c2))
    return out


def eigenvalue(j, m, J) -> Fraction:
    """Eigenvalue of the Berezin transform on the degree-``J`` harmonics."""
    tj, tm = check_spin_pair(j, m)
    J = _check_J(tj, J)
    return _lambda(tj, (tj - tm) // 2, J)


def cg_squared(j, m, J) -> Fraction:
    """Squared Clebsch-Gordan coefficient ``|<j,m; j,-m | J,0>|^2``."""
    tj, tm = check_spin_pair(j, m)
    J = _check_J(tj, J)
    return _lambda(tj, (tj - tm) // 2, J) * Fraction(2 * J + 1, tj + 1)


def highest_weight_closed_form(j, J) -> Fraction:
    """``(2j)!(2j+1)! / ((2j-J)!(2j+J+1)!)``, the m = j eigenvalues."""
    tj = HalfInt.parse(j).twice
    if tj < 0:
        raise ValueError("spin must be nonnegative")
    J = _check_J(tj, J)
    num, den = _prefactor(tj, J)
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Serialise as ``"p/q"`` (always with a denominator)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    p, _, q = text.partition("/")
    return Fraction(int(p), int(q) if q else 1)


@dataclass(frozen=True)
class SpectrumEntry:
    J: int
    value: Fraction
    multiplicity: int


@dataclass(frozen=True)
class SpectrumTable:
    """Positive part of the spectrum for one ``(j, m)``."""

    j: HalfInt
    m: HalfInt
    entries: tuple[SpectrumEntry, ...] = field(default_factory=tuple)

    @property
    def values(self) -> list[Fraction]:
        return [e.value for e in self.entries]

    def to_dict(self) -> dict:
        return {
            "j": str(self.j),
            "m": str(self.m),
            "entries": [
                {"J": e.J, "lambda": format_rational(e.value), "multiplicity": e.multiplicity}
                for e in self.entries
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SpectrumTable":
        entries = tuple(
            SpectrumEntry(int(e["J"]), parse_rational(e["lambda"]), int(e["multiplicity"]))
            for e in data["entries"]
        )
        return cls(HalfInt.parse(data["j"]), HalfInt.parse(data["m"]), entries)


def spectrum(j, m) -> SpectrumTable:
    tj, tm = check_spin_pair(j, m)
    d = (tj - tm) // 2
    entries = tuple(
        SpectrumEntry(J, value, 2 * J + 1) for J, value in enumerate(_spectrum_values(tj, d))
    )
    return SpectrumTable(HalfInt(tj), HalfInt(tm), entries)


def spectral_gap(j, m) -> Fraction:
    """``1 - max_{J >= 1} lambda^(J)``."""
    tj, tm = check_spin_pair(j, m)
    if tj == 0:
        raise ValueError("spectral gap undefined for j = 0 (spectrum is {1})")
    d = (tj - tm) // 2
    return 1 - max(_spectrum_values(tj, d)[1:])


class OscillationProfile(NamedTuple):
    minima: list[int]
    maxima: list[int]
    plateaus: list[int]


def extrema(values) -> OscillationProfile:
    """Strict interior local extrema of a sequence compared exactly.

    ``plateaus`` lists every index ``J >= 1`` with ``values[J] == values[J-1]``.
    """
    minima, maxima, plateaus = [], [], []
    for J in range(1, len(values)):
        if values[J] == values[J - 1]:
            plateaus.append(J)
    for J in range(1, len(values) - 1):
        prev, cur, nxt = values[J - 1], values[J], values[J + 1]
        if prev > cur < nxt:
            minima.append(J)
        elif prev < cur > nxt:
            maxima.append(J)
    return OscillationProfile(minima, maxima, plateaus)


def oscillation_profile(j, m) -> OscillationProfile:
    return extrema(spectrum(j, m).values)


def dominance(j, m) -> bool:
    """Whether ``lambda^(1)`` strictly exceeds every ``lambda^(J)``, J >= 2."""
    tj, tm = check_spin_pair(j, m)
    if tj < 2:
        raise ValueError("dominance needs j >= 1")
    d = (tj - tm) // 2
    values = _spectrum_values(tj, d)
    return all(values[1] > v for v in values[2:])


def asymptotic_residual(j, d: int, k: int) -> Fraction:
    """``lambda^(k)(j, j-d) - (1 - k(k+1)(2d+1) hbar)`` with ``hbar = 1/(2j)``."""
    tj = HalfInt.parse(j).twice
    if tj < 1:
        raise ValueError("need j >= 1/2 so that hbar = 1/(2j) is finite")
    if d < 0 or d > tj:
        raise ValueError(f"d={d} out of range for j={Fraction(tj, 2)}")
    if not 1 <= k <= tj:
        raise ValueError(f"k={k} outside [1, 2j]")
    lam = eigenvalue(HalfInt(tj), HalfInt(tj - 2 * d), k)
    return lam - (1 - Fraction(k * (k + 1) * (2 * d + 1), tj))
