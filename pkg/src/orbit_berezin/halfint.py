"""Exact half-integer spin labels."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import numbers


@dataclass(frozen=True, order=True)
class HalfInt:
    """A number in (1/2)Z, stored as its (signed) double."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, numbers.Integral) or isinstance(self.twice, bool):
            raise TypeError(f"twice-value must be an integer, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @classmethod
    def parse(cls, value) -> "HalfInt":
        """Coerce ``value`` to a HalfInt.

        Accepts HalfInt, integers, Fractions, floats that are exact multiples
        of 1/2, and strings such as ``"7/2"``, ``"3.5"`` or ``"-2"``.
        """
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not spin labels")
        if isinstance(value, str):
            text = value.strip()
            try:
                value = Fraction(text)
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"cannot parse {value!r} as a half-integer") from None
        if isinstance(value, numbers.Integral):
            return cls(2 * int(value))
        if isinstance(value, float):
            if not value == value or value in (float("inf"), float("-inf")):
                raise ValueError(f"{value!r} is not a half-integer")
            value = Fraction(value)
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise ValueError(f"{value} is not a half-integer")
            return cls(int(doubled))
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self):
        return self.twice / 2

    def __neg__(self):
        return HalfInt(-self.twice)

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"


def check_spin_pair(j, m) -> tuple[int, int]:
    """Validate a spin ``j`` and weight ``m``; return their twice-values."""
    tj = HalfInt.parse(j).twice
    tm = HalfInt.parse(m).twice
    if tj < 0:
        raise ValueError(f"spin must be nonnegative, got j={Fraction(tj, 2)}")
    if abs(tm) > tj:
        raise ValueError(f"|m| must not exceed j (j={Fraction(tj, 2)}, m={Fraction(tm, 2)})")
    if (tj - tm) % 2:
        raise ValueError(f"j - m must be an integer (j={Fraction(tj, 2)}, m={Fraction(tm, 2)})")
    return tj, tm
