"""Exact half-integer arithmetic, stored as doubled integers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    doubled: int

    def __post_init__(self):
        if not isinstance(self.doubled, int) or isinstance(self.doubled, bool):
            raise TypeError(f"doubled must be an int, got {self.doubled!r}")

    @classmethod
    def of(cls, value) -> "HalfInt":
        """Parse an int, Fraction, HalfInt or string such as "-1/2", "1.5", "−0.5"."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a half-integer")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            value = Fraction(value.strip().replace("−", "-"))
        if isinstance(value, float):
            value = Fraction(value)
        if isinstance(value, Fraction):
            twice = 2 * value
            if twice.denominator != 1:
                raise ValueError(f"{value} is not a half-integer")
            return cls(int(twice))
        raise TypeError(f"cannot make a half-integer from {value!r}")

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def to_int(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.doubled // 2

    def to_json(self):
        return self.doubled // 2 if self.is_integer else self.doubled / 2

    def __add__(self, other):
        other = HalfInt.of(other)
        return HalfInt(self.doubled + other.doubled)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.doubled - HalfInt.of(other).doubled)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).doubled - self.doubled)

    def __neg__(self):
        return HalfInt(-self.doubled)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, HalfInt)) and not isinstance(other, bool):
            try:
                return self.doubled == HalfInt.of(other).doubled
            except ValueError:
                return False
        return NotImplemented

    def __lt__(self, other):
        return self.doubled < HalfInt.of(other).doubled

    def __hash__(self):
        return hash(("HalfInt", self.doubled))

    def __str__(self):
        if self.is_integer:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self):
        return f"HalfInt({self})"


HALF = HalfInt(1)
