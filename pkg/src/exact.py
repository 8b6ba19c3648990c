"""Exact dyadic and general rational arithmetic.

Every value of L_n, d_n and every van der Corput point is a dyadic rational
p/2^e. Those live in DyadicRational, which never needs a gcd. Quantities with
other denominators (D*_n = d_n/n, the ninths in the block-maximum formula,
averages) use BigRational, which is the standard library Fraction.
"""

import re
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Union

from .utils.bits import trailing_zeros

BigRational = Fraction

Number = Union[int, Fraction, "DyadicRational"]

_DYADIC_FORMAT = re.compile(
    r"""
    \A\s*
    (?P<num>[-+]?\d+)
    (?:/(?:2\^(?P<exp>\d+)|(?P<den>\d+)))?
    \s*\Z
    """,
    re.VERBOSE,
)


class Ordering(IntEnum):
    """Result of a three-way comparison."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


def _sign(value: int) -> Ordering:
    if value < 0:
        return Ordering.LESS
    if value > 0:
        return Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True, slots=True, eq=False)
class DyadicRational:
    """The exact value num / 2^exp, always stored normalized.

    Normal form: num is odd, or num == 0 and exp == 0. A negative exponent
    passed to the constructor is folded into the numerator.
    """

    num: int
    exp: int = 0

    def __post_init__(self):
        num, exp = self.num, self.exp
        if not isinstance(num, int) or not isinstance(exp, int):
            raise TypeError("DyadicRational needs integer numerator and exponent")
        if num == 0:
            exp = 0
        elif exp < 0:
            num <<= -exp
            exp = 0
        else:
            shift = min(trailing_zeros(num), exp)
            num >>= shift
            exp -= shift
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_fraction(cls, value: Fraction) -> "DyadicRational":
        """Convert a Fraction whose denominator is a power of two."""
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, den.bit_length() - 1)

    @classmethod
    def coerce(cls, value: Number) -> "DyadicRational":
        if isinstance(value, DyadicRational):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Fraction):
            return cls.from_fraction(value)
        raise TypeError(f"Cannot convert {type(value).__name__} to DyadicRational")

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        """Parse "p", "p/2^e" or "p/q" with q a power of two."""
        match = _DYADIC_FORMAT.match(text)
        if not match:
            raise ValueError(f"Invalid dyadic literal {text!r}")
        num = int(match.group("num"))
        if match.group("exp") is not None:
            return cls(num, int(match.group("exp")))
        if match.group("den") is not None:
            return cls.from_fraction(Fraction(num, int(match.group("den"))))
        return cls(num, 0)

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def numerator(self) -> int:
        return self.num

    @property
    def denominator(self) -> int:
        return 1 << self.exp

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self) -> float:
        return self.num / (1 << self.exp)

    def __bool__(self) -> bool:
        return self.num != 0

    def __repr__(self) -> str:
        return f"DyadicRational({self.num}, {self.exp})"

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/2^{self.exp}"

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: Number) -> "DyadicRational":
        if isinstance(other, int):
            return DyadicRational(self.num + (other << self.exp), self.exp)
        if isinstance(other, Fraction):
            other = DyadicRational.from_fraction(other)
        elif not isinstance(other, DyadicRational):
            return NotImplemented
        if self.exp >= other.exp:
            return DyadicRational(self.num + (other.num << (self.exp - other.exp)), self.exp)
        return DyadicRational((self.num << (other.exp - self.exp)) + other.num, other.exp)

    __radd__ = __add__

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.num, self.exp)

    def __pos__(self) -> "DyadicRational":
        return self

    def __abs__(self) -> "DyadicRational":
        return DyadicRational(abs(self.num), self.exp)

    def __sub__(self, other: Number) -> "DyadicRational":
        if isinstance(other, (int, Fraction, DyadicRational)):
            return self + (-DyadicRational.coerce(other))
        return NotImplemented

    def __rsub__(self, other: Number) -> "DyadicRational":
        if isinstance(other, (int, Fraction)):
            return DyadicRational.coerce(other) - self
        return NotImplemented

    def __mul__(self, other: Number) -> "DyadicRational":
        if isinstance(other, int):
            return DyadicRational(self.num * other, self.exp)
        if isinstance(other, Fraction):
            other = DyadicRational.from_fraction(other)
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return DyadicRational(self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def scale(self, power: int) -> "DyadicRational":
        """Multiply by 2^power (power may be negative)."""
        return DyadicRational(self.num, self.exp - power)

    def halve(self) -> "DyadicRational":
        return DyadicRational(self.num, self.exp + 1)

    # ------------------------------------------------------------------
    # Comparison
    # ------------------------------------------------------------------

    def compare(self, other: Number) -> Ordering:
        if isinstance(other, DyadicRational):
            if self.exp >= other.exp:
                return _sign(self.num - (other.num << (self.exp - other.exp)))
            return _sign((self.num << (other.exp - self.exp)) - other.num)
        if isinstance(other, int):
            return _sign(self.num - (other << self.exp))
        if isinstance(other, Fraction):
            return _sign(self.num * other.denominator - (other.numerator << self.exp))
        raise TypeError(f"Cannot compare DyadicRational with {type(other).__name__}")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (DyadicRational, int, Fraction)):
            return self.compare(other) == Ordering.EQUAL
        return NotImplemented

    def __hash__(self) -> int:
        if self.exp == 0:
            return hash(self.num)
        return hash(self.to_fraction())

    def __lt__(self, other: Number) -> bool:
        if isinstance(other, (DyadicRational, int, Fraction)):
            return self.compare(other) < 0
        return NotImplemented

    def __le__(self, other: Number) -> bool:
        if isinstance(other, (DyadicRational, int, Fraction)):
            return self.compare(other) <= 0
        return NotImplemented

    def __gt__(self, other: Number) -> bool:
        if isinstance(other, (DyadicRational, int, Fraction)):
            return self.compare(other) > 0
        return NotImplemented

    def __ge__(self, other: Number) -> bool:
        if isinstance(other, (DyadicRational, int, Fraction)):
            return self.compare(other) >= 0
        return NotImplemented


ZERO = DyadicRational(0)
ONE = DyadicRational(1)
HALF = DyadicRational(1, 1)


def dyadic_add(a: DyadicRational, b: DyadicRational) -> DyadicRational:
    return a + b


def dyadic_cmp(a: DyadicRational, b: DyadicRational) -> Ordering:
    return a.compare(b)


def embed(value: Number) -> Fraction:
    """Lossless embedding of integers and dyadic rationals into BigRational."""
    if isinstance(value, DyadicRational):
        return value.to_fraction()
    return Fraction(value)


def rational_add(a: Number, b: Number) -> Fraction:
    return embed(a) + embed(b)


def rational_sub(a: Number, b: Number) -> Fraction:
    return embed(a) - embed(b)


def rational_mul(a: Number, b: Number) -> Fraction:
    return embed(a) * embed(b)


def rational_div(a: Number, b: Number) -> Fraction:
    divisor = embed(b)
    if divisor == 0:
        raise ZeroDivisionError(f"division of {a} by zero")
    return embed(a) / divisor


def rational_abs(a: Number) -> Fraction:
    return abs(embed(a))


def rational_cmp(a: Number, b: Number) -> Ordering:
    difference = embed(a) - embed(b)
    return _sign(difference.numerator)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", "p/2^e" or an integer into a BigRational."""
    text = text.strip()
    if "^" in text:
        return DyadicRational.parse(text).to_fraction()
    return Fraction(text)


def render(value: Number, mode: str = "fraction", digits: int = 12) -> str:
    """
    Render an exact value as text.

    Args:
        value: int, Fraction or DyadicRational
        mode: "fraction" (lossless) or "decimal" (correctly rounded,
            round-half-even, exactly `digits` places after the point)
        digits: Number of decimal places in decimal mode

    Returns:
        The rendered string
    """
    if mode == "fraction":
        if isinstance(value, DyadicRational):
            return str(value)
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    if mode == "decimal":
        if digits < 1:
            raise ValueError(f"digits must be >= 1, got {digits}")
        return format(embed(value), f".{digits}f")

    raise ValueError(f"Unknown render mode '{mode}'")
