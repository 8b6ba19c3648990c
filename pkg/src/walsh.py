"""Walsh functions, the Walsh Dirichlet kernel and the Lebesgue function.

Points are dyadic rationals in [0, 1) with their terminating binary
expansion x = x_1/2 + x_2/4 + ... . The digit word of x is the integer whose
bit j holds x_{j+1}, so wal_k(x) is the parity of popcount(k & word(x)).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .config import GuardConfig
from .errors import GuardError
from .exact import DyadicRational
from .utils.bits import popcount, reverse_bits, reverse_bits_array

logger = logging.getLogger(__name__)

MAX_INDEX = GuardConfig.max_index

# Upper bound on the size of one rows x cols sign matrix
MAX_CHUNK_CELLS = 1 << 22

PointLike = Union["DyadicPoint", DyadicRational, Fraction, int]


@dataclass(frozen=True, slots=True)
class DyadicPoint:
    """A dyadic rational in [0, 1)."""

    value: DyadicRational

    def __post_init__(self):
        if not isinstance(self.value, DyadicRational):
            object.__setattr__(self, "value", DyadicRational.coerce(self.value))
        if self.value < 0 or self.value >= 1:
            raise ValueError(f"Point {self.value} is outside [0, 1)")

    def digit_word(self, width: int) -> int:
        """First `width` binary digits, x_{j+1} stored at bit j."""
        num, exp = self.value.num, self.value.exp
        if exp <= width:
            return reverse_bits(num, exp)
        return reverse_bits(num >> (exp - width), width)


def as_point(x: PointLike) -> DyadicPoint:
    if isinstance(x, DyadicPoint):
        return x
    return DyadicPoint(DyadicRational.coerce(x))


def check_index(k: int) -> int:
    """Validate a Walsh index (nonnegative, below 2^64)."""
    if k < 0 or k >= 1 << 64:
        raise ValueError(f"Walsh index must be in [0, 2^64), got {k}")
    return k


def digit_word(x: PointLike, width: int) -> int:
    return as_point(x).digit_word(width)


def wal(k: int, x: PointLike) -> int:
    """Walsh function wal_k(x) as +1 or -1."""
    check_index(k)
    word = as_point(x).digit_word(k.bit_length())
    return -1 if popcount(k & word) & 1 else 1


def dirichlet_kernel(n: int, x: PointLike, u: PointLike) -> int:
    """D_n(x, u) = sum_{k<n} wal_k(x) wal_k(u), by direct summation."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    width = n.bit_length()
    # wal_k(x) * wal_k(u) only depends on the XOR of the digit words
    z = as_point(x).digit_word(width) ^ as_point(u).digit_word(width)
    return sum(-1 if popcount(k & z) & 1 else 1 for k in range(n))


def grid_words(width: int) -> np.ndarray:
    """Digit words of the grid points m / 2^width, m = 0 .. 2^width - 1."""
    return reverse_bits_array(np.arange(1 << width, dtype=np.int64), width)


def parity_sums(rows: np.ndarray, cols: np.ndarray, chunk_size: int = 256) -> np.ndarray:
    """For each column c, sum over rows r of (-1)^popcount(r & c)."""
    sums = np.zeros(len(cols), dtype=np.int64)
    step = max(1, min(chunk_size, MAX_CHUNK_CELLS // max(len(cols), 1)))
    for start in range(0, len(rows), step):
        block = rows[start : start + step]
        parity = (np.bitwise_count(block[:, None] & cols[None, :]) & 1).astype(np.int64)
        sums += (1 - 2 * parity).sum(axis=0)
    return sums


def dirichlet_profile(n: int, x: PointLike, chunk_size: int = 256) -> np.ndarray:
    """
    Values of D_n(x, u) on the grid u = m / 2^(n_1+1).

    Every wal_k with k < 2^(n_1+1) is constant on each grid cell, so this
    vector determines D_n(x, .) completely.

    Args:
        n: Number of kernel terms (n >= 1)
        x: First kernel argument
        chunk_size: Rows of the k x m sign matrix built at once

    Returns:
        Integer array of length 2^(n_1+1), entry m holding D_n(x, m/2^(n_1+1))
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    width = n.bit_length()
    z = grid_words(width) ^ as_point(x).digit_word(width)
    return parity_sums(np.arange(n, dtype=np.int64), z, chunk_size=chunk_size)


def lebesgue_function(
    n: int,
    x: PointLike,
    max_n: int = GuardConfig.integral_max_n,
    chunk_size: int = 256,
) -> DyadicRational:
    """
    L_n(x) = integral over u of |D_n(x, u)|, evaluated exactly.

    The integrand is constant on the 2^(n_1+1) cells of the minimal dyadic
    grid, so the integral is the grid mean of |D_n|. Cost is O(n * 2^n_1).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_INDEX:
        raise ValueError(f"n must be below 2^63, got {n}")
    if n > max_n:
        raise GuardError("n", n, max_n)
    profile = dirichlet_profile(n, x, chunk_size=chunk_size)
    total = int(np.abs(profile).sum())
    logger.debug(f"L_{n}({as_point(x).value}) = {total}/2^{n.bit_length()}")
    return DyadicRational(total, n.bit_length())
