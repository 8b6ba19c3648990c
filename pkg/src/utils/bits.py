"""Bit-level helpers for binary digit words."""

import numpy as np


def popcount(value: int) -> int:
    """Number of one bits in a nonnegative integer."""
    return value.bit_count()


def reverse_bits(value: int, width: int) -> int:
    """Reverse the lowest `width` bits of `value`.

    Bit j of the input becomes bit width-1-j of the output. Bits at or above
    `width` must be zero.
    """
    result = 0
    for _ in range(width):
        result = (result << 1) | (value & 1)
        value >>= 1
    return result


def trailing_zeros(value: int) -> int:
    """Exponent of the largest power of two dividing a nonzero integer."""
    return (value & -value).bit_length() - 1


def reverse_bits_array(values: np.ndarray, width: int) -> np.ndarray:
    """Vectorised reverse_bits over an int64 array."""
    result = np.zeros_like(values)
    for bit in range(width):
        result |= ((values >> bit) & 1) << (width - 1 - bit)
    return result
