# Utilities module
from .bits import popcount, reverse_bits, reverse_bits_array, trailing_zeros
from .logging_setup import setup_logging

__all__ = [
    "popcount",
    "reverse_bits",
    "reverse_bits_array",
    "trailing_zeros",
    "setup_logging",
]
