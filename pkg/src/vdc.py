"""The van der Corput sequence and its exact star discrepancy.

y_k reflects the binary digits of k about the binary point. The
non-normalised star discrepancy d_n = n * D*_n of the first n points is
computed here by order statistics, by the L1 identity (point sum and block
closed form) and by the Walsh-sum representation.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import walsh
from .config import GuardConfig
from .errors import GuardError, InconsistencyError
from .exact import DyadicRational, render
from .lebesgue import decompose
from .report import VerificationReport
from .utils.bits import reverse_bits, reverse_bits_array

logger = logging.getLogger(__name__)


def _check_n(n: int, max_n: Optional[int] = None) -> int:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > GuardConfig.max_index:
        raise ValueError(f"n must be below 2^63, got {n}")
    if max_n is not None and n > max_n:
        raise GuardError("n", n, max_n)
    return n


def vdc_point(k: int) -> DyadicRational:
    """y_k = k_0/2 + k_1/4 + ... for k = sum k_j 2^j."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k > GuardConfig.max_index:
        raise ValueError(f"k must be below 2^63, got {k}")
    width = k.bit_length()
    return DyadicRational(reverse_bits(k, width), width)


def bit_reverse_index(m: int, width: int) -> int:
    """Reverse the digit word of m inside a fixed bit width."""
    if width < 0:
        raise ValueError(f"width must be >= 0, got {width}")
    if m < 0 or m >= 1 << width:
        raise ValueError(f"m={m} does not fit in {width} bits")
    return reverse_bits(m, width)


def _sorted_keys(n: int, width: int) -> np.ndarray:
    """Points y_0 .. y_{n-1} as sorted integers over 2^width (width >= bit_length(n))."""
    keys = reverse_bits_array(np.arange(n, dtype=np.int64), width)
    keys.sort()
    return keys


@dataclass(frozen=True)
class VdcPrefix:
    """The first n points of the sequence."""

    n: int
    points: tuple[DyadicRational, ...]


def vdc_prefix(n: int, max_n: int = GuardConfig.sort_max_n) -> VdcPrefix:
    _check_n(n, max_n)
    return VdcPrefix(n=n, points=tuple(vdc_point(k) for k in range(n)))


# =============================================================================
# Block decomposition of a prefix
# =============================================================================


@dataclass(frozen=True)
class PrefixBlock:
    """
    Block i of the prefix: {k * step + offset : 0 <= k < size}.

    For n = 2^{n_1} + ... + 2^{n_nu} the indices
    [2^{n_1} + ... + 2^{n_{i-1}}, ... + 2^{n_i}) land in block i, with
    size 2^{n_i}, step 2^{-n_i} and offset sum_{j<i} 2^{-(n_j + 1)}.
    """

    i: int
    size: int
    offset: DyadicRational
    step: DyadicRational

    def points(self) -> list[DyadicRational]:
        return [self.step * k + self.offset for k in range(self.size)]

    def point_sum(self) -> DyadicRational:
        """size * offset + step * size (size - 1) / 2, without enumerating."""
        return self.offset * self.size + (self.step * (self.size * (self.size - 1))).halve()


def prefix_blocks(n: int) -> list[PrefixBlock]:
    _check_n(n)
    blocks = []
    offset = DyadicRational(0)
    for i, exponent in enumerate(decompose(n).exponents, start=1):
        blocks.append(
            PrefixBlock(
                i=i,
                size=1 << exponent,
                offset=offset,
                step=DyadicRational(1, exponent),
            )
        )
        offset += DyadicRational(1, exponent + 1)
    return blocks


# =============================================================================
# Star discrepancy
# =============================================================================


def _discrepancy_numerator(keys: np.ndarray, n: int, width: int) -> int:
    """max_i max(i/n - x_(i), x_(i) - (i-1)/n), scaled by n * 2^width."""
    i = np.arange(1, n + 1, dtype=np.int64)
    scaled = n * keys
    upper = (i << width) - scaled
    lower = scaled - ((i - 1) << width)
    return int(max(upper.max(), lower.max()))


def star_discrepancy(n: int, max_n: int = GuardConfig.sort_max_n) -> Fraction:
    """
    D*_n of the first n points, exactly, from the sorted prefix.

    Points are compared as integers over the common denominator
    2^bit_length(n), so no floating key ever decides the order.
    """
    _check_n(n, max_n)
    width = n.bit_length()
    keys = _sorted_keys(n, width)
    return Fraction(_discrepancy_numerator(keys, n, width), n << width)


def d_n(n: int, max_n: int = GuardConfig.sort_max_n) -> DyadicRational:
    """n * D*_n, which is always dyadic."""
    product = n * star_discrepancy(n, max_n=max_n)
    try:
        return DyadicRational.from_fraction(product)
    except ValueError:
        raise InconsistencyError(f"n * D*_n = {product} is not dyadic for n={n}")


def d_n_via_l1_points(n: int, max_n: int = GuardConfig.sort_max_n) -> DyadicRational:
    """d_n = 2 sum_{k<n} (1/2 - y_k) = n - 2 sum y_k, summed point by point."""
    _check_n(n, max_n)
    width = n.bit_length()
    total = int(reverse_bits_array(np.arange(n, dtype=np.int64), width).sum())
    return n - DyadicRational(total, width - 1)


def d_n_via_l1_blocks(n: int) -> DyadicRational:
    """d_n = n - 2 sum over blocks of their closed-form point sums; O(nu^2)."""
    _check_n(n)
    total = DyadicRational(0)
    for block in prefix_blocks(n):
        total += block.point_sum()
    return n - total.scale(1)


def d_n_via_l1(n: int, max_n: int = GuardConfig.sort_max_n) -> DyadicRational:
    """L1 identity; point sum within the sort guard, block form above it."""
    _check_n(n)
    if n <= max_n:
        return d_n_via_l1_points(n, max_n=max_n)
    return d_n_via_l1_blocks(n)


def walsh_sum_discrepancy(n: int, max_n: int = GuardConfig.walsh_sum_max_n) -> Fraction:
    """
    D*_n = 2^-(n_1+1) sum_{m'} |(1/n) sum_{k<n} wal_{m'}(y_k)|.

    m' runs over all indices below 2^(n_1+1). Cost is O(n * 2^n_1).
    """
    _check_n(n, max_n)
    width = n.bit_length()
    words = np.array(
        [walsh.digit_word(vdc_point(k), width) for k in range(n)], dtype=np.int64
    )
    sums = walsh.parity_sums(words, np.arange(1 << width, dtype=np.int64))
    return Fraction(int(np.abs(sums).sum()), n << width)


# =============================================================================
# Nonnegativity of the discrepancy function
# =============================================================================


def _first_negative(keys: np.ndarray, n: int, width: int) -> Optional[int]:
    """First i (1-based) with x_(i) > (i-1)/n, or None."""
    i = np.arange(1, n + 1, dtype=np.int64)
    bad = np.nonzero(n * keys > ((i - 1) << width))[0]
    return int(bad[0]) + 1 if len(bad) else None


def _record_negative(report: VerificationReport, n: int, i: int, key: int, width: int):
    report.add_failure(
        n,
        f"x_({i})",
        render(DyadicRational(key, width)),
        f"({i}-1)/n",
        render(Fraction(i - 1, n)),
    )


def nonnegativity_check(n: int, max_n: int = GuardConfig.sort_max_n) -> VerificationReport:
    """Check x_(i) <= (i-1)/n for the sorted prefix, i.e. Delta >= 0 everywhere."""
    _check_n(n, max_n)
    started = time.monotonic()
    width = n.bit_length()
    keys = _sorted_keys(n, width)
    report = VerificationReport(subject="vdc-nonnegativity", lo=n, hi=n, checked=1)
    i = _first_negative(keys, n, width)
    if i is not None:
        _record_negative(report, n, i, int(keys[i - 1]), width)
    report.elapsed_ms = (time.monotonic() - started) * 1000
    return report


# =============================================================================
# Sweeps over n = 1 .. N with one incrementally sorted prefix
# =============================================================================


class SortedPrefix:
    """The sorted points y_0 .. y_{n-1} as integers over 2^width, grown one at a time."""

    def __init__(self, width: int):
        self.width = width
        self.keys = np.zeros(0, dtype=np.int64)

    @property
    def n(self) -> int:
        return len(self.keys)

    def append_next(self):
        key = reverse_bits(self.n, self.width)
        position = int(np.searchsorted(self.keys, key))
        self.keys = np.insert(self.keys, position, key)


def _iter_prefixes(N: int, max_n: int):
    _check_n(N, max_n)
    prefix = SortedPrefix(N.bit_length())
    for _ in range(N):
        prefix.append_next()
        yield prefix


def star_discrepancy_sweep(N: int, max_n: int = GuardConfig.sweep_max_n) -> list[Fraction]:
    """D*_1 .. D*_N; identical to calling star_discrepancy for each n."""
    values = []
    for prefix in _iter_prefixes(N, max_n):
        n = prefix.n
        values.append(
            Fraction(_discrepancy_numerator(prefix.keys, n, prefix.width), n << prefix.width)
        )
    logger.debug(f"Star discrepancy sweep finished for N={N}")
    return values


def nonnegativity_sweep(N: int, max_n: int = GuardConfig.sweep_max_n) -> VerificationReport:
    """nonnegativity_check for every n <= N, one failure row per failing n."""
    started = time.monotonic()
    report = VerificationReport(subject="vdc-nonnegativity", lo=1, hi=N)
    for prefix in _iter_prefixes(N, max_n):
        n = prefix.n
        i = _first_negative(prefix.keys, n, prefix.width)
        if i is not None:
            _record_negative(report, n, i, int(prefix.keys[i - 1]), prefix.width)
        report.checked += 1
    report.elapsed_ms = (time.monotonic() - started) * 1000
    logger.info(
        f"Nonnegativity sweep 1..{N}: {report.checked} checked, "
        f"{len(report.failures)} failures"
    )
    return report
