"""Lebesgue constants L_n of the Walsh system by number-theoretic routes.

Routes implemented here: the closed form over the binary blocks, the L_{2n}/L_{2n+1} recursion
(point query and table), the nearest-integer sum and the generating
function. Also the block maxima, the logarithmic upper bound, the mean of
L_k and the limsup bracket at the block maximisers.
"""

import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import mpmath
import numpy as np

from .config import GuardConfig
from .errors import GuardError, InconsistencyError
from .exact import DyadicRational, render
from .report import VerificationReport

logger = logging.getLogger(__name__)

# Guard bits subtracted from a 160-bit log2 before trusting a comparison
_LOG_MARGIN_BITS = 120


def _check_n(n: int, name: str = "n") -> int:
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")
    if n > GuardConfig.max_index:
        raise ValueError(f"{name} must be below 2^63, got {n}")
    return n


# =============================================================================
# Binary decomposition and closed forms
# =============================================================================


@dataclass(frozen=True)
class BinaryDecomposition:
    """n = 2^{n_1} + ... + 2^{n_nu} with n_1 > n_2 > ... > n_nu >= 0."""

    n: int
    exponents: tuple[int, ...]

    @property
    def nu(self) -> int:
        return len(self.exponents)

    @property
    def n1(self) -> int:
        return self.exponents[0]


def decompose(n: int) -> BinaryDecomposition:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    exponents = tuple(bit for bit in range(n.bit_length() - 1, -1, -1) if n >> bit & 1)
    return BinaryDecomposition(n=n, exponents=exponents)


def lebesgue_fine(n: int) -> DyadicRational:
    """L_n = nu - sum_{1 <= j < i <= nu} 2^(n_i - n_j), exact."""
    _check_n(n)
    decomposition = decompose(n)
    n1 = decomposition.n1
    # Everything is written over 2^n1; prefix = sum_{j<i} 2^(n1 - n_j)
    numerator = decomposition.nu << n1
    prefix = 0
    for exponent in decomposition.exponents:
        numerator -= prefix << exponent
        prefix += 1 << (n1 - exponent)
    return DyadicRational(numerator, n1)


def lebesgue_recursive(n: int) -> DyadicRational:
    """
    L_n from L_0 = 0, L_1 = 1, L_{2m} = L_m, L_{2m+1} = (1 + L_m + L_{m+1})/2.

    Walks the binary digits of n from the top, carrying the pair
    (L_m, L_{m+1}) as integer numerators over a common 2^e, so only
    O(log n) subproblems are touched and no cache is needed.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > GuardConfig.max_index:
        raise ValueError(f"n must be below 2^63, got {n}")
    low, high, exp = 0, 1, 0
    for bit in range(n.bit_length() - 1, -1, -1):
        middle = (1 << exp) + low + high
        if n >> bit & 1:
            low, high = middle, high << 1
        else:
            low, high = low << 1, middle
        exp += 1
    return DyadicRational(low, exp)


def nearest_integer_distance(x: DyadicRational) -> DyadicRational:
    """||x|| = min({x}, 1 - {x})."""
    floor = x.num >> x.exp
    fractional = DyadicRational(x.num - (floor << x.exp), x.exp)
    complement = 1 - fractional
    return fractional if fractional <= complement else complement


def lebesgue_nearest_int(n: int) -> DyadicRational:
    """L_n = sum_{r=1}^m ||n/2^r|| + n/2^m with m = bit_length(n)."""
    _check_n(n)
    m = n.bit_length()
    total = DyadicRational(n, m)
    for r in range(1, m + 1):
        total += nearest_integer_distance(DyadicRational(n, r))
    return total


# =============================================================================
# Table
# =============================================================================


class LebesgueTable:
    """
    Immutable table of L_0 .. L_N.

    Entries are stored as int64 numerators over the common denominator
    2^exp with exp = bit_length(N) - 1, which divides every denominator
    that occurs up to N.
    """

    def __init__(self, numerators: np.ndarray, exp: int):
        numerators.setflags(write=False)
        self._numerators = numerators
        self.exp = exp

    @property
    def size(self) -> int:
        return len(self._numerators) - 1

    @property
    def numerators(self) -> np.ndarray:
        return self._numerators

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, n: int) -> DyadicRational:
        if n < 0 or n > self.size:
            raise IndexError(f"n={n} outside table range 0..{self.size}")
        return DyadicRational(int(self._numerators[n]), self.exp)

    def __iter__(self) -> Iterator[DyadicRational]:
        for n in range(1, self.size + 1):
            yield self[n]

    def values(self) -> list[DyadicRational]:
        """Entries L_1 .. L_N."""
        return list(self)

    def as_float(self) -> np.ndarray:
        """Exact float64 view (numerators stay far below 2^53)."""
        return self._numerators.astype(np.float64) / float(1 << self.exp)

    def covers(self, n: int) -> bool:
        return n <= self.size


def lebesgue_table(N: int, max_n: int = GuardConfig.table_max_n) -> LebesgueTable:
    """
    L_1 .. L_N in one forward pass of the even/odd recursion.

    Each dyadic block [2^r, 2^(r+1)) depends only on the previous block and
    on its own first entry, so it is filled with two vectorised assignments.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N > max_n:
        raise GuardError("N", N, max_n)

    exp = N.bit_length() - 1
    one = 1 << exp
    numerators = np.zeros(max(N + 1, 2), dtype=np.int64)
    numerators[1] = one

    start = 2
    while start <= N:
        stop = min(2 * start, N + 1)
        half = np.arange(start // 2, (stop + 1) // 2, dtype=np.int64)
        evens = 2 * half
        numerators[evens[evens < stop]] = numerators[half[evens < stop]]
        odd_half = half[2 * half + 1 < stop]
        numerators[2 * odd_half + 1] = (
            one + numerators[odd_half] + numerators[odd_half + 1]
        ) >> 1
        start = stop

    logger.debug(f"Built Lebesgue table up to N={N} (exponent {exp})")
    return LebesgueTable(numerators[: N + 1].copy(), exp)


def _table_for(N: int, table: Optional[LebesgueTable]) -> LebesgueTable:
    if table is not None and table.covers(N):
        return table
    return lebesgue_table(N)


# =============================================================================
# Generating function
# =============================================================================


@dataclass(frozen=True)
class PowerSeries:
    """Formal power series truncated after z^N, exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_list(cls, coeffs: Sequence) -> "PowerSeries":
        return cls(tuple(Fraction(c) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        return PowerSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(order + 1)))

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        result = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a:
                for j in range(order + 1 - i):
                    result[i + j] += a * other.coeffs[j]
        return PowerSeries(tuple(result))

    def scale(self, factor: Fraction) -> "PowerSeries":
        return PowerSeries(tuple(factor * c for c in self.coeffs))

    def shift(self, power: int = 1) -> "PowerSeries":
        """Multiply by z^power, keeping the truncation order."""
        zeros = tuple(Fraction(0) for _ in range(min(power, self.order + 1)))
        return PowerSeries(zeros + self.coeffs[: self.order + 1 - power])

    def divide_one_minus_z(self) -> "PowerSeries":
        """Multiply by 1/(1 - z), i.e. take prefix sums."""
        result, running = [], Fraction(0)
        for c in self.coeffs:
            running += c
            result.append(running)
        return PowerSeries(tuple(result))


def generating_function_coeffs(
    N: int, max_terms: int = GuardConfig.gf_max_terms
) -> PowerSeries:
    """
    Expand (1/2) z/(1-z)^2 sum_k 2^-k (1 - z^(2^k))/(1 + z^(2^k)) up to z^N.

    Factors with 2^k > N are 1 modulo z^(N+1), so the sum over k stops at
    K = floor(log2 N) and the omitted tail contributes the constant 2^-K.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N > max_terms:
        raise GuardError("N", N, max_terms)

    K = N.bit_length() - 1
    inner = [Fraction(0)] * (N + 1)
    for k in range(K + 1):
        step = 1 << k
        weight = Fraction(1, step)
        # (1 - w)/(1 + w) = 1 + 2 sum_{j>=1} (-1)^j w^j with w = z^(2^k)
        inner[0] += weight
        for j, index in enumerate(range(step, N + 1, step), start=1):
            inner[index] += 2 * weight if j % 2 == 0 else -2 * weight
    inner[0] += Fraction(1, 1 << K)

    series = PowerSeries(tuple(inner))
    return series.divide_one_minus_z().divide_one_minus_z().shift(1).scale(Fraction(1, 2))


# =============================================================================
# Block maxima
# =============================================================================


@dataclass(frozen=True)
class BlockMaximum:
    """Maximum of L_n over n in [2^(r-1), 2^r] and the first n attaining it."""

    r: int
    value: Fraction | DyadicRational
    argmax: int

    def as_dyadic(self) -> DyadicRational:
        try:
            return DyadicRational.coerce(self.value)
        except ValueError as e:
            raise InconsistencyError(f"Block maximum for r={self.r} is not dyadic: {e}")


def block_max(r: int, max_r: int = GuardConfig.block_formula_max_r) -> BlockMaximum:
    """r/3 + 7/9 + (-1)^r/(9 * 2^(r-1)), attained at n = (2^(r+1) + (-1)^r)/3."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if r > max_r:
        raise GuardError("r", r, max_r)
    sign = 1 if r % 2 == 0 else -1
    value = Fraction(r, 3) + Fraction(7, 9) + Fraction(sign, 9 << (r - 1))
    argmax, remainder = divmod((1 << (r + 1)) + sign, 3)
    if remainder:
        raise InconsistencyError(f"Block argmax for r={r} is not an integer")
    return BlockMaximum(r=r, value=value, argmax=argmax)


def block_max_brute(
    r: int,
    max_r: int = GuardConfig.block_brute_max_r,
    table: Optional[LebesgueTable] = None,
) -> BlockMaximum:
    """Scan L_n over [2^(r-1), 2^r]; ties go to the smaller n."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if r > max_r:
        raise GuardError("r", r, max_r)
    lo, hi = 1 << (r - 1), 1 << r
    table = _table_for(hi, table)
    window = table.numerators[lo : hi + 1]
    offset = int(np.argmax(window))
    return BlockMaximum(r=r, value=table[lo + offset], argmax=lo + offset)


# =============================================================================
# Bounds and averages
# =============================================================================


def _log2_lower_exact(n: int) -> mpmath.mpf:
    """A lower bound for log2(n), from a 160-bit evaluation minus a margin."""
    with mpmath.workprec(160):
        return mpmath.log(n, 2) - mpmath.ldexp(1, -_LOG_MARGIN_BITS)


def _bound_holds_exact(n: int, value: DyadicRational) -> bool:
    """Rigorous check of 3 (L_n - 1) <= log2(n)."""
    lhs = 3 * (value - 1)
    if lhs <= 0:
        return True
    with mpmath.workprec(160):
        return mpmath.mpf(lhs.num) / (1 << lhs.exp) <= _log2_lower_exact(n)


def upper_bound_check(N: int, table: Optional[LebesgueTable] = None) -> VerificationReport:
    """
    Check L_n <= log2(n)/3 + 1 for every n <= N.

    Fast path: L_n is exact in float64, log2(n) is pushed four ulps down
    (powers of two use their exact exponent). Anything the fast path cannot
    confirm is decided again with a 160-bit logarithm and a 2^-120 margin,
    so a pass is rigorous.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    started = time.monotonic()
    table = _table_for(N, table)

    n = np.arange(1, N + 1, dtype=np.int64)
    values = table.as_float()[1 : N + 1]
    lhs = 3.0 * (values - 1.0)

    log2 = np.log2(n.astype(np.float64))
    lower = log2
    for _ in range(4):
        lower = np.nextafter(lower, -np.inf)
    powers = (n & (n - 1)) == 0
    exponents = np.floor(log2[powers] + 0.5)
    lower[powers] = exponents

    report = VerificationReport(subject="log-upper-bound", lo=1, hi=N, checked=N)
    undecided = np.nonzero(lhs > lower)[0]
    if len(undecided):
        logger.info(f"Bound check: {len(undecided)} values need the high-precision path")
    for index in undecided:
        k = int(n[index])
        value = table[k]
        if not _bound_holds_exact(k, value):
            bound = mpmath.nstr(mpmath.log(k, 2) / 3 + 1, 20)
            report.add_failure(k, "L_n", render(value), "log2(n)/3+1", bound)

    report.elapsed_ms = (time.monotonic() - started) * 1000
    return report


def average_deviation(n: int, table: Optional[LebesgueTable] = None) -> float:
    """(1/n) sum_{k<=n} L_k - log2(n)/4; the mean is exact, the subtraction floating."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    table = _table_for(n, table)
    total = int(table.numerators[1 : n + 1].sum())
    mean = Fraction(total, n << table.exp)
    return float(mean) - math.log2(n) / 4


def average_deviation_scan(
    lo: int, hi: int, table: Optional[LebesgueTable] = None
) -> np.ndarray:
    """average_deviation(n) for every n in [lo, hi], from one cumulative sum."""
    if lo < 2 or hi < lo:
        raise ValueError(f"Need 2 <= lo <= hi, got lo={lo}, hi={hi}")
    table = _table_for(hi, table)
    sums = np.cumsum(table.numerators[: hi + 1])
    n = np.arange(lo, hi + 1, dtype=np.int64)
    # sums reach 2^56 near the table guard, beyond exact float64. The integer
    # part of sum/n stays below 2^31, so only rest/n and the final sum round.
    whole, rest = np.divmod(sums[lo : hi + 1], n)
    scaled = whole.astype(np.float64) + rest.astype(np.float64) / n.astype(np.float64)
    means = scaled / float(1 << table.exp)
    return means - np.log2(n.astype(np.float64)) / 4


# =============================================================================
# limsup bracket
# =============================================================================


def limsup_probe(r: int) -> float:
    """
    L_n - (4/9 + log2(3)/3 + log2(n)/3) at the maximiser of block r.

    Evaluated with 50 significant digits so the sign survives for r up to 60.
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    n = block_max(r).argmax
    value = lebesgue_fine(n)
    with mpmath.workdps(50):
        three_log2 = 3 * mpmath.log(2)
        bracket = (
            mpmath.mpf(value.num) / (1 << value.exp)
            - mpmath.mpf(4) / 9
            - mpmath.log(3) / three_log2
            - mpmath.log(n) / three_log2
        )
        return float(bracket)


def bracket_exact(r: int) -> float:
    """Closed form of limsup_probe(r): (-1)^r/(9 2^(r-1)) - log2(1 + (-1)^r 2^-(r+1))/3."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    sign = 1 if r % 2 == 0 else -1
    with mpmath.workdps(50):
        first = mpmath.mpf(sign) / (9 * mpmath.mpf(2) ** (r - 1))
        second = mpmath.log(1 + sign * mpmath.mpf(2) ** -(r + 1), 2) / 3
        return float(first - second)
