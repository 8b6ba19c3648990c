"""Statistical and limit-behaviour probes for the Lebesgue constants.

The central limit theorem for L_n is checked as an empirical fraction over
n < N; the subsequence statements along n_t(m) = floor(2^m (1 + t)) are
probed through the ratio d_{n_t(m)} / log n_t(m).
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np

from .config import GuardConfig
from .errors import GuardError
from .exact import DyadicRational
from .lebesgue import LebesgueTable, block_max, lebesgue_fine, lebesgue_table

logger = logging.getLogger(__name__)

# n_t(m) must stay below this bound
MAX_SUBSEQUENCE_N = 1 << 62


def normal_cdf(y: float) -> float:
    """Standard Gaussian distribution function."""
    return float(mpmath.ncdf(y))


# =============================================================================
# Central limit theorem
# =============================================================================


@dataclass(frozen=True)
class CltQuery:
    """Fraction of n in {2, ..., N-1} with L_n below the CLT threshold at y."""

    N: int
    y: float
    count: int
    total: int
    phi_y: float

    @property
    def result(self) -> float:
        return self.count / self.total

    @property
    def deviation(self) -> float:
        return self.result - self.phi_y


def _clt_table(N: int, max_n: int, table: Optional[LebesgueTable]) -> LebesgueTable:
    if N < 4:
        raise ValueError(f"N must be >= 4, got {N}")
    if N > max_n:
        raise GuardError("N", N, max_n)
    if table is not None and table.covers(N - 1):
        return table
    return lebesgue_table(N - 1)


def _clt_count(values: np.ndarray, log2n: np.ndarray, y: float) -> int:
    threshold = log2n / 4 + (y / 4) * np.sqrt(log2n / 3)
    # ties count as satisfying the inequality
    return int(np.count_nonzero(values <= threshold))


def clt_empirical(
    N: int,
    y: float,
    table: Optional[LebesgueTable] = None,
    max_n: int = GuardConfig.clt_max_n,
) -> CltQuery:
    """
    (1/(N-2)) #{2 <= n < N : L_n <= log2(n)/4 + (y/4) sqrt(log2(n)/3)}.

    n = 1 is left out since its threshold degenerates. L_n is exact in
    float64, only the threshold is rounded.
    """
    table = _clt_table(N, max_n, table)
    values = table.as_float()[2:N]
    log2n = np.log2(np.arange(2, N, dtype=np.float64))
    count = _clt_count(values, log2n, y)
    return CltQuery(N=N, y=float(y), count=count, total=N - 2, phi_y=normal_cdf(y))


def clt_profile(
    N: int,
    y_list: Sequence[float],
    table: Optional[LebesgueTable] = None,
    max_n: int = GuardConfig.clt_max_n,
) -> list[CltQuery]:
    """clt_empirical for each y, sharing one table."""
    table = _clt_table(N, max_n, table)
    queries = [clt_empirical(N, y, table=table, max_n=max_n) for y in y_list]
    logger.debug(f"CLT profile at N={N}: {[q.count for q in queries]}")
    return queries


# =============================================================================
# Subsequences n_t(m) = floor(2^m (1 + t))
# =============================================================================


@dataclass(frozen=True)
class SubsequenceQuery:
    t: Fraction
    m: int
    n_t: int
    d: DyadicRational
    ratio: float


def _check_t(t) -> Fraction:
    t = Fraction(t)
    if t < 0 or t > 1:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    return t


def subsequence_index(t: Fraction, m: int) -> int:
    """floor(2^m (1 + t)) in exact arithmetic."""
    t = _check_t(t)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    n_t = ((t.denominator + t.numerator) << m) // t.denominator
    if n_t >= MAX_SUBSEQUENCE_N:
        raise ValueError(f"n_t({m}) = {n_t} is not below 2^62")
    return n_t


def subsequence_ratio(t: Fraction, m: int) -> SubsequenceQuery:
    """d_{n_t(m)} / log n_t(m); d exact, the logarithm floating."""
    t = _check_t(t)
    n_t = subsequence_index(t, m)
    d = lebesgue_fine(n_t)
    return SubsequenceQuery(t=t, m=m, n_t=n_t, d=d, ratio=float(d) / math.log(n_t))


def dyadic_t_scan(t: Fraction, M: int) -> list[SubsequenceQuery]:
    """subsequence_ratio for m = 1 .. M and a dyadic t."""
    t = _check_t(t)
    DyadicRational.from_fraction(t)
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    return [subsequence_ratio(t, m) for m in range(1, M + 1)]


def eventual_constancy_start(t: Fraction) -> int:
    """First m from which d_{n_t(m)} no longer changes, for dyadic t."""
    return max(1, DyadicRational.from_fraction(_check_t(t)).exp)


def dyadic_ratio_bound(t: Fraction, M: int) -> float:
    """
    d / (M log 2) with d the eventual constant value of d_{n_t(m)}.

    From eventual_constancy_start(t) on, n_t(m) is a fixed odd number times
    a power of two and n_t(M) >= 2^M, so ratio(M) never exceeds this bound.
    """
    start = eventual_constancy_start(t)
    if M < start:
        raise ValueError(f"M must be >= {start} for t = {t}, got {M}")
    d = lebesgue_fine(subsequence_index(t, start))
    return float(d) / (M * math.log(2))


@dataclass(frozen=True)
class MaximizerAlignment:
    """d at n_{1/3}(m) next to the block maximum it should reproduce."""

    m: int
    n_t: int
    r: int
    d: DyadicRational
    block_value: Fraction
    block_argmax: int

    @property
    def aligned(self) -> bool:
        return self.d == self.block_value


def maximizer_alignment(m: int) -> MaximizerAlignment:
    """
    For t = 1/3, n_t(m) is (2^(m+2) - 1)/3 when m is even, the maximiser of
    block m + 1, and twice the maximiser of block m when m is odd.
    """
    n_t = subsequence_index(Fraction(1, 3), m)
    r = m + 1 if m % 2 == 0 else m
    block = block_max(r)
    return MaximizerAlignment(
        m=m,
        n_t=n_t,
        r=r,
        d=lebesgue_fine(n_t),
        block_value=block.value,
        block_argmax=block.argmax,
    )


@dataclass
class RatioTrajectory:
    t: Fraction
    ratios: list[float] = field(default_factory=list)


def ae_probe(samples: int = 64, m_max: int = 40, seed: int = 20240101) -> list[RatioTrajectory]:
    """
    Ratio trajectories for pseudo-random t in [0, 1).

    Reported only: no finite computation decides an almost-everywhere limit.
    Each t is a multiple of 2^-62 drawn from a seeded generator.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if m_max < 1 or m_max > 60:
        raise ValueError(f"m_max must be in [1, 60], got {m_max}")
    rng = np.random.default_rng(seed)
    trajectories = []
    for raw in rng.integers(0, 1 << 62, size=samples, dtype=np.int64):
        t = Fraction(int(raw), 1 << 62)
        trajectory = RatioTrajectory(t=t)
        for m in range(1, m_max + 1):
            trajectory.ratios.append(subsequence_ratio(t, m).ratio)
        trajectories.append(trajectory)
    logger.info(f"ae probe: {samples} samples, m up to {m_max}, seed {seed}")
    return trajectories
