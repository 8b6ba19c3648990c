"""Sweep harness: compare several routes to L_n over a range of n."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .config import ExecutionConfig, GuardConfig
from .exact import render
from .methods import METHODS, MethodFilter
from .report import VerificationReport

logger = logging.getLogger(__name__)


def subject_for(names: Sequence[str]) -> str:
    return "methods:" + "+".join(names)


def verify_chunk(
    lo: int, hi: int, names: Sequence[str], guards: GuardConfig
) -> VerificationReport:
    """
    Compare every method with the first one for n in [lo, hi].

    Top-level so worker processes can run it.
    """
    started = time.monotonic()
    names = list(names)
    report = VerificationReport(subject=subject_for(names), lo=lo, hi=hi)
    reference, others = METHODS[names[0]], [METHODS[name] for name in names[1:]]
    for n in range(lo, hi + 1):
        expected = reference(n, guards)
        for method in others:
            value = method(n, guards)
            if value != expected:
                report.add_failure(n, reference.name, render(expected), method.name, render(value))
        report.checked += 1
    report.elapsed_ms = (time.monotonic() - started) * 1000
    logger.debug(f"Chunk {lo}..{hi}: {len(report.failures)} failures")
    return report


def _chunks(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    return [(start, min(start + size - 1, hi)) for start in range(lo, hi + 1, size)]


class Verifier:
    """Runs method comparisons over n-ranges, optionally across processes."""

    def __init__(self, guards: GuardConfig, execution: Optional[ExecutionConfig] = None):
        self.guards = guards
        self.execution = execution or ExecutionConfig(workers=1)

    def verify(self, names: Sequence[str], lo: int, hi: int) -> VerificationReport:
        """
        Check that all named methods agree for every n in [lo, hi].

        Raises:
            GuardError: if hi exceeds the guard of any selected method
            ValueError: if the range is empty or starts below 1
        """
        if lo < 1 or hi < lo:
            raise ValueError(f"Need 1 <= lo <= hi, got lo={lo}, hi={hi}")
        names = list(names)
        method_filter = MethodFilter(self.guards, names)
        method_filter.require(hi)
        logger.debug(f"Method filter stats at n={hi}: {method_filter.get_stats()}")

        started = time.monotonic()
        logger.info(f"Verifying {', '.join(names)} for n = {lo}..{hi}")

        if len(names) < 2:
            # a single method has nothing to disagree with, but it must still run
            report = verify_chunk(lo, hi, names, self.guards)
        else:
            chunks = _chunks(lo, hi, self.execution.chunk_size)
            workers = min(self.execution.workers, len(chunks))
            if workers <= 1:
                parts = [verify_chunk(a, b, names, self.guards) for a, b in chunks]
            else:
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    futures = [
                        pool.submit(verify_chunk, a, b, names, self.guards) for a, b in chunks
                    ]
                    parts = [future.result() for future in futures]
            report = parts[0]
            for part in parts[1:]:
                report = report.merge(part)

        report.elapsed_ms = (time.monotonic() - started) * 1000
        logger.info(
            f"Verified {report.checked} values in {report.elapsed_ms:.0f} ms: "
            f"{len(report.failures)} failures"
        )
        return report
