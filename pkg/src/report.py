"""Structured pass/fail records produced by verification sweeps."""

from dataclasses import dataclass, field
from typing import Any

FAILURE_COLUMNS = ["n", "method_a", "value_a", "method_b", "value_b"]
SUMMARY_COLUMNS = ["subject", "lo", "hi", "checked", "failures"]


@dataclass(frozen=True)
class Failure:
    """One disagreement; values are rendered exact fractions."""

    n: int
    method_a: str
    value_a: str
    method_b: str
    value_b: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "method_a": self.method_a,
            "value_a": self.value_a,
            "method_b": self.method_b,
            "value_b": self.value_b,
        }


@dataclass
class VerificationReport:
    """Outcome of checking one identity over an n-range."""

    subject: str
    lo: int
    hi: int
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def range(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def add_failure(self, n: int, method_a: str, value_a: str, method_b: str, value_b: str):
        self.failures.append(Failure(n, method_a, value_a, method_b, value_b))

    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine two reports over adjacent ranges of the same subject."""
        if other.subject != self.subject:
            raise ValueError(f"Cannot merge '{other.subject}' into '{self.subject}'")
        return VerificationReport(
            subject=self.subject,
            lo=min(self.lo, other.lo),
            hi=max(self.hi, other.hi),
            checked=self.checked + other.checked,
            failures=sorted(self.failures + other.failures, key=lambda f: f.n),
            elapsed_ms=self.elapsed_ms + other.elapsed_ms,
        )

    def summary_row(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "lo": self.lo,
            "hi": self.hi,
            "checked": self.checked,
            "failures": len(self.failures),
        }

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        """JSON view; timing is opt-in so output stays byte-deterministic."""
        data = self.summary_row()
        data["failures"] = [f.to_dict() for f in self.failures]
        data["ok"] = self.ok
        if include_timing:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data
