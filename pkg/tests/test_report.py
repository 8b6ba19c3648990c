"""Tests for verification reports."""

import pytest

from src.report import VerificationReport


def test_empty_report_passes():
    report = VerificationReport(subject="s", lo=1, hi=10, checked=10)
    assert report.ok
    assert report.exit_code == 0
    assert report.first_failure() is None
    assert report.summary_row() == {"subject": "s", "lo": 1, "hi": 10, "checked": 10, "failures": 0}


def test_failures_set_exit_code():
    report = VerificationReport(subject="s", lo=1, hi=3, checked=3)
    report.add_failure(2, "fine", "1", "broken", "2")
    assert not report.ok
    assert report.exit_code == 1
    assert report.first_failure().n == 2


def test_merge_keeps_failures_ordered():
    a = VerificationReport(subject="s", lo=5, hi=8, checked=4, elapsed_ms=1.0)
    a.add_failure(7, "x", "1", "y", "2")
    b = VerificationReport(subject="s", lo=1, hi=4, checked=4, elapsed_ms=2.0)
    b.add_failure(3, "x", "1", "y", "2")
    merged = a.merge(b)
    assert merged.range == (1, 8)
    assert merged.checked == 8
    assert [f.n for f in merged.failures] == [3, 7]
    assert merged.elapsed_ms == 3.0


def test_merge_rejects_other_subject():
    with pytest.raises(ValueError):
        VerificationReport(subject="a", lo=1, hi=1).merge(VerificationReport(subject="b", lo=2, hi=2))


def test_to_dict_leaves_timing_out_by_default():
    report = VerificationReport(subject="s", lo=1, hi=1, checked=1, elapsed_ms=12.3456)
    assert "elapsed_ms" not in report.to_dict()
    assert report.to_dict(include_timing=True)["elapsed_ms"] == 12.346
    assert report.to_dict()["ok"] is True
