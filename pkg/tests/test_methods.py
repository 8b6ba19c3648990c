"""Tests for the method registry, the guard filter and the sweep harness."""

import pytest

from src.config import ExecutionConfig, GuardConfig
from src.errors import GuardError
from src.exact import DyadicRational
from src.lebesgue import lebesgue_fine
from src.methods import LN_METHODS, METHODS, Method, MethodFilter, resolve_methods
from src.verifier import Verifier, verify_chunk


class TestResolve:
    def test_all_means_the_six_ln_routes(self):
        assert resolve_methods("all") == list(LN_METHODS)

    def test_all_with_registry_default(self):
        assert resolve_methods("all", default_all=METHODS) == list(METHODS)

    def test_registry_order_and_duplicates(self):
        assert resolve_methods("discrepancy, fine,fine") == ["fine", "discrepancy"]

    def test_unknown_method(self):
        with pytest.raises(ValueError, match="Unknown method"):
            resolve_methods("fine,magic")

    def test_empty(self):
        with pytest.raises(ValueError):
            resolve_methods(" , ")


class TestMethods:
    @pytest.mark.parametrize("name", list(METHODS))
    def test_every_route_gives_l_5(self, name):
        assert METHODS[name](5, GuardConfig()) == DyadicRational(7, 2)

    def test_every_route_agrees_with_fine_up_to_64(self):
        guards = GuardConfig()
        for n in range(1, 65):
            expected = lebesgue_fine(n)
            for method in METHODS.values():
                assert method(n, guards) == expected, (method.name, n)

    def test_limits_follow_guards(self):
        guards = GuardConfig(walsh_sum_max_n=16)
        assert METHODS["walsh-sum"].limit(guards) == 16
        assert METHODS["fine"].limit(guards) == guards.max_index


class TestMethodFilter:
    def test_methods_for_skips_guarded_routes(self):
        method_filter = MethodFilter(GuardConfig(walsh_sum_max_n=8), LN_METHODS)
        names = [m.name for m in method_filter.methods_for(9)]
        assert "walsh-sum" not in names
        assert "fine" in names
        assert method_filter.get_stats()["skipped"] == 1

    def test_require(self):
        method_filter = MethodFilter(GuardConfig(integral_max_n=32), ["fine", "integral"])
        method_filter.require(32)
        with pytest.raises(GuardError, match="integral"):
            method_filter.require(33)
        assert method_filter.get_stats() == {"evaluated": 3, "skipped": 1}

    def test_max_limit(self):
        method_filter = MethodFilter(GuardConfig(integral_max_n=32), ["integral", "walsh-sum"])
        assert method_filter.max_limit() == 1024


class TestVerifier:
    def test_agreement(self):
        verifier = Verifier(GuardConfig(), ExecutionConfig(workers=1, chunk_size=100))
        report = verifier.verify(["fine", "recursion", "nearest-int", "discrepancy"], 1, 512)
        assert report.ok
        assert report.checked == 512
        assert report.range == (1, 512)
        assert report.subject == "methods:fine+recursion+nearest-int+discrepancy"

    def test_single_value(self):
        report = Verifier(GuardConfig()).verify(["fine", "l1"], 1, 1)
        assert report.ok
        assert report.checked == 1

    def test_disagreement_is_reported(self, monkeypatch):
        broken = Method(
            "broken",
            lambda n, guards: lebesgue_fine(n) + (1 if n == 5 else 0),
            None,
            "off by one at n = 5",
        )
        monkeypatch.setitem(METHODS, "broken", broken)
        report = verify_chunk(1, 10, ["fine", "broken"], GuardConfig())
        assert report.exit_code == 1
        assert [f.to_dict() for f in report.failures] == [
            {
                "n": 5,
                "method_a": "fine",
                "value_a": "7/2^2",
                "method_b": "broken",
                "value_b": "11/2^2",
            }
        ]

    def test_parallel_matches_serial(self):
        names = ["fine", "recursion", "l1-blocks"]
        serial = Verifier(GuardConfig(), ExecutionConfig(workers=1, chunk_size=64)).verify(
            names, 1, 1000
        )
        parallel = Verifier(GuardConfig(), ExecutionConfig(workers=2, chunk_size=64)).verify(
            names, 1, 1000
        )
        assert serial.to_dict() == parallel.to_dict()

    def test_guard_is_enforced(self):
        with pytest.raises(GuardError):
            Verifier(GuardConfig()).verify(["fine", "walsh-sum"], 1, 2048)

    def test_bad_range(self):
        with pytest.raises(ValueError):
            Verifier(GuardConfig()).verify(["fine"], 0, 5)

    @pytest.mark.slow
    def test_all_routes_agree_up_to_4096(self):
        report = Verifier(GuardConfig(), ExecutionConfig(workers=1)).verify(
            ["fine", "recursion", "nearest-int", "discrepancy", "l1"], 1, 4096
        )
        assert report.ok, report.first_failure()

    @pytest.mark.slow
    def test_six_methods_up_to_1024(self):
        report = Verifier(GuardConfig(), ExecutionConfig(workers=1)).verify(list(LN_METHODS), 1, 1024)
        assert report.ok, report.first_failure()
