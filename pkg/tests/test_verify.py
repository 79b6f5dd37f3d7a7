import math

import numpy as np
import pytest

from flagjohnson import verify as vf
from flagjohnson.spectra import closed_form


class TestQuotientForms:
    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_pass(self, n):
        rep = vf.verify_quotient_forms(n)
        assert rep.passed, rep.detail
        assert all(v == 0 for v in rep.margins.values())

    def test_injected_off_by_one_fails(self):
        bad = closed_form(5, "plain").copy()
        bad[0, 1] += 1
        bad[1, 0] += 1
        rep = vf.verify_quotient_forms(5, {"plain": bad})
        assert not rep.passed
        assert "schreier[1,2]" in rep.detail

    def test_range(self):
        with pytest.raises(vf.RangeError):
            vf.verify_quotient_forms(9)


class TestAldous:
    @pytest.mark.parametrize("variant", vf.VARIANTS)
    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_pass(self, n, variant):
        rep = vf.verify_aldous(n, variant)
        assert rep.passed
        assert rep.margins["abs_diff"] <= 1e-8 * len(vf.generators(variant, n))

    def test_out_of_range_message(self):
        with pytest.raises(vf.RangeError, match="brute-force range"):
            vf.verify_aldous(9, "prime")


class TestLambda2Growth:
    def test_full_range(self):
        rep = vf.verify_lambda2_growth()
        assert rep.passed
        assert len(rep.table) == 296
        assert rep.margins["min_slack_a"] > 1e-9 and rep.margins["min_slack_b"] > 1e-9
        assert rep.margins["max_translation_error"] <= 1e-9

    def test_swapped_claim_fails(self):
        assert not vf.verify_lambda2_growth(5, 40, swap=True).passed

    def test_huge_tolerance_fails(self):
        assert not vf.verify_lambda2_growth(5, 20, tol=10.0).passed

    def test_translation_matches_monotone_slack(self):
        t2 = vf.verify_lambda2_growth(5, 60)
        mono = vf.verify_mu2_monotone(4, 59, "prime")
        drop = {r["n"]: r["laplacian_drop_prime"] for r in t2.table}
        slack = {r["n"] + 1: r["slack"] for r in mono.table}
        for n in drop:
            assert abs(drop[n] - slack[n]) <= 1e-9


class TestMonotone:
    def test_prime_small_range(self):
        assert vf.verify_mu2_monotone(4, 8, "prime").passed

    def test_plain_small_range(self):
        assert vf.verify_mu2_monotone(4, 14, "plain").passed

    @pytest.mark.parametrize("variant", vf.VARIANTS)
    def test_full(self, variant):
        rep = vf.verify_mu2_monotone(4, 300, variant)
        assert rep.passed and rep.margins["min_slack"] > 1e-9


class TestPathAndRayleigh:
    def test_path_bound(self):
        rep = vf.verify_path_bound()
        assert rep.passed
        assert all(r["submatrix_exact"] for r in rep.table)
        assert rep.margins["min_slack_one"] >= 0

    def test_rayleigh(self):
        rep = vf.verify_rayleigh_bound()
        assert rep.passed
        assert rep.margins["max_numerator_rel_error"] <= 1e-10
        assert rep.margins["min_slack_four"] >= 0


class TestEigvecStructure:
    @pytest.mark.parametrize("n", [9, 10, 23, 50])
    def test_pass(self, n):
        rep = vf.verify_eigvec_structure(n)
        assert rep.passed
        assert 0 < rep.margins["theta"] <= math.pi / 3 + 1e-12
        assert rep.margins["recurrence_residual"] <= 1e-8

    def test_theta_consistent(self):
        fd = vf.FiedlerData.of("prime", 20)
        assert math.isclose(2 - 2 * math.cos(fd.theta), fd.mu, rel_tol=1e-12)

    def test_range(self):
        with pytest.raises(vf.RangeError):
            vf.verify_eigvec_structure(8)


def test_fiedler_shape():
    rep = vf.verify_fiedler_shape()
    assert rep.passed, rep.detail
    assert rep.margins["min_gap"] > 1e-10
    assert rep.margins["min_difference"] >= -1e-9
    assert rep.margins["max_skew_norm"] <= 1e-8


def test_psd_rank():
    assert vf.verify_psd_rank().passed


def test_identities():
    rep = vf.verify_identities(40, 20, samples=200)
    assert rep.passed and rep.margins["max_quadratic_rel_error"] <= 1e-10


class TestCayleyLevel:
    @pytest.mark.parametrize("variant", vf.VARIANTS)
    @pytest.mark.parametrize("n", [4, 5])
    def test_lift(self, n, variant):
        rep = vf.verify_lift(n, variant)
        assert rep.passed and rep.margins["max_match_distance"] <= 1e-7

    @pytest.mark.parametrize("variant", vf.VARIANTS)
    def test_covering_n5(self, variant):
        rep = vf.verify_covering_bound(5, variant)
        assert rep.passed
        assert rep.margins["residual_count"] > 0

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_matching(self, n):
        assert vf.verify_matching_split(n).passed

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_dai(self, n):
        assert vf.verify_dai(n).passed

    def test_set_difference(self):
        out = vf.set_difference(np.array([1.0, 1.0, 2.0, 3.0]), np.array([1.0, 3.0 + 1e-12]), 1e-9)
        assert out.tolist() == [2.0]


class TestRegistry:
    def test_all_suites_listed(self):
        assert set(vf.SUITES) == {
            "quotient-forms", "aldous", "lambda2-growth", "monotone", "path-bound", "eigvec-structure",
            "rayleigh-bound", "fiedler-shape", "psd-rank", "identities", "lift", "covering",
            "matching", "dai",
        }

    def test_range_checked(self):
        with pytest.raises(vf.RangeError):
            vf.run_suite("lift", 4, 7)

    def test_deterministic(self):
        a = [r.to_json(False) for r in vf.run_suite("aldous", 4, 5)]
        b = [r.to_json(False) for r in vf.run_suite("aldous", 4, 5)]
        assert a == b

    def test_independent_order(self):
        first = vf.run_suite("monotone", 4, 20)[0].to_json(False)
        vf.run_suite("lambda2-growth", 5, 30)
        assert vf.run_suite("monotone", 4, 20)[0].to_json(False) == first

    def test_report_json_rounding(self):
        rep = vf.VerificationReport("x", 4, "pass", {"a": 1 / 3}, runtime_ms=5.0)
        d = rep.to_json(timestamps=False)
        assert d["margins"]["a"] == float(f"{1 / 3:.12g}")
        assert d["runtime_ms"] is None
