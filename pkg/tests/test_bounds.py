"""Accuracy-ratio closed forms, MCC cross-checks, and the bound sweep."""

import json
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from prevthresh import (
    RATIO_BOUNDS,
    BoundsReport,
    DegenerateProfile,
    DiagnosticProfile,
    MccRatioTerms,
    RatioMetric,
    RatioValue,
    ZeroDenominator,
    accuracy_divergence_curve,
    f1_at,
    f1_ratio,
    f_beta_at,
    f_beta_ratio,
    fm_at,
    fm_ratio,
    mcc_at_threshold,
    mcc_ratio,
    mcc_ratio_decomposed,
    mcc_ratio_long_form,
    negative_threshold,
    npv_at,
    positive_threshold,
    ppv_at,
    verify_bounds,
)

# Oracle constants for sensitivity 0.9, specificity 0.95 (50-digit arithmetic).
PHI_E = 0.1907435698305462
MCC_E = 0.8168778282645431
MCC_N = 0.791662587077267
MCC_RATIO = 0.9691321758103707
F1_RATIO = 1.1116484391347181
FB05_RATIO = 1.1844626385704038
FB2_RATIO = 1.0432922519093804
FM_RATIO = 1.1116214555303958

P_9095 = DiagnosticProfile(0.9, 0.95)

interior = st.floats(min_value=1e-3, max_value=1.0 - 1e-3, allow_nan=False)


class TestClosedFormRatios:
    def test_f1_oracle(self):
        assert f1_ratio(P_9095).value == pytest.approx(F1_RATIO, abs=1e-15)

    def test_f_beta_oracles(self):
        assert f_beta_ratio(P_9095, 0.5).value == pytest.approx(FB05_RATIO, abs=1e-15)
        assert f_beta_ratio(P_9095, 2.0).value == pytest.approx(FB2_RATIO, abs=1e-15)

    def test_f_beta_at_one_equals_f1(self):
        assert f_beta_ratio(P_9095, 1.0).value == f1_ratio(P_9095).value

    def test_fm_oracle(self):
        assert fm_ratio(P_9095).value == pytest.approx(FM_RATIO, abs=1e-15)

    def test_extremal_spot_values(self):
        extreme = DiagnosticProfile(1.0, 0.0)
        assert f1_ratio(extreme).value == 1.5
        assert fm_ratio(extreme).value == math.sqrt(2.0)
        assert f_beta_ratio(DiagnosticProfile(0.25, 0.0), 0.5).value == pytest.approx(
            2.0, abs=1e-15
        )

    def test_perfect_specificity_collapses_to_one(self):
        # With no false positives both thresholds carry the same F scores,
        # so every ratio is exactly 1.
        p = DiagnosticProfile(0.7, 1.0)
        assert f1_ratio(p).value == 1.0
        assert f_beta_ratio(p, 2.0).value == 1.0
        assert fm_ratio(p).value == 1.0

    def test_zero_sensitivity_rejected(self):
        p = DiagnosticProfile(0.0, 0.8)
        for call in (lambda: f1_ratio(p), lambda: f_beta_ratio(p, 0.5), lambda: fm_ratio(p)):
            with pytest.raises(DegenerateProfile):
                call()

    def test_ratio_value_metadata(self):
        r = f_beta_ratio(P_9095, 0.5)
        assert r.metric is RatioMetric.F_BETA
        assert r.beta == 0.5
        assert r.profile == P_9095
        assert f1_ratio(P_9095).beta is None

    def test_ratio_value_rejects_non_finite(self):
        with pytest.raises(ValueError):
            RatioValue(float("nan"), RatioMetric.F1, P_9095)

    @given(a=interior, b=interior)
    def test_f1_identity_against_direct_evaluation(self, a, b):
        # The closed form must equal f1 at full prevalence over f1 at the
        # positive threshold, evaluated through the curve machinery.
        p = DiagnosticProfile(a, b)
        phi_e = positive_threshold(p).phi
        direct = float(f1_at(p, 1.0)) / float(f1_at(p, phi_e))
        assert f1_ratio(p).value == pytest.approx(direct, rel=1e-12)

    @given(a=interior, b=interior, beta=st.sampled_from([0.5, 1.0, 2.0, 3.5]))
    def test_f_beta_identity_against_direct_evaluation(self, a, b, beta):
        p = DiagnosticProfile(a, b)
        phi_e = positive_threshold(p).phi
        direct = float(f_beta_at(p, 1.0, beta)) / float(f_beta_at(p, phi_e, beta))
        assert f_beta_ratio(p, beta).value == pytest.approx(direct, rel=1e-12)

    @given(a=interior, b=interior)
    def test_fm_identity_against_direct_evaluation(self, a, b):
        p = DiagnosticProfile(a, b)
        phi_e = positive_threshold(p).phi
        direct = float(fm_at(p, 1.0)) / float(fm_at(p, phi_e))
        assert fm_ratio(p).value == pytest.approx(direct, rel=1e-12)


class TestMccAtThreshold:
    def test_oracle_values(self):
        assert mcc_at_threshold(P_9095, "positive") == pytest.approx(MCC_E, abs=1e-14)
        assert mcc_at_threshold(P_9095, "negative") == pytest.approx(MCC_N, abs=1e-14)

    def test_perfect_test(self):
        # Both predictive-value curves are constant 1, so the thresholds sit
        # at the corners and the association is still perfect.
        p = DiagnosticProfile(1.0, 1.0)
        assert mcc_at_threshold(p, "positive") == 1.0
        assert mcc_at_threshold(p, "negative") == 1.0

    def test_composes_from_curve_values(self):
        from prevthresh import mcc_from_rates

        phi_e = positive_threshold(P_9095).phi
        expected = mcc_from_rates(
            ppv_at(P_9095, phi_e), 0.9, 0.95, npv_at(P_9095, phi_e)
        )
        assert mcc_at_threshold(P_9095, "positive") == pytest.approx(expected, abs=1e-15)


class TestMccRatio:
    def test_oracle_value(self):
        assert mcc_ratio(P_9095).value == pytest.approx(MCC_RATIO, abs=1e-14)

    def test_zero_denominator_at_chance(self):
        with pytest.raises(ZeroDenominator):
            mcc_ratio(DiagnosticProfile(0.5, 0.5))

    def test_three_paths_agree_on_oracle_profile(self):
        direct = mcc_ratio(P_9095).value
        decomposed = mcc_ratio_decomposed(P_9095)
        long_form = mcc_ratio_long_form(P_9095)
        assert abs(direct - decomposed) <= 1e-10
        assert abs(direct - long_form) <= 1e-10
        assert abs(decomposed - long_form) <= 1e-10

    @given(a=interior, b=interior)
    def test_three_paths_agree_generally(self, a, b):
        assume(abs(a + b - 1.0) > 1e-3)
        p = DiagnosticProfile(a, b)
        direct = mcc_ratio(p).value
        decomposed = mcc_ratio_decomposed(p)
        long_form = mcc_ratio_long_form(p)
        assert abs(direct - decomposed) <= 1e-10
        assert abs(direct - long_form) <= 1e-10

    def test_decomposed_requires_interior_profile(self):
        with pytest.raises(DegenerateProfile):
            mcc_ratio_decomposed(DiagnosticProfile(1.0, 0.95))
        with pytest.raises(DegenerateProfile):
            mcc_ratio_long_form(DiagnosticProfile(0.9, 1.0))

    def test_terms_match_curve_evaluations(self):
        terms = MccRatioTerms.from_profile(P_9095)
        assert float(terms.negative_phi) == pytest.approx(
            float(negative_threshold(P_9095).phi), abs=1e-15
        )
        assert float(terms.positive_phi) == pytest.approx(PHI_E, abs=1e-15)
        assert float(terms.ppv_at_negative) == pytest.approx(
            float(ppv_at(P_9095, terms.negative_phi)), rel=1e-12
        )
        assert float(terms.npv_at_negative) == pytest.approx(
            float(npv_at(P_9095, terms.negative_phi)), rel=1e-12
        )
        assert float(terms.npv_at_positive) == pytest.approx(
            float(npv_at(P_9095, terms.positive_phi)), rel=1e-12
        )
        # The shortcut form of the positive-threshold PPV must land on the
        # curve evaluation as well; that identity is exactly what makes the
        # decomposition a meaningful cross-check.
        assert float(terms.ppv_at_positive) == pytest.approx(
            float(ppv_at(P_9095, terms.positive_phi)), rel=1e-12
        )

    def test_terms_products_are_consistent(self):
        t = MccRatioTerms.from_profile(P_9095)
        assert t.concordant_negative == pytest.approx(
            0.9 * 0.95 * float(t.ppv_at_negative) * float(t.npv_at_negative), rel=1e-15
        )
        assert t.discordant_positive == pytest.approx(
            0.1 * 0.05 * (1 - float(t.npv_at_positive)) * (1 - float(t.ppv_at_positive)),
            rel=1e-12,
        )


class TestAccuracyDivergenceCurve:
    def test_unity_at_full_prevalence(self):
        [(phi, value)] = accuracy_divergence_curve(P_9095, "f1", [1.0])
        assert float(phi) == 1.0
        assert value == 1.0

    def test_fm_value_at_positive_threshold(self):
        [(_, value)] = accuracy_divergence_curve(P_9095, "fm", [PHI_E])
        assert value == pytest.approx(FM_RATIO, rel=1e-12)

    def test_diverges_at_vanishing_prevalence(self):
        [(_, value)] = accuracy_divergence_curve(P_9095, "f1", [1e-6])
        assert value > 1e3

    def test_undefined_cells_become_none(self):
        rows = accuracy_divergence_curve(P_9095, "f1", [0.0, 0.5])
        assert rows[0][1] is None
        assert rows[1][1] is not None

    def test_zero_metric_becomes_none(self):
        rows = accuracy_divergence_curve(P_9095, "fm", [0.0])
        assert rows[0][1] is None

    def test_f_beta_requires_beta(self):
        with pytest.raises(ValueError):
            accuracy_divergence_curve(P_9095, "f_beta", [0.5])

    def test_beta_rejected_elsewhere(self):
        with pytest.raises(ValueError):
            accuracy_divergence_curve(P_9095, "f1", [0.5], beta=0.5)

    @pytest.mark.parametrize("metric", ["mcc", "accuracy"])
    def test_unsupported_metrics(self, metric):
        with pytest.raises(ValueError):
            accuracy_divergence_curve(P_9095, metric, [0.5])

    def test_zero_sensitivity_rejected(self):
        with pytest.raises(DegenerateProfile):
            accuracy_divergence_curve(DiagnosticProfile(0.0, 0.9), "f1", [0.5])

    def test_monotone_decreasing_for_f1(self):
        grid = [i / 100 for i in range(1, 101)]
        values = [v for _, v in accuracy_divergence_curve(P_9095, "f1", grid)]
        assert all(x >= y for x, y in zip(values, values[1:]))


class TestBoundTable:
    def test_intervals(self):
        assert RATIO_BOUNDS["f1"] == (1.0, 1.5)
        assert RATIO_BOUNDS["f_beta_0.5"] == (1.0, 1.8)
        assert RATIO_BOUNDS["f_beta_1"] == (1.0, 1.5)
        assert RATIO_BOUNDS["f_beta_2"] == (1.0, 1.2)
        assert RATIO_BOUNDS["fm"] == (1.0, math.sqrt(2.0))
        assert RATIO_BOUNDS["mcc"] == (math.sqrt(2.0) / 2.0, math.sqrt(2.0))


class TestVerifyBounds:
    def test_sweep_holds_on_coarse_grid(self):
        report = verify_bounds(grid_step=0.05)
        assert isinstance(report, BoundsReport)
        assert not report.has_violations
        assert report.cells_swept > 100
        for record in report.records:
            assert record.observed_min is not None
            assert record.observed_min >= record.lower - report.tolerance
            assert record.observed_max <= record.upper + report.tolerance
            assert not record.violations
            assert record.cells + len(record.skipped) == report.cells_swept

    def test_no_cells_are_skipped(self):
        # Every evaluator is total on the swept region, including the
        # sensitivity-1 rows where the MCC ratio rests on the continuity
        # extension of the predictive-value curves.
        report = verify_bounds(grid_step=0.05)
        for record in report.records:
            assert record.skipped == ()

    def test_deterministic(self):
        first = verify_bounds(grid_step=0.05)
        second = verify_bounds(grid_step=0.05)
        assert first.to_dict() == second.to_dict()

    def test_to_dict_is_json_serializable(self):
        report = verify_bounds(grid_step=0.05)
        payload = json.loads(json.dumps(report.to_dict()))
        assert payload["violation_count"] == 0
        assert set(payload["metrics"]) == set(RATIO_BOUNDS)

    def test_records_constraint_floor(self):
        report = verify_bounds(grid_step=0.05, delta=1e-6)
        assert "1.000001" in report.constraint

    def test_extrema_locations_are_grid_cells(self):
        report = verify_bounds(grid_step=0.05)
        f1 = report.record("f1")
        a, b = f1.argmax
        assert f1_ratio(DiagnosticProfile(a, b)).value == f1.observed_max

    def test_unknown_metric_lookup(self):
        with pytest.raises(KeyError):
            verify_bounds(grid_step=0.05).record("nope")

    @pytest.mark.parametrize("step", [0.0, -0.01, 0.06, 1.0])
    def test_rejects_bad_grid_step(self, step):
        with pytest.raises(ValueError):
            verify_bounds(grid_step=step)

    def test_rejects_bad_delta_and_tolerance(self):
        with pytest.raises(ValueError):
            verify_bounds(grid_step=0.05, delta=0.0)
        with pytest.raises(ValueError):
            verify_bounds(grid_step=0.05, tolerance=-1e-9)

    def test_informativeness_constraint_is_necessary(self):
        # Dropping the constraint admits profiles that break the F-beta
        # upper bound, so the sweep region is not a convenience choice.
        assert f_beta_ratio(DiagnosticProfile(0.25, 0.0), 0.5).value > 1.8
