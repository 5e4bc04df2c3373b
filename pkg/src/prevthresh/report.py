"""One-stop analysis of a confusion matrix.

Bundles everything the library can say about a single set of counts:
the observed rates and accuracy metrics, the two prevalence thresholds
of the derived profile, the closed-form accuracy ratios, and the
qualitative flags (informative? degenerate? sitting below the positive
threshold?). Entries that are undefined for the given counts are
reported as None rather than raising, so one bad cell does not hide the
rest of the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .bounds import f1_ratio, f_beta_ratio, fm_ratio, mcc_ratio
from .errors import PrevthreshError, UndefinedMetric
from .metrics import (
    ConfusionCounts,
    DiagnosticProfile,
    FBetaWeight,
    Rate,
    accuracy_from_counts,
    chi_square_from_mcc,
    mcc_from_counts,
)
from .thresholds import DEGENERATE_EPS, negative_threshold, positive_threshold

__all__ = ["AnalysisReport", "analyze_counts", "DEFAULT_BETAS"]

DEFAULT_BETAS = (0.5, 1.0, 2.0)


@dataclass(frozen=True)
class AnalysisReport:
    """Metrics, thresholds, ratios and flags derived from one confusion matrix.

    Every number is re-derivable from counts alone. Map values are None
    where the corresponding quantity is undefined for these counts.
    """

    counts: ConfusionCounts
    profile: DiagnosticProfile
    prevalence: Rate
    metrics: dict[str, float | None]
    thresholds: dict[str, float | None]
    ratios: dict[str, float | None]
    flags: dict[str, bool | None]

    def to_dict(self) -> dict:
        return {
            "counts": {
                "tp": self.counts.tp,
                "fp": self.counts.fp,
                "fn": self.counts.fn,
                "tn": self.counts.tn,
                "n": self.counts.n,
            },
            "profile": {
                "sensitivity": float(self.profile.sensitivity),
                "specificity": float(self.profile.specificity),
                "epsilon": self.profile.epsilon,
            },
            "prevalence": float(self.prevalence),
            "metrics": dict(self.metrics),
            "thresholds": dict(self.thresholds),
            "ratios": dict(self.ratios),
            "flags": dict(self.flags),
        }


def _guarded(fn, *args) -> float | None:
    try:
        return float(fn(*args))
    except PrevthreshError:
        return None


def _harmonic_f(beta_sq: float, recall: float, precision: float | None) -> float | None:
    if precision is None:
        return None
    if beta_sq * precision + recall == 0.0:
        return None
    if recall == 0.0 or precision == 0.0:
        return 0.0
    return (1.0 + beta_sq) / (beta_sq / recall + 1.0 / precision)


def analyze_counts(
    counts: ConfusionCounts,
    betas: Sequence[float | FBetaWeight] = DEFAULT_BETAS,
) -> AnalysisReport:
    """Derive the full report for one confusion matrix.

    Needs both classes present in the data (otherwise sensitivity or
    specificity has a zero denominator and UndefinedMetric propagates);
    everything further down is per-entry guarded instead.
    """
    if counts.n == 0:
        raise UndefinedMetric("cannot analyze empty counts")
    weights = [b if isinstance(b, FBetaWeight) else FBetaWeight(b) for b in betas]
    profile = counts.profile()
    prevalence = counts.prevalence()
    a = float(profile.sensitivity)

    precision = _guarded(counts.ppv)
    metrics: dict[str, float | None] = {
        "accuracy": _guarded(accuracy_from_counts, counts),
        "ppv": precision,
        "npv": _guarded(counts.npv),
        "f1": None if (a == 0.0 or not precision) else 2.0 / (1.0 / a + 1.0 / precision),
    }
    for w in weights:
        metrics[f"f_beta_{w.beta:g}"] = _harmonic_f(w.beta * w.beta, a, precision)
    metrics["fm"] = None if precision is None else math.sqrt(a * precision)
    mcc = _guarded(mcc_from_counts, counts)
    metrics["mcc"] = mcc
    metrics["chi_square"] = None if mcc is None else chi_square_from_mcc(mcc, counts.n)

    thresholds: dict[str, float | None] = {
        "phi_e": None,
        "ppv_at_phi_e": None,
        "phi_n": None,
        "npv_at_phi_n": None,
    }
    try:
        positive = positive_threshold(profile)
        thresholds["phi_e"] = float(positive.phi)
        if positive.metric_value is not None:
            thresholds["ppv_at_phi_e"] = float(positive.metric_value)
    except PrevthreshError:
        pass
    try:
        negative = negative_threshold(profile)
        thresholds["phi_n"] = float(negative.phi)
        if negative.metric_value is not None:
            thresholds["npv_at_phi_n"] = float(negative.metric_value)
    except PrevthreshError:
        pass

    ratios: dict[str, float | None] = {
        "f1_ratio": _guarded(lambda: f1_ratio(profile).value),
    }
    for w in weights:
        ratios[f"f_beta_{w.beta:g}_ratio"] = _guarded(
            lambda _w=w: f_beta_ratio(profile, _w).value
        )
    ratios["fm_ratio"] = _guarded(lambda: fm_ratio(profile).value)
    ratios["mcc_ratio"] = _guarded(lambda: mcc_ratio(profile).value)

    phi_e = thresholds["phi_e"]
    flags: dict[str, bool | None] = {
        "informative": profile.is_informative(),
        "degenerate": abs(profile.epsilon - 1.0) <= DEGENERATE_EPS,
        "below_positive_threshold": None if phi_e is None else float(prevalence) < phi_e,
    }
    return AnalysisReport(
        counts=counts,
        profile=profile,
        prevalence=prevalence,
        metrics=metrics,
        thresholds=thresholds,
        ratios=ratios,
        flags=flags,
    )
