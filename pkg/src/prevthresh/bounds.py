"""Accuracy-ratio identities, their bounds, and a grid sweep verifier.

For an informative classifier, each accuracy metric evaluated at its
reference prevalence divided by its value at the relevant prevalence
threshold collapses to a radical closed form in sensitivity and
specificity alone, and that closed form is bounded. The F-family and
Fowlkes-Mallows ratios use full prevalence as the reference; the MCC
ratio instead compares the negative threshold against the positive one,
because NPV vanishes at full prevalence and no reference exists there.

Every closed form here has at least one independent evaluation path
(direct composition of the pointwise metrics, and for MCC two more:
a decomposed square-root form and a fully inlined long form), and
verify_bounds sweeps them all over a sensitivity/specificity grid
against their bounding intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable

from .errors import (
    DegenerateDenominator,
    DegenerateProfile,
    PrevthreshError,
    ZeroDenominator,
)
from .metrics import (
    DiagnosticProfile,
    FBetaWeight,
    Rate,
    f1_at,
    f_beta_at,
    fm_at,
    mcc_from_rates,
    npv_at,
    ppv_at,
)
from .thresholds import ThresholdKind, negative_threshold, positive_threshold

__all__ = [
    "RatioMetric",
    "RatioValue",
    "MccRatioTerms",
    "f1_ratio",
    "f_beta_ratio",
    "fm_ratio",
    "mcc_at_threshold",
    "mcc_ratio",
    "mcc_ratio_decomposed",
    "mcc_ratio_long_form",
    "accuracy_divergence_curve",
    "BoundViolation",
    "BoundRecord",
    "BoundsReport",
    "verify_bounds",
    "RATIO_BOUNDS",
    "SWEEP_BETAS",
]

SQRT2 = math.sqrt(2.0)

# Bounding interval of each ratio for informative profiles, keyed the
# way verify_bounds reports them. The F-beta upper bound is
# 1 + 1/(beta^2 + 1); F1 is the beta = 1 case.
SWEEP_BETAS = (0.5, 1.0, 2.0)
RATIO_BOUNDS: dict[str, tuple[float, float]] = {
    "f1": (1.0, 1.5),
    "f_beta_0.5": (1.0, 1.8),
    "f_beta_1": (1.0, 1.5),
    "f_beta_2": (1.0, 1.2),
    "fm": (1.0, SQRT2),
    "mcc": (SQRT2 / 2.0, SQRT2),
}


class RatioMetric(str, Enum):
    F1 = "f1"
    F_BETA = "f_beta"
    FM = "fm"
    MCC = "mcc"
    ACCURACY = "accuracy"


@dataclass(frozen=True)
class RatioValue:
    """One accuracy-ratio evaluation, tagged with its metric and profile."""

    value: float
    metric: RatioMetric
    profile: DiagnosticProfile
    beta: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"ratio value must be finite, got {self.value!r}")


def _require_positive_recall(profile: DiagnosticProfile) -> tuple[float, float]:
    a = float(profile.sensitivity)
    b = float(profile.specificity)
    if a == 0.0:
        raise DegenerateProfile("ratio undefined when sensitivity is 0")
    return a, b


def f1_ratio(profile: DiagnosticProfile) -> RatioValue:
    """F1 at full prevalence over F1 at the positive threshold.

    Closed form 1 + sqrt(a*(1-b)) / (1 + a); equals the direct ratio
    f1_at(profile, 1) / f1_at(profile, phi_e) wherever the latter is
    defined, and extends it continuously to specificity 1 (value 1).
    Lies in [1, 1.5] for informative profiles.
    """
    a, b = _require_positive_recall(profile)
    value = 1.0 + math.sqrt(a * (1.0 - b)) / (1.0 + a)
    return RatioValue(value=value, metric=RatioMetric.F1, profile=profile)


def f_beta_ratio(profile: DiagnosticProfile, beta: float | FBetaWeight) -> RatioValue:
    """F-beta at full prevalence over F-beta at the positive threshold.

    Closed form 1 + sqrt(a*(1-b)) / (beta^2 + a), reducing bit for bit
    to f1_ratio at beta = 1. For informative profiles it lies in
    [1, 1 + 1/(beta^2 + 1)]; without that restriction the upper bound
    fails (see the constraint-necessity test in the suite).
    """
    w = beta if isinstance(beta, FBetaWeight) else FBetaWeight(beta)
    a, b = _require_positive_recall(profile)
    value = 1.0 + math.sqrt(a * (1.0 - b)) / (w.beta * w.beta + a)
    return RatioValue(value=value, metric=RatioMetric.F_BETA, profile=profile, beta=w.beta)


def fm_ratio(profile: DiagnosticProfile) -> RatioValue:
    """Fowlkes-Mallows at full prevalence over its value at the positive threshold.

    Closed form sqrt(1 + sqrt((1-b)/a)), in [1, sqrt(2)] for
    informative profiles.
    """
    a, b = _require_positive_recall(profile)
    value = math.sqrt(1.0 + math.sqrt((1.0 - b) / a))
    return RatioValue(value=value, metric=RatioMetric.FM, profile=profile)


def _ppv_extended(profile: DiagnosticProfile, phi: Rate) -> float:
    """PPV at phi, with constant curves extended by continuity.

    With specificity 1 the PPV curve is identically 1 on (0, 1] but
    0/0 at 0; with sensitivity 0 it is identically 0 on [0, 1) but 0/0
    at 1. Both limits are plugged so threshold compositions stay
    defined at edge profiles where the curve itself is flat.
    """
    try:
        return float(ppv_at(profile, phi))
    except DegenerateDenominator:
        if float(profile.specificity) == 1.0 and float(profile.sensitivity) > 0.0:
            return 1.0
        if float(profile.sensitivity) == 0.0 and float(profile.specificity) < 1.0:
            return 0.0
        raise


def _npv_extended(profile: DiagnosticProfile, phi: Rate) -> float:
    """NPV counterpart of _ppv_extended (flat at sensitivity 1 or specificity 0)."""
    try:
        return float(npv_at(profile, phi))
    except DegenerateDenominator:
        if float(profile.sensitivity) == 1.0 and float(profile.specificity) > 0.0:
            return 1.0
        if float(profile.specificity) == 0.0 and float(profile.sensitivity) < 1.0:
            return 0.0
        raise


def mcc_at_threshold(profile: DiagnosticProfile, which: ThresholdKind | str) -> float:
    """MCC of the population at one of the two prevalence thresholds.

    Composes the rate form of the MCC with the predictive values that
    Bayes' rule gives at the chosen threshold prevalence. When a
    predictive-value curve is constant (sensitivity or specificity at
    an endpoint) and the threshold lands on its undefined edge, the
    continuous extension is used, so a perfect test scores 1.0 at
    either threshold.
    """
    which = ThresholdKind(which)
    if which == ThresholdKind.POSITIVE:
        phi = positive_threshold(profile).phi
    else:
        phi = negative_threshold(profile).phi
    rho = _ppv_extended(profile, phi)
    sigma = _npv_extended(profile, phi)
    return mcc_from_rates(rho, profile.sensitivity, profile.specificity, sigma)


def mcc_ratio(profile: DiagnosticProfile) -> RatioValue:
    """MCC at the negative threshold over MCC at the positive threshold.

    The direct composition; agrees with mcc_ratio_decomposed and
    mcc_ratio_long_form to 1e-10. Lies in [sqrt(2)/2, sqrt(2)] for
    informative profiles; uniquely among the ratios here its lower
    bound sits below 1, since NPV falls while PPV rises with
    prevalence.
    """
    numerator = mcc_at_threshold(profile, ThresholdKind.NEGATIVE)
    denominator = mcc_at_threshold(profile, ThresholdKind.POSITIVE)
    if denominator == 0.0:
        raise ZeroDenominator("MCC at the positive threshold is zero")
    return RatioValue(value=numerator / denominator, metric=RatioMetric.MCC, profile=profile)


def _require_interior(profile: DiagnosticProfile) -> tuple[float, float]:
    a = float(profile.sensitivity)
    b = float(profile.specificity)
    if not (0.0 < a < 1.0 and 0.0 < b < 1.0):
        raise DegenerateProfile(
            "MCC ratio cross-check forms need sensitivity and specificity strictly inside (0, 1)"
        )
    return a, b


@dataclass(frozen=True)
class MccRatioTerms:
    """Intermediate quantities of the decomposed MCC ratio.

    Both threshold MCCs are differences of square roots, so the ratio
    is (sqrt(concordant_negative) - sqrt(discordant_negative)) /
    (sqrt(concordant_positive) - sqrt(discordant_positive)), where each
    product multiplies the four rates (or their complements) that enter
    the MCC at that threshold. The predictive value at the positive
    threshold is computed through the likelihood-ratio shortcut
    sqrt(a/(1-b)) * phi_e rather than by evaluating the PPV curve, so
    this path is algebraically distinct from mcc_at_threshold.
    """

    negative_phi: Rate
    positive_phi: Rate
    ppv_at_negative: Rate
    npv_at_negative: Rate
    npv_at_positive: Rate
    ppv_at_positive: Rate
    concordant_negative: float
    discordant_negative: float
    concordant_positive: float
    discordant_positive: float

    @classmethod
    def from_profile(cls, profile: DiagnosticProfile) -> "MccRatioTerms":
        a, b = _require_interior(profile)
        u = math.sqrt(b) / (math.sqrt(1.0 - a) + math.sqrt(b))
        v = math.sqrt(1.0 - b) / (math.sqrt(a) + math.sqrt(1.0 - b))
        ppv_neg = a * u / (a * u + (1.0 - b) * (1.0 - u))
        npv_neg = b * (1.0 - u) / (b * (1.0 - u) + (1.0 - a) * u)
        npv_pos = b * (1.0 - v) / (b * (1.0 - v) + (1.0 - a) * v)
        ppv_pos = math.sqrt(a / (1.0 - b)) * v
        return cls(
            negative_phi=Rate(u),
            positive_phi=Rate(v),
            ppv_at_negative=Rate(ppv_neg),
            npv_at_negative=Rate(npv_neg),
            npv_at_positive=Rate(npv_pos),
            ppv_at_positive=Rate(ppv_pos),
            concordant_negative=a * b * ppv_neg * npv_neg,
            discordant_negative=(1.0 - a) * (1.0 - b) * (1.0 - ppv_neg) * (1.0 - npv_neg),
            concordant_positive=a * b * npv_pos * ppv_pos,
            discordant_positive=(1.0 - a) * (1.0 - b) * (1.0 - npv_pos) * (1.0 - ppv_pos),
        )

    @property
    def ratio(self) -> float:
        denominator = math.sqrt(self.concordant_positive) - math.sqrt(self.discordant_positive)
        if denominator == 0.0:
            raise ZeroDenominator("MCC at the positive threshold is zero")
        return (
            math.sqrt(self.concordant_negative) - math.sqrt(self.discordant_negative)
        ) / denominator


def mcc_ratio_decomposed(profile: DiagnosticProfile) -> float:
    """MCC ratio via the difference-of-square-roots decomposition."""
    return MccRatioTerms.from_profile(profile).ratio


def mcc_ratio_long_form(profile: DiagnosticProfile) -> float:
    """MCC ratio as one fully inlined expression, the third evaluation path.

    Nothing is shared with the other two paths except the two threshold
    radicals; every predictive value is spelled out inline and the
    positive-threshold PPV again uses the sqrt(a/(1-b)) shortcut.
    Deliberately kept in this shape as a transcription-independent
    cross-check.
    """
    a, b = _require_interior(profile)
    pn = math.sqrt(b) / (math.sqrt(1.0 - a) + math.sqrt(b))
    pe = math.sqrt(1.0 - b) / (math.sqrt(a) + math.sqrt(1.0 - b))
    numerator = math.sqrt(
        a * pn / (a * pn + (1.0 - b) * (1.0 - pn))
        * a * b
        * b * (1.0 - pn) / (b * (1.0 - pn) + (1.0 - a) * pn)
    ) - math.sqrt(
        (1.0 - a * pn / (a * pn + (1.0 - b) * (1.0 - pn)))
        * (1.0 - a) * (1.0 - b)
        * (1.0 - b * (1.0 - pn) / (b * (1.0 - pn) + (1.0 - a) * pn))
    )
    denominator = math.sqrt(
        math.sqrt(a / (1.0 - b)) * pe
        * a * b
        * b * (1.0 - pe) / (b * (1.0 - pe) + (1.0 - a) * pe)
    ) - math.sqrt(
        (1.0 - math.sqrt(a / (1.0 - b)) * pe)
        * (1.0 - a) * (1.0 - b)
        * (1.0 - b * (1.0 - pe) / (b * (1.0 - pe) + (1.0 - a) * pe))
    )
    if denominator == 0.0:
        raise ZeroDenominator("MCC at the positive threshold is zero")
    return numerator / denominator


def accuracy_divergence_curve(
    profile: DiagnosticProfile,
    metric: RatioMetric | str,
    phis: Iterable[float],
    beta: float | FBetaWeight | None = None,
) -> list[tuple[Rate, float | None]]:
    """Reference-over-current ratio of a metric along a prevalence grid.

    For f1, f_beta and fm the reference is the metric at full
    prevalence, so each entry is metric(1) / metric(phi); the ratio
    grows without bound as phi falls toward 0. Grid points where the
    metric is zero or undefined are recorded with a None ratio rather
    than dropped, so emitted curves keep one row per grid point. MCC is
    rejected because its NPV factor vanishes at full prevalence and no
    reference value exists there; plain accuracy is out of scope.
    """
    metric = RatioMetric(metric)
    if metric not in (RatioMetric.F1, RatioMetric.F_BETA, RatioMetric.FM):
        raise ValueError(f"no full-prevalence reference for metric {metric.value!r}")
    if metric == RatioMetric.F_BETA:
        if beta is None:
            raise ValueError("beta is required for the f_beta divergence curve")
        w = beta if isinstance(beta, FBetaWeight) else FBetaWeight(beta)
    elif beta is not None:
        raise ValueError(f"beta is only meaningful for f_beta, not {metric.value!r}")

    if float(profile.sensitivity) == 0.0:
        raise DegenerateProfile("reference value at full prevalence is undefined when sensitivity is 0")

    if metric == RatioMetric.F1:
        at = lambda phi: float(f1_at(profile, phi))
    elif metric == RatioMetric.F_BETA:
        at = lambda phi: float(f_beta_at(profile, phi, w))
    else:
        at = lambda phi: float(fm_at(profile, phi))
    reference = at(1.0)

    out: list[tuple[Rate, float | None]] = []
    for phi in phis:
        phi = Rate(phi)
        try:
            value = at(phi)
        except PrevthreshError:
            out.append((phi, None))
            continue
        out.append((phi, reference / value if value > 0.0 else None))
    return out


@dataclass(frozen=True)
class BoundViolation:
    """A swept grid cell whose ratio landed outside its bounding interval."""

    sensitivity: float
    specificity: float
    value: float
    lower: float
    upper: float

    def to_dict(self) -> dict:
        return {
            "sensitivity": self.sensitivity,
            "specificity": self.specificity,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
        }


@dataclass(frozen=True)
class BoundRecord:
    """Sweep outcome for one ratio metric: extrema, violations, skipped cells."""

    metric: str
    lower: float
    upper: float
    cells: int
    observed_min: float | None
    observed_max: float | None
    argmin: tuple[float, float] | None
    argmax: tuple[float, float] | None
    violations: tuple[BoundViolation, ...]
    skipped: tuple[tuple[float, float], ...]

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "cells": self.cells,
            "observed_min": self.observed_min,
            "observed_max": self.observed_max,
            "argmin": list(self.argmin) if self.argmin is not None else None,
            "argmax": list(self.argmax) if self.argmax is not None else None,
            "violations": [v.to_dict() for v in self.violations],
            "skipped": [list(cell) for cell in self.skipped],
        }


@dataclass(frozen=True)
class BoundsReport:
    """Result of sweeping every ratio bound over a sensitivity/specificity grid."""

    grid_step: float
    delta: float
    tolerance: float
    constraint: str
    cells_swept: int
    records: tuple[BoundRecord, ...]

    @property
    def has_violations(self) -> bool:
        return any(r.violations for r in self.records)

    def record(self, metric: str) -> BoundRecord:
        for r in self.records:
            if r.metric == metric:
                return r
        raise KeyError(metric)

    def to_dict(self) -> dict:
        return {
            "grid_step": self.grid_step,
            "delta": self.delta,
            "tolerance": self.tolerance,
            "constraint": self.constraint,
            "cells_swept": self.cells_swept,
            "violation_count": sum(len(r.violations) for r in self.records),
            "metrics": {r.metric: r.to_dict() for r in self.records},
        }


def _grid_axis(step: float) -> list[float]:
    values = []
    i = 1
    while True:
        v = i * step
        if v > 1.0 + 1e-12:
            break
        values.append(min(v, 1.0))
        i += 1
    return values


def verify_bounds(grid_step: float = 0.01, delta: float = 1e-6, tolerance: float = 1e-9) -> BoundsReport:
    """Sweep every ratio identity over an (a, b) grid and check its bounds.

    Evaluates f1_ratio, f_beta_ratio for beta in {0.5, 1, 2}, fm_ratio
    and mcc_ratio at every grid cell with sensitivity + specificity >=
    1 + delta, sensitivity > 0 and specificity < 1, and records
    per-metric extrema (ties broken toward the lexicographically
    smaller cell) plus any value outside [lower - tolerance,
    upper + tolerance]. Cells where a metric is undefined (for example
    the MCC ratio at sensitivity exactly 1, whose negative threshold
    sits at full prevalence) are recorded as skipped, never as
    violations. The informativeness restriction is load-bearing: below
    it the F-beta upper bounds are provably exceeded.
    """
    if not (0.0 < grid_step <= 0.05):
        raise ValueError(f"grid_step must be in (0, 0.05], got {grid_step!r}")
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta!r}")
    if tolerance < 0.0:
        raise ValueError(f"tolerance must be non-negative, got {tolerance!r}")

    evaluators: list[tuple[str, Callable[[DiagnosticProfile], float]]] = [
        ("f1", lambda p: f1_ratio(p).value)
    ]
    for beta in SWEEP_BETAS:
        evaluators.append(
            (f"f_beta_{beta:g}", lambda p, _b=beta: f_beta_ratio(p, _b).value)
        )
    evaluators.append(("fm", lambda p: fm_ratio(p).value))
    evaluators.append(("mcc", lambda p: mcc_ratio(p).value))

    state: dict[str, dict] = {
        key: {
            "cells": 0,
            "min": None,
            "argmin": None,
            "max": None,
            "argmax": None,
            "violations": [],
            "skipped": [],
        }
        for key, _ in evaluators
    }

    floor = 1.0 + delta
    cells_swept = 0
    for a in _grid_axis(grid_step):
        for b in _grid_axis(grid_step):
            if b >= 1.0 or a + b < floor:
                continue
            cells_swept += 1
            profile = DiagnosticProfile(Rate(a), Rate(b))
            for key, evaluate in evaluators:
                s = state[key]
                try:
                    value = evaluate(profile)
                except PrevthreshError:
                    s["skipped"].append((a, b))
                    continue
                s["cells"] += 1
                if s["min"] is None or value < s["min"]:
                    s["min"] = value
                    s["argmin"] = (a, b)
                if s["max"] is None or value > s["max"]:
                    s["max"] = value
                    s["argmax"] = (a, b)
                lower, upper = RATIO_BOUNDS[key]
                if value < lower - tolerance or value > upper + tolerance:
                    s["violations"].append(
                        BoundViolation(sensitivity=a, specificity=b, value=value, lower=lower, upper=upper)
                    )

    records = tuple(
        BoundRecord(
            metric=key,
            lower=RATIO_BOUNDS[key][0],
            upper=RATIO_BOUNDS[key][1],
            cells=state[key]["cells"],
            observed_min=state[key]["min"],
            observed_max=state[key]["max"],
            argmin=state[key]["argmin"],
            argmax=state[key]["argmax"],
            violations=tuple(state[key]["violations"]),
            skipped=tuple(state[key]["skipped"]),
        )
        for key, _ in evaluators
    )
    return BoundsReport(
        grid_step=grid_step,
        delta=delta,
        tolerance=tolerance,
        constraint=f"sensitivity + specificity >= {floor!r}",
        cells_swept=cells_swept,
        records=records,
    )
