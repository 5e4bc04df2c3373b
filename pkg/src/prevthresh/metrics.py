"""Validated rate/count types and pointwise accuracy metrics.

Predictive values are prevalence-dependent through Bayes' rule, while
sensitivity and specificity are prevalence-free, so every metric here is
computable either from a (sensitivity, specificity) profile plus a
prevalence, or directly from confusion-matrix counts. Undefined values
raise typed errors instead of returning NaN, so sweep code can tell
degeneracy apart from a genuine bound violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateDenominator, UndefinedMetric

__all__ = [
    "Rate",
    "DiagnosticProfile",
    "ConfusionCounts",
    "FBetaWeight",
    "ppv_at",
    "npv_at",
    "f1_at",
    "f_beta_at",
    "fm_at",
    "mcc_from_rates",
    "mcc_from_counts",
    "chi_square_from_mcc",
    "accuracy_from_counts",
]


class Rate(float):
    """A proportion in the closed unit interval.

    Construction rejects non-finite values and anything outside [0, 1];
    instances otherwise behave as plain floats, so they can be used
    directly in arithmetic.
    """

    __slots__ = ()

    def __new__(cls, value: float) -> "Rate":
        v = float(value)
        if not math.isfinite(v) or v < 0.0 or v > 1.0:
            raise ValueError(f"rate must be a finite number in [0, 1], got {value!r}")
        return super().__new__(cls, v)

    def __repr__(self) -> str:
        return f"Rate({float(self)!r})"


@dataclass(frozen=True)
class DiagnosticProfile:
    """The prevalence-free characteristics of a binary classifier.

    sensitivity
        Probability that a positive element is predicted positive (recall).
    specificity
        Probability that a negative element is predicted negative.
    """

    sensitivity: Rate
    specificity: Rate

    def __post_init__(self):
        object.__setattr__(self, "sensitivity", Rate(self.sensitivity))
        object.__setattr__(self, "specificity", Rate(self.specificity))

    @property
    def epsilon(self) -> float:
        """Informedness sum sensitivity + specificity, in [0, 2]."""
        return float(self.sensitivity) + float(self.specificity)

    @property
    def lr_positive(self) -> float | None:
        """Positive likelihood ratio sensitivity / (1 - specificity).

        Reported as None (not infinity) when specificity is exactly 1.
        """
        b = float(self.specificity)
        if b == 1.0:
            return None
        return float(self.sensitivity) / (1.0 - b)

    def is_informative(self) -> bool:
        """True when the classifier beats chance: sensitivity + specificity > 1."""
        return self.epsilon > 1.0


@dataclass(frozen=True)
class ConfusionCounts:
    """Non-negative cell counts of a 2x2 confusion matrix.

    tp / fp / fn / tn follow the usual convention: the first letter says
    whether the prediction was correct, the second which class was
    predicted. Derived rates use the standard epidemiological
    definitions and are only available when their denominator is
    positive.
    """

    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        for name in ("tp", "fp", "fn", "tn"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"{name} must be an integer, got {v!r}")
            if v < 0:
                raise ValueError(f"{name} must be non-negative, got {v}")

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def _rate(self, num: int, den: int, what: str) -> Rate:
        if den == 0:
            raise UndefinedMetric(f"{what} undefined: denominator is zero")
        return Rate(num / den)

    def sensitivity(self) -> Rate:
        return self._rate(self.tp, self.tp + self.fn, "sensitivity")

    def specificity(self) -> Rate:
        return self._rate(self.tn, self.tn + self.fp, "specificity")

    def ppv(self) -> Rate:
        return self._rate(self.tp, self.tp + self.fp, "ppv")

    def npv(self) -> Rate:
        return self._rate(self.tn, self.tn + self.fn, "npv")

    def prevalence(self) -> Rate:
        return self._rate(self.tp + self.fn, self.n, "prevalence")

    def profile(self) -> DiagnosticProfile:
        """Sensitivity/specificity profile derived from the counts."""
        return DiagnosticProfile(self.sensitivity(), self.specificity())


@dataclass(frozen=True)
class FBetaWeight:
    """Precision/recall trade-off weight of the F-beta score.

    beta < 1 favours precision, beta > 1 favours recall; must be finite
    and strictly positive.
    """

    beta: float

    def __post_init__(self):
        v = float(self.beta)
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError(f"beta must be finite and > 0, got {self.beta!r}")
        object.__setattr__(self, "beta", v)


def _as_weight(beta: float | FBetaWeight) -> FBetaWeight:
    return beta if isinstance(beta, FBetaWeight) else FBetaWeight(beta)


def ppv_at(profile: DiagnosticProfile, phi: float) -> Rate:
    """Positive predictive value at prevalence ``phi`` via Bayes' rule.

    ppv = a*phi / (a*phi + (1-b)*(1-phi)) with a = sensitivity and
    b = specificity. Monotone non-decreasing in phi for informative
    profiles, with the invariant endpoint ppv(1) = 1.
    """
    phi = Rate(phi)
    true_pos = float(profile.sensitivity) * float(phi)
    false_pos = (1.0 - float(profile.specificity)) * (1.0 - float(phi))
    den = true_pos + false_pos
    if den == 0.0:
        raise DegenerateDenominator(
            f"no positive predictions at phi={float(phi)!r} for {profile}"
        )
    return Rate(true_pos / den)


def npv_at(profile: DiagnosticProfile, phi: float) -> Rate:
    """Negative predictive value at prevalence ``phi`` via Bayes' rule.

    npv = b*(1-phi) / (b*(1-phi) + (1-a)*phi). Monotone non-increasing
    in phi for informative profiles, with npv(0) = 1.
    """
    phi = Rate(phi)
    true_neg = float(profile.specificity) * (1.0 - float(phi))
    false_neg = (1.0 - float(profile.sensitivity)) * float(phi)
    den = true_neg + false_neg
    if den == 0.0:
        raise DegenerateDenominator(
            f"no negative predictions at phi={float(phi)!r} for {profile}"
        )
    return Rate(true_neg / den)


def f1_at(profile: DiagnosticProfile, phi: float) -> Rate:
    """F1 score at prevalence ``phi``: harmonic mean of precision and recall."""
    a = float(profile.sensitivity)
    rho = float(ppv_at(profile, phi))
    if a == 0.0 or rho == 0.0:
        raise UndefinedMetric("F1 needs positive recall and precision")
    return Rate(2.0 / (1.0 / a + 1.0 / rho))


def f_beta_at(profile: DiagnosticProfile, phi: float, beta: float | FBetaWeight) -> Rate:
    """F-beta score at prevalence ``phi``: weighted harmonic mean of precision and recall.

    Reduces exactly (bit for bit) to :func:`f1_at` when beta = 1.
    """
    w = _as_weight(beta)
    b2 = w.beta * w.beta
    a = float(profile.sensitivity)
    rho = float(ppv_at(profile, phi))
    if b2 * rho + a == 0.0:
        raise UndefinedMetric("F-beta undefined: recall and precision both zero")
    if a == 0.0 or rho == 0.0:
        return Rate(0.0)
    # Harmonic form rather than (1+b2)*rho*a/(b2*rho + a): keeps the result
    # inside [0, 1] under rounding and makes the beta = 1 case identical to f1_at.
    return Rate((1.0 + b2) / (b2 / a + 1.0 / rho))


def fm_at(profile: DiagnosticProfile, phi: float) -> Rate:
    """Fowlkes-Mallows index at prevalence ``phi``: geometric mean of precision and recall."""
    rho = float(ppv_at(profile, phi))
    return Rate(math.sqrt(float(profile.sensitivity) * rho))


def mcc_from_rates(ppv: float, sensitivity: float, specificity: float, npv: float) -> float:
    """Matthews correlation coefficient from the four characteristic rates.

    mcc = sqrt(ppv*a*b*npv) - sqrt((1-ppv)*(1-a)*(1-b)*(1-npv)), in [-1, 1].
    """
    rho = float(Rate(ppv))
    a = float(Rate(sensitivity))
    b = float(Rate(specificity))
    sigma = float(Rate(npv))
    concordant = math.sqrt(rho * a * b * sigma)
    discordant = math.sqrt((1.0 - rho) * (1.0 - a) * (1.0 - b) * (1.0 - sigma))
    return concordant - discordant


def mcc_from_counts(counts: ConfusionCounts) -> float:
    """Matthews correlation coefficient in determinant form.

    (tp*tn - fp*fn) / sqrt of the product of the four marginals. Serves
    as the independent cross-check of :func:`mcc_from_rates`; the two
    agree to floating-point tolerance whenever all marginals are
    positive.
    """
    tp, fp, fn, tn = counts.tp, counts.fp, counts.fn, counts.tn
    pred_pos = tp + fp
    obs_pos = tp + fn
    obs_neg = tn + fp
    pred_neg = tn + fn
    if min(pred_pos, obs_pos, obs_neg, pred_neg) == 0:
        raise UndefinedMetric("MCC undefined: a confusion-matrix marginal is zero")
    return (tp * tn - fp * fn) / math.sqrt(float(pred_pos) * obs_pos * obs_neg * pred_neg)


def chi_square_from_mcc(mcc: float, n: int) -> float:
    """Chi-square statistic of the 2x2 table implied by an MCC on n elements.

    Inverts |phi_coefficient| = sqrt(chi2 / n) to chi2 = n * mcc**2.
    """
    m = float(mcc)
    if not math.isfinite(m) or abs(m) > 1.0:
        raise ValueError(f"mcc must lie in [-1, 1], got {mcc!r}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return n * m * m


def accuracy_from_counts(counts: ConfusionCounts) -> Rate:
    """Proportion of correct predictions (tp + tn) / n."""
    if counts.n == 0:
        raise UndefinedMetric("accuracy undefined for empty counts")
    return Rate((counts.tp + counts.tn) / counts.n)
