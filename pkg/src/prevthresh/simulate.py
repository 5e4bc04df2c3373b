"""Seedable Monte Carlo population simulator.

Realizes the generative model behind the predictive-value curves: each
of n subjects is positive with the configured prevalence, positives are
detected with the profile's sensitivity, and negatives are correctly
cleared with its specificity. The empirical PPV/NPV of the resulting
confusion counts converge to the analytic curves as n grows, which the
test suite uses to validate the algebra end to end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metrics import ConfusionCounts, DiagnosticProfile, Rate

__all__ = ["SimulationConfig", "simulate_population"]

_SEED_LIMIT = 2**64


@dataclass(frozen=True)
class SimulationConfig:
    """Population size, class balance, classifier profile and RNG seed.

    The same config produces the same counts on every run within one
    installed build; bit-stability across library upgrades is not
    promised (the tolerances in play are statistical, not golden).
    """

    prevalence: Rate
    profile: DiagnosticProfile
    n: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "prevalence", Rate(self.prevalence))
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {self.seed!r}")


def simulate_population(config: SimulationConfig) -> ConfusionCounts:
    """Draw one synthetic population and tally its confusion matrix.

    Drawn as three nested binomials (how many subjects are positive,
    how many of those are detected, how many negatives are cleared),
    which has exactly the same distribution as n independent
    per-subject draws but costs O(1) RNG calls. Deterministic for a
    fixed seed.
    """
    rng = np.random.default_rng(config.seed)
    positives = int(rng.binomial(config.n, float(config.prevalence)))
    negatives = config.n - positives
    tp = int(rng.binomial(positives, float(config.profile.sensitivity)))
    tn = int(rng.binomial(negatives, float(config.profile.specificity)))
    return ConfusionCounts(tp=tp, fp=negatives - tn, fn=positives - tp, tn=tn)
