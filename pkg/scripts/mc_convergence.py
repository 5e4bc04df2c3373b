#!/usr/bin/env python3
"""Monte Carlo convergence table for the predictive-value curves.

For each population size, draws `--seeds` independent populations at
the given prevalence/profile and reports the mean absolute deviation of
the empirical PPV and NPV from the analytic curve values. The error
should fall roughly like 1/sqrt(n).
"""

import argparse

from prevthresh import (
    DiagnosticProfile,
    SimulationConfig,
    UndefinedMetric,
    npv_at,
    ppv_at,
    simulate_population,
)


def mean_abs_errors(prevalence, profile, n, seeds):
    analytic_ppv = float(ppv_at(profile, prevalence))
    analytic_npv = float(npv_at(profile, prevalence))
    ppv_errs, npv_errs = [], []
    for seed in range(seeds):
        config = SimulationConfig(prevalence=prevalence, profile=profile, n=n, seed=seed)
        counts = simulate_population(config)
        try:
            ppv_errs.append(abs(float(counts.ppv()) - analytic_ppv))
            npv_errs.append(abs(float(counts.npv()) - analytic_npv))
        except UndefinedMetric:
            # A draw with no predictions of one sign; only possible for
            # tiny n at extreme prevalence, skip it.
            continue
    return sum(ppv_errs) / len(ppv_errs), sum(npv_errs) / len(npv_errs)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--prevalence", type=float, default=0.190743)
    parser.add_argument("--sensitivity", type=float, default=0.9)
    parser.add_argument("--specificity", type=float, default=0.95)
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument(
        "--sizes", type=int, nargs="+", default=[10**3, 10**4, 10**5, 10**6]
    )
    args = parser.parse_args()

    profile = DiagnosticProfile(args.sensitivity, args.specificity)
    print(
        f"prevalence={args.prevalence:g} sensitivity={args.sensitivity:g} "
        f"specificity={args.specificity:g} seeds={args.seeds}"
    )
    print(f"{'n':>10}  {'mean |ppv err|':>15}  {'mean |npv err|':>15}")
    for n in args.sizes:
        ppv_err, npv_err = mean_abs_errors(args.prevalence, profile, n, args.seeds)
        print(f"{n:>10}  {ppv_err:>15.6f}  {npv_err:>15.6f}")


if __name__ == "__main__":
    main()
