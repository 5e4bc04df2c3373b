#!/usr/bin/env python3
"""Emit the worked-example curve datasets into a directory.

Writes, for two reference profiles:

  curves_a0.6_b0.95.csv        predictive-value + curvature curves
  curves_a0.6_b0.95.csv.json   threshold sidecar
  curves_a0.9_b0.95.csv
  curves_a0.9_b0.95.csv.json
  ratio_curves_a0.9_b0.95.csv  accuracy-ratio curves (f1, f0.5, f2, fm)

The first profile's kappa_ppv column peaks near phi = 0.224; the second
has thresholds near 0.1907 and 0.7550, which the sidecars record
exactly. Plot phi against any column to see the knees.
"""

import argparse
from pathlib import Path

from prevthresh import DiagnosticProfile, emit_curves, emit_ratio_curves, threshold_summary


def write_curves(profile: DiagnosticProfile, step: float, outdir: Path) -> Path:
    a, b = float(profile.sensitivity), float(profile.specificity)
    path = outdir / f"curves_a{a:g}_b{b:g}.csv"
    with open(path, "w", encoding="utf-8", newline="") as sink, open(
        f"{path}.json", "w", encoding="utf-8", newline=""
    ) as sidecar:
        rows = emit_curves(profile, step, sink, sidecar=sidecar)
    print(f"wrote {path} ({rows} rows) and {path}.json")
    return path


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("curve_datasets"))
    parser.add_argument("--step", type=float, default=0.001, help="prevalence grid step")
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    moderate = DiagnosticProfile(0.6, 0.95)
    strong = DiagnosticProfile(0.9, 0.95)
    write_curves(moderate, args.step, args.outdir)
    write_curves(strong, args.step, args.outdir)

    ratio_path = args.outdir / "ratio_curves_a0.9_b0.95.csv"
    with open(ratio_path, "w", encoding="utf-8", newline="") as sink:
        rows = emit_ratio_curves(strong, [0.5, 2.0], args.step, sink)
    print(f"wrote {ratio_path} ({rows} rows)")

    for profile in (moderate, strong):
        s = threshold_summary(profile)
        print(
            f"a={s['sensitivity']:g} b={s['specificity']:g}: "
            f"phi_e={s['phi_e']:.6f} phi_n={s['phi_n']:.6f}"
        )


if __name__ == "__main__":
    main()
