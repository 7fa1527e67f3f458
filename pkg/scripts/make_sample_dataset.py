#!/usr/bin/env python3
"""Regenerate the bundled sample dataset (src/cif/data/parkinsons_synthetic.csv).

Produces a synthetic voice-measurement cohort with the same schema as the UCI
Parkinson's speech dataset: 195 recordings from 33 subjects, one categorical
`name` column, 22 numeric voice measures, and a binary `status` column
(147 rows at status=1, 48 at status=0).

The cohort has deliberate structure: three disease phenotypes and one healthy
group drive fundamental-frequency measures, and a shared severity factor drives
the perturbation / nonlinear-dynamics measures (HNR, DFA, PPE, spread1, ...),
so clusters found in one feature pair reappear across related pairs. The seed
is fixed; rerunning this script reproduces the file byte for byte.
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path

import numpy as np

SEED = 20250808

HEADER = [
    "name",
    "MDVP:Fo(Hz)", "MDVP:Fhi(Hz)", "MDVP:Flo(Hz)",
    "MDVP:Jitter(%)", "MDVP:Jitter(Abs)", "MDVP:RAP", "MDVP:PPQ", "Jitter:DDP",
    "MDVP:Shimmer", "MDVP:Shimmer(dB)", "Shimmer:APQ3", "Shimmer:APQ5",
    "MDVP:APQ", "Shimmer:DDA", "NHR", "HNR",
    "status", "RPDE", "DFA", "spread1", "spread2", "D2", "PPE",
]

# (group, n_subjects, recordings per subject)
# P1..P3 are disease phenotypes, H is the healthy group; three P1 subjects get
# one extra recording, so disease rows total 51 + 48 + 48 = 147, healthy 48.
GROUPS = [
    ("P1", 8, 6),   # low fundamental frequency, severe
    ("P2", 8, 6),   # mid fundamental frequency, moderate
    ("P3", 8, 6),   # high but unstable fundamental frequency
    ("H", 8, 6),    # healthy controls
]

FO_PARAMS = {  # group -> (fo_mean, fo_sd, flo_gap_mean, flo_gap_sd)
    "P1": (116.0, 8.0, 22.0, 6.0),
    "P2": (149.0, 9.0, 40.0, 9.0),
    "P3": (208.0, 14.0, 75.0, 16.0),
    "H": (181.0, 14.0, 25.0, 7.0),
}

SEVERITY = {  # group -> (mean, sd)
    "P1": (1.7, 0.22),
    "P2": (1.1, 0.22),
    "P3": (0.9, 0.28),
    "H": (0.0, 0.18),
}


def generate_rows(rng: np.random.Generator) -> list[list]:
    subjects = []
    for group, n_subjects, n_recordings in GROUPS:
        for _ in range(n_subjects):
            subjects.append((group, n_recordings))
    order = rng.permutation(len(subjects))
    # Three P1 subjects get one extra recording each (147 disease rows total).
    p1_subjects = [i for i, (g, _) in enumerate(subjects) if g == "P1"]
    extras = {i: 1 for i in p1_subjects[:3]}

    rows = []
    for subject_number, subject_idx in enumerate(order, start=1):
        group, n_recordings = subjects[subject_idx]
        n_recordings += extras.get(int(subject_idx), 0)
        fo_mean, fo_sd, gap_mean, gap_sd = FO_PARAMS[group]
        sev_mean, sev_sd = SEVERITY[group]
        base_fo = rng.normal(fo_mean, fo_sd)
        base_gap = abs(rng.normal(gap_mean, gap_sd)) + 4.0
        base_sev = rng.normal(sev_mean, sev_sd)
        status = 0 if group == "H" else 1
        for recording in range(1, n_recordings + 1):
            fo = base_fo + rng.normal(0.0, 3.5)
            flo = fo - (base_gap + abs(rng.normal(0.0, 4.0)))
            fhi = fo + abs(rng.normal(45.0, 22.0)) + (55.0 if group == "P3" else 0.0)
            sev = base_sev + rng.normal(0.0, 0.08)

            hnr = np.clip(24.5 - 5.2 * sev + rng.normal(0.0, 1.2), 8.0, 34.0)
            dfa = np.clip(0.652 + 0.065 * sev + rng.normal(0.0, 0.018), 0.55, 0.86)
            ppe = np.clip(0.115 + 0.105 * sev + rng.normal(0.0, 0.02), 0.04, 0.56)
            spread1 = np.clip(-6.9 + 1.55 * sev + rng.normal(0.0, 0.22), -8.0, -2.0)
            spread2 = np.clip(0.16 + 0.07 * sev + rng.normal(0.0, 0.025), 0.006, 0.46)
            rpde = np.clip(0.44 + 0.07 * sev + rng.normal(0.0, 0.045), 0.25, 0.69)
            d2 = np.clip(2.15 + 0.28 * sev + rng.normal(0.0, 0.16), 1.4, 3.7)

            jitter = max(0.0009, 0.0028 + 0.0033 * sev + rng.normal(0.0, 0.0011))
            jitter_abs = jitter / fo
            rap = jitter * max(0.30, 0.50 + rng.normal(0.0, 0.05))
            ppq = jitter * max(0.32, 0.53 + rng.normal(0.0, 0.05))
            ddp = 3.0 * rap

            shimmer = max(0.0095, 0.018 + 0.016 * sev + rng.normal(0.0, 0.005))
            shimmer_db = shimmer * (9.5 + rng.normal(0.0, 0.6))
            apq3 = shimmer * max(0.35, 0.52 + rng.normal(0.0, 0.04))
            apq5 = shimmer * max(0.40, 0.60 + rng.normal(0.0, 0.05))
            apq = shimmer * max(0.45, 0.70 + rng.normal(0.0, 0.06))
            dda = 3.0 * apq3
            nhr = max(0.0008, 0.005 + 0.012 * sev + rng.normal(0.0, 0.0035))

            rows.append([
                f"phon_R01_S{subject_number:02d}_{recording}",
                round(float(fo), 3), round(float(fhi), 3), round(float(flo), 3),
                round(float(jitter), 5), round(float(jitter_abs), 8),
                round(float(rap), 5), round(float(ppq), 5), round(float(ddp), 5),
                round(float(shimmer), 5), round(float(shimmer_db), 3),
                round(float(apq3), 5), round(float(apq5), 5),
                round(float(apq), 5), round(float(dda), 5),
                round(float(nhr), 5), round(float(hnr), 3),
                status,
                round(float(rpde), 6), round(float(dfa), 6),
                round(float(spread1), 6), round(float(spread2), 6),
                round(float(d2), 6), round(float(ppe), 6),
            ])
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=str(Path(__file__).resolve().parents[1] / "src/cif/data/parkinsons_synthetic.csv"),
    )
    args = parser.parse_args()

    rng = np.random.default_rng(SEED)
    rows = generate_rows(rng)
    assert len(rows) == 195, f"expected 195 rows, generated {len(rows)}"
    assert sum(r[17] for r in rows) == 147, "expected 147 rows at status=1"

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HEADER)
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
