#!/usr/bin/env python3
"""Regenerate the frozen regression anchors under tests/golden/.

These files pin down the exact output of the deterministic pipeline on the
bundled sample dataset. They are not external ground truth; they exist so a
change that silently alters results fails loudly. Regenerate only when an
intentional behavioral change is made, and review the diff.
"""

from __future__ import annotations

import json
from pathlib import Path

from cif.clustering import ClusteringParams
from cif.dataset import load_csv
from cif.jsonio import canonical_dumps
from cif.pairgrid import GridCache
from cif.report import build_analysis_report, resolve_source_pair
from cif.sampledata import default_dataset_bytes

GOLDEN_DIR = Path(__file__).resolve().parents[1] / "tests" / "golden"

SOURCE_X = "MDVP:Flo(Hz)"
SOURCE_Y = "MDVP:Fo(Hz)"
SOURCE_ROW = 10  # the recording with the lowest Fo + Flo sum (deep in the low-frequency cohort)


def main() -> int:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    dataset = load_csv(default_dataset_bytes())
    params = ClusteringParams(algorithm="kmeans", k=5, seed=42)
    cache = GridCache()

    features = tuple(n for n in dataset.numeric_names())
    key = resolve_source_pair(features, SOURCE_X, SOURCE_Y)
    labeling = cache.compute_pair(dataset, key, params, list(features))
    labels_path = GOLDEN_DIR / "fo_flo_kmeans_k5_seed42_labels.json"
    labels_path.write_text(json.dumps({
        "pair": [features[key.i], features[key.j]],
        "params": params.to_dict(),
        "n_clusters": labeling.n_clusters,
        "labels": [int(x) for x in labeling.labels],
    }, indent=0, sort_keys=True))
    print(f"wrote {labels_path}")

    report = build_analysis_report(
        dataset,
        params,
        SOURCE_X,
        SOURCE_Y,
        row_index=SOURCE_ROW,
        aggregation="max",
        ordering_method="olo",
        exclude=("status",),
        cache=cache,
        parallelism=8,
    )
    report_path = GOLDEN_DIR / "analysis_report.json"
    report_path.write_text(canonical_dumps(report))
    print(f"wrote {report_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
