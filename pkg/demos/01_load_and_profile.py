"""
Loading a CSV and profiling its features
========================================

Every analysis starts from an immutable Dataset: typed columns, per-feature
statistics, and two normalizations (column min-max for heatmap coloring,
z-scores for clustering).
"""

from cif import column_minmax, default_dataset_bytes, histogram, load_csv, zscore

dataset = load_csv(default_dataset_bytes())
print(f"dataset {dataset.id}: {dataset.n_rows} rows, {len(dataset.columns)} columns")
print(f"dropped rows (missing numeric cells): {list(dataset.dropped_rows) or 'none'}")

# Columns whose every non-empty cell parses as a number are numeric; the rest
# are categorical and stay out of the pair grid.
for column in dataset.columns[:6]:
    if column.kind == "numeric":
        s = column.stats
        print(f"  {column.name:18s} numeric      min={s.min:10.4f} max={s.max:10.4f} "
              f"mean={s.mean:10.4f} std={s.std:8.4f}")
    else:
        print(f"  {column.name:18s} categorical  ({len(set(column.values))} distinct values)")
print(f"  ... {len(dataset.columns) - 6} more")

# The condensed view of the UI draws a mini histogram per feature.
h = histogram(dataset, "MDVP:Fo(Hz)", bins=12)
peak = max(h.counts)
print("\nMDVP:Fo(Hz) distribution:")
for lo, hi, count in zip(h.edges, h.edges[1:], h.counts):
    bar = "#" * round(40 * count / peak)
    print(f"  [{lo:7.1f}, {hi:7.1f}) {count:4d} {bar}")

# Min-max normalization backs the heatmap coloring; z-scores feed clustering.
print("\nfirst five rows of MDVP:Fo(Hz), three ways:")
raw = dataset.column("MDVP:Fo(Hz)").values
print("  raw:    ", [round(v, 2) for v in raw[:5]])
print("  min-max:", [round(v, 3) for v in column_minmax(dataset, "MDVP:Fo(Hz)")[:5]])
print("  z-score:", [round(v, 3) for v in zscore(dataset, "MDVP:Fo(Hz)")[:5]])
