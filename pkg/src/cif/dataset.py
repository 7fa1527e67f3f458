"""CSV ingestion, schema typing, per-feature statistics and normalizations.

A loaded dataset is immutable. Row indices are 0-based, dense, and refer to
the rows that survived listwise deletion; they are the universe every
cluster-membership comparison is computed over.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, field

import numpy as np

from .jsonio import format_float


class DatasetError(ValueError):
    """Raised when a CSV cannot be turned into a usable dataset."""


class UnknownFeatureError(DatasetError):
    """Raised when a feature name does not exist in the dataset."""


@dataclass(frozen=True)
class FeatureStats:
    min: float
    max: float
    mean: float
    std: float  # population std, ddof=0
    distinct_count: int


@dataclass(frozen=True)
class FeatureColumn:
    name: str
    kind: str  # "numeric" | "categorical"
    values: np.ndarray | tuple
    stats: FeatureStats | None = None


@dataclass(frozen=True)
class Histogram:
    feature: str
    bin_count: int
    edges: np.ndarray  # bin_count + 1 ascending values
    counts: np.ndarray  # bin_count nonnegative integers


@dataclass(frozen=True)
class Dataset:
    id: str
    n_rows: int
    columns: tuple[FeatureColumn, ...]
    dropped_rows: tuple[int, ...]
    _by_name: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        self._by_name.update({c.name: c for c in self.columns})

    def column(self, name: str) -> FeatureColumn:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownFeatureError(f"unknown feature {name!r}") from None

    def numeric_names(self) -> list[str]:
        return [c.name for c in self.columns if c.kind == "numeric"]

    def numeric_column(self, name: str) -> FeatureColumn:
        col = self.column(name)
        if col.kind != "numeric":
            raise DatasetError(f"feature {name!r} is categorical, not numeric")
        return col


def _parse_number(cell: str, decimal: str) -> float | None:
    """Return the cell's value as a finite float, or None if it is not one."""
    text = cell.strip()
    if decimal != ".":
        text = text.replace(decimal, ".")
    try:
        value = float(text)
    except ValueError:
        return None
    # Tokens like "nan"/"inf" parse but are not usable numeric data.
    return value if np.isfinite(value) else None


def _column_stats(values: np.ndarray) -> FeatureStats:
    return FeatureStats(
        min=float(values.min()),
        max=float(values.max()),
        mean=float(values.mean()),
        std=float(values.std(ddof=0)),
        distinct_count=int(np.unique(values).size),
    )


def load_csv(data: bytes, *, delimiter: str = ",", decimal: str = ".") -> Dataset:
    """Parse UTF-8 CSV bytes into a typed, statistics-annotated Dataset.

    A column is numeric iff every non-empty cell parses as a finite number;
    otherwise it is categorical. Rows with a missing cell in any numeric
    column are dropped (listwise deletion) and recorded in ``dropped_rows``
    by their original 0-based data-row index.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DatasetError(f"file is not valid UTF-8: {exc}") from None
    if not text.strip():
        raise DatasetError("empty file")

    rows = list(csv.reader(io.StringIO(text), delimiter=delimiter))
    if not rows:
        raise DatasetError("empty file")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise DatasetError(f"duplicate header names: {dupes}")
    body = rows[1:]
    if not body:
        raise DatasetError("empty dataset: the file contains a header but no data rows")
    width = len(header)
    for i, row in enumerate(body):
        if len(row) != width:
            raise DatasetError(f"row {i} has {len(row)} cells, expected {width}")

    # Type each column: numeric iff all non-empty cells parse.
    parsed: list[list[float | None] | None] = []
    for j in range(width):
        column: list[float | None] = []
        numeric = True
        for row in body:
            cell = row[j]
            if cell.strip() == "":
                column.append(None)
                continue
            value = _parse_number(cell, decimal)
            if value is None:
                numeric = False
                break
            column.append(value)
        parsed.append(column if numeric else None)

    numeric_idx = [j for j in range(width) if parsed[j] is not None]
    if not numeric_idx:
        raise DatasetError(
            "no numeric columns: cluster similarity analysis needs at least "
            "one column whose cells all parse as numbers"
        )

    dropped = [
        i for i in range(len(body))
        if any(parsed[j][i] is None for j in numeric_idx)  # type: ignore[index]
    ]
    keep = [i for i in range(len(body)) if i not in set(dropped)]
    if not keep:
        raise DatasetError("empty dataset: every row had a missing numeric cell")

    columns = []
    for j, name in enumerate(header):
        if parsed[j] is not None:
            values = np.array([parsed[j][i] for i in keep], dtype=np.float64)
            columns.append(FeatureColumn(name, "numeric", values, _column_stats(values)))
        else:
            values = tuple(body[i][j] for i in keep)
            columns.append(FeatureColumn(name, "categorical", values, None))

    dataset_id = hashlib.sha256(data).hexdigest()[:16]
    return Dataset(
        id=dataset_id,
        n_rows=len(keep),
        columns=tuple(columns),
        dropped_rows=tuple(dropped),
    )


def histogram(dataset: Dataset, feature: str, bins: int) -> Histogram:
    """Equal-width histogram over [min, max]; the last bin is right-closed."""
    if bins < 1:
        raise DatasetError(f"bins must be a positive integer, got {bins}")
    col = dataset.numeric_column(feature)
    values = col.values
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        hi = lo + 1.0  # widen a degenerate span so binning stays defined
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
    return Histogram(feature=feature, bin_count=bins, edges=edges, counts=counts)


def column_minmax(dataset: Dataset, feature: str) -> np.ndarray:
    """Min-max normalize a numeric column into [0, 1]; constant columns map to 0.5."""
    col = dataset.numeric_column(feature)
    values = col.values
    span = col.stats.max - col.stats.min
    if span == 0.0:
        return np.full(values.shape, 0.5)
    return (values - col.stats.min) / span


def zscore(dataset: Dataset, feature: str) -> np.ndarray:
    """Standardize a numeric column with population std; constant columns map to 0."""
    col = dataset.numeric_column(feature)
    values = col.values
    if col.stats.std == 0.0:
        return np.zeros(values.shape)
    return (values - col.stats.mean) / col.stats.std


def to_csv(dataset: Dataset) -> bytes:
    """Canonical CSV export: `,` delimiter, `.` decimal, 12 significant digits."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=",", lineterminator="\n")
    writer.writerow([c.name for c in dataset.columns])
    for i in range(dataset.n_rows):
        row = []
        for col in dataset.columns:
            if col.kind == "numeric":
                row.append(format_float(float(col.values[i])))
            else:
                row.append(col.values[i])
        writer.writerow(row)
    return buffer.getvalue().encode("utf-8")
