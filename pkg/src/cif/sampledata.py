"""Bundled sample dataset: a synthetic voice-measurement cohort.

The file mirrors the schema of the UCI Parkinson's speech dataset (195
recordings, a categorical `name` column, 22 numeric voice measures plus a
binary `status` column) and is generated with a fixed seed so it never
changes between installs. See scripts/make_sample_dataset.py for how the
cohort structure is constructed.
"""

from __future__ import annotations

from pathlib import Path

DEFAULT_DATASET_NAME = "parkinsons_synthetic.csv"


def default_dataset_path() -> Path:
    return Path(__file__).parent / "data" / DEFAULT_DATASET_NAME


def default_dataset_bytes() -> bytes:
    return default_dataset_path().read_bytes()
