import numpy as np
import pytest

from cif.dataset import load_csv
from cif.sampledata import default_dataset_bytes


@pytest.fixture(scope="session")
def parkinsons_bytes():
    return default_dataset_bytes()


@pytest.fixture(scope="session")
def parkinsons(parkinsons_bytes):
    return load_csv(parkinsons_bytes)


def make_csv(columns: dict) -> bytes:
    """Build CSV bytes from {name: list of cell values}; None means missing."""
    import csv
    import io

    names = list(columns)
    n = len(next(iter(columns.values())))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for i in range(n):
        writer.writerow(["" if columns[c][i] is None else str(columns[c][i]) for c in names])
    return buf.getvalue().encode()


def make_dataset(columns: dict):
    return load_csv(make_csv(columns))


def random_blobs(rng: np.random.Generator, centers, n_per, sigma):
    """Gaussian blobs with ground-truth labels, rows interleaved."""
    points = []
    truth = []
    for label, center in enumerate(centers):
        points.append(rng.normal(loc=center, scale=sigma, size=(n_per, 2)))
        truth.extend([label] * n_per)
    pts = np.vstack(points)
    truth = np.array(truth)
    order = rng.permutation(len(pts))
    return pts[order], truth[order]
