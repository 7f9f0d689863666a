import numpy as np
import pytest

from triscribe import Curve, make_curve


@pytest.fixture(scope="session")
def circle4096():
    return make_curve("circle", samples=4096)


@pytest.fixture(scope="session")
def ellipse4096():
    return make_curve("ellipse", samples=4096, a=2, b=1)


@pytest.fixture()
def unit_square():
    return Curve([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])


def modular_distance(a, b):
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def pair_distance_unordered(a, b):
    """Distance between parameter pairs, invariant to vertex order."""
    keep = max(modular_distance(a[0], b[0]), modular_distance(a[1], b[1]))
    swap = max(modular_distance(a[0], b[1]), modular_distance(a[1], b[0]))
    return min(keep, swap)


def polyline_distance(curve, x):
    """Brute-force distance from a point to every polyline segment."""
    pts = np.vstack([curve.points, curve.points[:1]])
    a, b = pts[:-1], pts[1:]
    ab = b - a
    denom = (ab * ab).sum(axis=1)
    s = np.clip(((x - a) * ab).sum(axis=1) / denom, 0.0, 1.0)
    closest = a + s[:, None] * ab
    return float(np.linalg.norm(closest - x, axis=1).min())
