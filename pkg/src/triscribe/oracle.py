"""Brute-force ground truth for tests: exhaustive residual scans and an
independent ray-crossing winding evaluator.  Not part of the shipped API
surface; not built for speed."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import row_norms
from .errors import InvalidArgumentError

MAX_GRID = 1024
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class GridOptimum:
    t_best: float
    s_best: float
    residual_inf: float  # max of the two absolute residuals at the optimum
    grid_step: float


def brute_force_similar(curve, shape, grid_size=512):
    """Exhaustive residual scan over a grid_size^2 parameter lattice.

    Returns the lattice minimizer of the max-abs residual; ties go to the
    lexicographically smallest (t, s).
    """
    if grid_size < 64:
        raise InvalidArgumentError("oracle grid must be at least 64")
    if grid_size > MAX_GRID:
        raise InvalidArgumentError(f"oracle grid capped at {MAX_GRID}")
    g = int(grid_size)
    ts = (np.arange(g) + 0.5) / g
    pts = curve.eval_many(ts)
    base = curve.origin
    d_base = row_norms(pts - base)
    diff = pts[:, None, :] - pts[None, :, :]
    d_cross = np.sqrt((diff * diff).sum(axis=-1))
    res_oq = np.abs(d_base[None, :] / d_base[:, None] - shape.ratio_oq)
    res_pq = np.abs(d_cross / d_base[:, None] - shape.ratio_pq)
    worst = np.maximum(res_oq, res_pq)
    np.fill_diagonal(worst, np.inf)
    flat = int(np.argmin(worst))  # argmin returns the first (lexicographic) minimizer
    i, j = divmod(flat, g)
    return GridOptimum(
        t_best=float(ts[i]),
        s_best=float(ts[j]),
        residual_inf=float(worst[i, j]),
        grid_step=1.0 / g,
    )


def winding_by_crossing_count(path, base, max_attempts=16):
    """Signed crossings of a ray from ``base``: the classical winding count.

    The ray direction steps through golden-angle rotations until no vertex
    sits on the ray line, then counts transversal crossings with sign.
    """
    pts = np.asarray(path.points, dtype=float)
    base = np.asarray(base, dtype=float)
    pts = np.vstack([pts, pts[:1]])
    rel = pts - base
    span = rel.max(axis=0) - rel.min(axis=0)
    tiny = 1e-12 * max(float(np.hypot(span[0], span[1])), 1e-300)
    for attempt in range(max_attempts):
        ang = attempt * _GOLDEN_ANGLE
        ca, sa = math.cos(ang), math.sin(ang)
        x = ca * rel[:, 0] + sa * rel[:, 1]
        y = -sa * rel[:, 0] + ca * rel[:, 1]
        if np.any(np.abs(y) <= tiny):
            continue
        x0, y0 = x[:-1], y[:-1]
        x1, y1 = x[1:], y[1:]
        straddles = (y0 < 0.0) != (y1 < 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            cross_x = x0 + (-y0) * (x1 - x0) / (y1 - y0)
        hits = straddles & (cross_x > 0.0)
        signs = np.where(y1 > y0, 1, -1)
        return int(np.sum(signs[hits]))
    raise InvalidArgumentError("could not find a ray avoiding all path vertices")
