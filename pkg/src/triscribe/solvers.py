"""End-to-end inscription solvers.

Two algorithms:

* ``solve_similar`` sweeps the candidate sphere along the curve and watches an
  integer invariant, the winding number of the projected re-framed curve
  around (1, 0).  The invariant is 0 when the swept point is farthest from the
  base and nonzero when the sphere has shrunk inside the base point's clear
  ball, so it must change somewhere in between; bisection brackets the change,
  which certifies a sphere/curve crossing, and damped Newton polishes the
  crossing into an inscribed triangle.

* ``solve_equilateral`` anchors one vertex at the base point and tracks ratio
  paths: the planar curves of normalized side ratios.  The closed loop built
  from the farthest-point path and a near-base path winds once around the
  origin, so bisection on the anchor parameter brackets a path through the
  origin, i.e. an equilateral triangle.

Angle-window parameters are scanned over a fixed ladder rather than taking
limits, and both sufficient-condition checks warn instead of aborting.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .curve import _golden_max, row_norms
from .errors import (
    DegenerateConfigurationError,
    InvalidArgumentError,
    NoBracketError,
    NumericalDegeneracyError,
    RefineFailedError,
    SingularPathError,
)
from .frames import apply_frame, canonical_frame, cylindrical_project, third_vertex_sphere
from .shape import equilateral_shape, residuals
from .winding import PlanarPath, passes_through, winding_closed

EPSILON_LADDER = (0.2, 0.1, 0.05, 0.02, 0.01)
PROJECTION_BASE = np.array([1.0, 0.0])
THREADS_ENV = "INSCRIBED_TRI_THREADS"


@dataclass(frozen=True)
class SolveOptions:
    grid_size: int = 256
    angle_samples: int = 64
    ratio_samples: int = 1024
    residual_tol: float = 1e-9
    singular_tol: float = 1e-9
    dedupe_tol: float = 1e-4
    bisect_width: float = 1e-10
    epsilon_ladder: tuple = EPSILON_LADDER
    fallback_epsilon: float = 0.05
    max_newton_iters: int = 100


DEFAULT_OPTIONS = SolveOptions()


def _thread_cap():
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap <= 0:
        cap = min(os.cpu_count() or 1, 8)
    return max(1, cap)


def _ordered_map(fn, items):
    items = list(items)
    cap = _thread_cap()
    if cap == 1 or len(items) < 8:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))


def _param_distance(a, b):
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


# -- angle condition ---------------------------------------------------------


@dataclass(frozen=True)
class AngleConditionReport:
    """Chord-angle bounds near the base point at window half-width ``delta``.

    ``sup_outgoing`` is the largest angle between two chords from the base to
    points just past it; ``inf_straddling`` is the smallest angle between a
    chord just before the base and one just past it.  The sufficient condition
    for the sphere sweep is sup_outgoing < vertex angle < inf_straddling.
    """

    delta: float
    sup_outgoing: float
    inf_straddling: float
    vertex_angle: float | None = None
    satisfied: bool | None = None


def _unit_chords(curve, params, base):
    rel = curve.eval_many(params) - base
    norms = row_norms(rel)
    if np.any(norms < 1e-14 * max(curve.extent, 1.0)):
        raise DegenerateConfigurationError("curve revisits the base point inside the window")
    return rel / norms[:, None]


def chord_angle_bounds(curve, delta, samples=64):
    """Estimate the chord-angle bounds on a samples x samples grid.

    Grid nodes are offset by half a step so the open interval endpoints are
    never evaluated.
    """
    if not 0.0 < delta < 0.5:
        raise InvalidArgumentError("delta must lie in (0, 0.5)")
    if samples < 8:
        raise InvalidArgumentError("need at least 8 samples per axis")
    base = curve.origin
    offsets = (np.arange(samples) + 0.5) / samples * delta
    outgoing = _unit_chords(curve, offsets, base)
    incoming = _unit_chords(curve, 1.0 - delta + offsets, base)
    dots_out = np.clip(outgoing @ outgoing.T, -1.0, 1.0)
    dots_cross = np.clip(incoming @ outgoing.T, -1.0, 1.0)
    sup_outgoing = float(np.arccos(dots_out.min()))
    inf_straddling = float(np.arccos(dots_cross.max()))
    return AngleConditionReport(float(delta), sup_outgoing, inf_straddling)


def check_hypothesis(report, vertex_angle):
    """True when the angle condition certifies the sweep for this vertex angle."""
    return bool(report.sup_outgoing < vertex_angle < report.inf_straddling)


def completed_report(report, vertex_angle):
    return replace(
        report, vertex_angle=float(vertex_angle), satisfied=check_hypothesis(report, vertex_angle)
    )


# -- sphere winding invariant ------------------------------------------------


@dataclass(frozen=True)
class WindingSample:
    """Invariant value at one sweep parameter.

    ``singular`` means the projected curve passed through (1, 0) within
    tolerance, i.e. the curve touches the candidate sphere at this parameter;
    ``touch_param`` then locates the closest curve parameter.
    """

    t: float
    winding: int | None
    singular: bool
    touch_param: float | None = None

    @property
    def status(self):
        return "singular" if self.singular else "ok"


def _sphere_distance_fn(curve, sphere):
    center, radius, normal = sphere.center, sphere.radius, sphere.normal

    def dist(t):
        v = curve.eval(t) - center
        h = float(np.dot(v, normal))
        w_sq = max(float(np.dot(v, v)) - h * h, 0.0)
        return math.hypot(h, math.sqrt(w_sq) - radius)

    return dist


def _nearest_param_to_sphere(curve, sphere):
    v = curve.points - sphere.center
    h = v @ sphere.normal
    w = np.sqrt(np.maximum((v * v).sum(axis=1) - h * h, 0.0))
    d = np.hypot(h, w - sphere.radius)
    k = int(np.argmin(d))
    params = curve.params
    lo = params[k - 1] if k > 0 else params[curve.n_vertices - 1] - 1.0
    hi = params[k + 1]
    dist = _sphere_distance_fn(curve, sphere)
    t_star = _golden_max(lambda t: -dist(t), lo, hi)
    if dist(t_star) > d[k]:
        t_star = params[k]
    return float(np.mod(t_star, 1.0))


def sphere_winding(curve, t, shape, options=None):
    """Winding invariant of the projected, re-framed curve at sweep parameter t."""
    opts = options or DEFAULT_OPTIONS
    base = curve.origin
    p = curve.eval(t)
    if np.linalg.norm(p - base) < 1e-14 * max(curve.extent, 1.0):
        raise DegenerateConfigurationError("swept point coincides with the base point")
    sphere = third_vertex_sphere(base, p, shape)
    frame = canonical_frame(sphere)
    projected = cylindrical_project(apply_frame(frame, curve.points))
    path = PlanarPath(projected, closed=True)
    hit = passes_through(path, PROJECTION_BASE, opts.singular_tol)
    if hit is not None:
        return WindingSample(
            t=float(t),
            winding=None,
            singular=True,
            touch_param=_nearest_param_to_sphere(curve, sphere),
        )
    try:
        w = winding_closed(path, PROJECTION_BASE)
    except (SingularPathError, NumericalDegeneracyError):
        return WindingSample(
            t=float(t),
            winding=None,
            singular=True,
            touch_param=_nearest_param_to_sphere(curve, sphere),
        )
    return WindingSample(t=float(t), winding=w, singular=False)


def _param_at_distance(curve, target, lo, hi, samples=2048):
    """First parameter in [lo, hi] (modular, scanned from lo) where the
    distance to the base point crosses ``target``."""
    base = curve.origin
    ts = lo + (hi - lo) * np.arange(1, samples + 1) / samples
    d = row_norms(curve.eval_many(ts) - base)
    above = np.nonzero(d >= target)[0]
    if above.size == 0:
        raise DegenerateConfigurationError("curve never reaches the target distance in the window")
    k = int(above[0])
    t_lo = lo if k == 0 else ts[k - 1]
    t_hi = ts[k]
    for _ in range(80):
        mid = 0.5 * (t_lo + t_hi)
        if float(np.linalg.norm(curve.eval(mid) - base)) >= target:
            t_hi = mid
        else:
            t_lo = mid
    return float(np.mod(0.5 * (t_lo + t_hi), 1.0))


def near_base_param(curve, shape, epsilon):
    """Sweep-start parameter: where the candidate sphere sits inside the clear ball.

    The clear radius is half the minimum distance from the base to the curve
    outside the ``(1 - eps, eps)`` window; the sphere around the swept point at
    distance (clear radius) / ratio_oq lies entirely on that ball's boundary.
    """
    clear = 0.5 * curve.min_distance_excluding(curve.origin, (1.0 - epsilon, epsilon))
    target = clear / shape.ratio_oq
    return _param_at_distance(curve, target, 0.0, epsilon)


# -- similar-triangle solver ---------------------------------------------------


@dataclass(frozen=True)
class InscribedTriangle:
    """A found triangle: vertex parameters, points and ratio residuals."""

    t_p: float
    t_q: float
    point_o: np.ndarray
    point_p: np.ndarray
    point_q: np.ndarray
    residual_oq: float
    residual_pq: float

    @property
    def max_residual(self):
        return max(abs(self.residual_oq), abs(self.residual_pq))


@dataclass
class SweepResult:
    grid: list
    bracket: tuple | None
    crossings: list
    seeds: list
    t_far: float
    t_near: float
    epsilon: float


def sweep_similar(curve, shape, grid_size=256, epsilon=None, options=None):
    """Evaluate the invariant on a grid from the near-base parameter to the
    farthest parameter and bisect every change to a certified bracket."""
    opts = options or DEFAULT_OPTIONS
    if grid_size < 2:
        raise InvalidArgumentError("grid size must be at least 2")
    eps = float(epsilon) if epsilon is not None else opts.fallback_epsilon
    base = curve.origin
    t_far = curve.farthest_param(base)
    t_near = near_base_param(curve, shape, eps)
    if t_near >= t_far:
        raise NoBracketError(
            f"near-base parameter {t_near:.6g} does not precede the farthest parameter {t_far:.6g}"
        )
    ts = np.linspace(t_near, t_far, grid_size)

    def sample(t):
        try:
            return sphere_winding(curve, t, shape, opts)
        except DegenerateConfigurationError:
            return None

    grid = [s for s in _ordered_map(sample, ts) if s is not None]
    if len(grid) < 3:
        # Two samples sit on the provable anchor values; a change between them
        # cannot be separated from the anchors, so treat it as unresolved.
        raise NoBracketError(
            "grid too coarse to certify a bracket; increase the grid size", grid=grid
        )
    seeds = []
    bracket = None
    for s in grid:
        if s.singular:
            seeds.append((s.t, s.touch_param))
    for a, b in zip(grid[:-1], grid[1:]):
        if a.singular or b.singular:
            continue
        if a.winding == b.winding:
            continue
        lo, hi, w_lo = a.t, b.t, a.winding
        singular_mid = None
        while hi - lo > opts.bisect_width:
            mid = 0.5 * (lo + hi)
            ws = sample(mid)
            if ws is None or ws.singular:
                singular_mid = ws
                break
            if ws.winding == w_lo:
                lo = mid
            else:
                hi = mid
        if singular_mid is not None:
            seeds.append((singular_mid.t, singular_mid.touch_param))
            if bracket is None:
                bracket = (lo, hi)
            continue
        if bracket is None:
            bracket = (lo, hi)
        t0 = 0.5 * (lo + hi)
        sphere = third_vertex_sphere(base, curve.eval(t0), shape)
        seeds.append((t0, _nearest_param_to_sphere(curve, sphere)))
    if not seeds:
        raise NoBracketError(
            "no invariant change found on the sweep grid; increase the grid size",
            grid=grid,
        )
    return SweepResult(
        grid=grid,
        bracket=bracket,
        crossings=[],
        seeds=seeds,
        t_far=t_far,
        t_near=t_near,
        epsilon=eps,
    )


def _finite_difference_jacobian(fn, v, step=1e-7):
    jac = np.zeros((2, 2))
    for j in range(2):
        h = step * max(1.0, abs(v[j]))
        vp, vm = v.copy(), v.copy()
        vp[j] += h
        vm[j] -= h
        jac[:, j] = (fn(vp) - fn(vm)) / (2.0 * h)
    return jac


def refine_similar(curve, shape, t0, s0, options=None):
    """Damped Newton on the two ratio residuals, seeded from a bracket.

    Variables are the parameters of the swept vertex p and the third vertex q.
    Central finite differences handle the polyline kinks; if Newton stalls, a
    coordinate-wise golden-section pass restarts it.
    """
    opts = options or DEFAULT_OPTIONS
    base = curve.origin
    big = 1e6

    def g(v):
        try:
            res = residuals(shape, base, curve.eval(v[0]), curve.eval(v[1]))
        except DegenerateConfigurationError:
            return np.array([big, big])
        return np.asarray(res)

    v = np.array([float(t0), float(s0)])
    best_v, best_norm = v.copy(), float(np.max(np.abs(g(v))))
    stalls = 0
    for _ in range(opts.max_newton_iters):
        gv = g(v)
        norm = float(np.max(np.abs(gv)))
        if norm < best_norm:
            best_v, best_norm = v.copy(), norm
        if norm < 1e-13:
            break
        jac = _finite_difference_jacobian(g, v)
        try:
            step = np.linalg.solve(jac, gv)
        except np.linalg.LinAlgError:
            step = None
        moved = False
        if step is not None and np.all(np.isfinite(step)):
            lam = 1.0
            while lam >= 1.0 / 1024.0:
                trial = v - lam * step
                if float(np.max(np.abs(g(trial)))) < norm:
                    v = trial
                    moved = True
                    break
                lam *= 0.5
        if not moved:
            stalls += 1
            if stalls > 2:
                break
            for j in range(2):  # coordinate-wise fallback around the current iterate
                span = 1e-3 / (10 ** stalls)

                def line(x, j=j):
                    trial = v.copy()
                    trial[j] = x
                    return -float(np.max(np.abs(g(trial))))

                v[j] = _golden_max(line, v[j] - span, v[j] + span)
    gv = g(v)
    norm = float(np.max(np.abs(gv)))
    if norm < best_norm:
        best_v, best_norm = v.copy(), norm
    tol = opts.residual_tol * max(1.0, curve.extent)
    t_p = float(np.mod(best_v[0], 1.0))
    t_q = float(np.mod(best_v[1], 1.0))
    res = g(best_v)
    triangle = InscribedTriangle(
        t_p=t_p,
        t_q=t_q,
        point_o=base,
        point_p=curve.eval(t_p),
        point_q=curve.eval(t_q),
        residual_oq=float(res[0]),
        residual_pq=float(res[1]),
    )
    if best_norm > tol:
        raise RefineFailedError(
            f"refinement stalled at residual {best_norm:.3e} (tolerance {tol:.3e})",
            best=triangle,
        )
    return triangle


@dataclass
class SimilarOutcome:
    triangles: list
    hypothesis: AngleConditionReport | None
    sweep: SweepResult
    epsilon: float
    warnings: list


def _dedupe(triangles, tol):
    kept = []
    for tri in sorted(triangles, key=lambda tr: (tr.t_p, tr.t_q)):
        if any(
            _param_distance(tri.t_p, other.t_p) <= tol
            and _param_distance(tri.t_q, other.t_q) <= tol
            for other in kept
        ):
            continue
        kept.append(tri)
    return kept


def solve_similar(curve, shape, base_param=0.0, options=None):
    """Find triangles similar to ``shape`` inscribed in the curve with the
    distinguished vertex at the requested base parameter.

    The angle condition is sufficient, not necessary, so a failed check only
    warns.  Raises NoBracketError when the sweep sees no invariant change.
    """
    opts = options or DEFAULT_OPTIONS
    work = curve.with_base_param(base_param)
    warnings = []
    hypothesis = None
    epsilon = None
    for delta in opts.epsilon_ladder:
        try:
            report = chord_angle_bounds(work, delta, opts.angle_samples)
        except DegenerateConfigurationError as exc:
            warnings.append(f"angle scan at delta={delta} failed: {exc}")
            continue
        hypothesis = completed_report(report, shape.vertex_angle)
        if hypothesis.satisfied:
            epsilon = delta
            break
    if epsilon is None:
        epsilon = opts.fallback_epsilon
        warnings.append(
            "angle condition not certified on the ladder; continuing anyway "
            "(the condition is sufficient, not necessary)"
        )
    sweep = sweep_similar(work, shape, opts.grid_size, epsilon=epsilon, options=opts)
    triangles = []
    for t0, s0 in sweep.seeds:
        if s0 is None:
            continue
        try:
            triangles.append(refine_similar(work, shape, t0, s0, opts))
        except RefineFailedError as exc:
            warnings.append(str(exc))
    triangles = _dedupe(triangles, opts.dedupe_tol)
    sweep.crossings = triangles
    return SimilarOutcome(
        triangles=triangles,
        hypothesis=hypothesis,
        sweep=sweep,
        epsilon=epsilon,
        warnings=warnings,
    )


# -- equilateral solver via ratio paths ---------------------------------------


def check_strong_monotone(curve, epsilon, samples=32):
    """Test whether chord dot products are monotone across the base window.

    For each probe point p in the window, the function of the window parameter
    ``(gamma(t) - o) . (p - o)`` must be monotone in one direction over the
    whole modular window (either direction, independently per p).  A curve
    that folds back past the base fails: the dot product dips to zero at the
    base and rises again on both sides.
    """
    if not 0.0 < epsilon < 0.5:
        raise InvalidArgumentError("epsilon must lie in (0, 0.5)")
    if samples < 4:
        raise InvalidArgumentError("need at least 4 probe points")
    base = curve.origin
    n_grid = max(256, 8 * samples)
    taus = -epsilon + (np.arange(n_grid) + 0.5) * (2.0 * epsilon / n_grid)
    rel = curve.eval_many(np.mod(taus, 1.0)) - base
    dists = row_norms(rel)
    away = np.abs(taus) > epsilon / 8.0
    if np.any(dists[away] < 1e-13 * max(curve.extent, 1.0)):
        raise DegenerateConfigurationError("curve revisits the base point inside the window")
    sigmas = -epsilon + (np.arange(samples) + 0.5) * (2.0 * epsilon / samples)
    probes = curve.eval_many(np.mod(sigmas, 1.0)) - base
    values = rel @ probes.T  # (n_grid, samples)
    diffs = np.diff(values, axis=0)
    tol = 1e-12 * row_norms(probes) * max(dists.max(), 1e-300)
    non_decreasing = np.all(diffs >= -tol[None, :], axis=0)
    non_increasing = np.all(diffs <= tol[None, :], axis=0)
    return bool(np.all(non_decreasing | non_increasing))


def ratio_path(curve, s, samples=1024):
    """Planar path of normalized side ratios for anchor parameter ``s``.

    The path point at parameter t compares the triangle (o, gamma(s),
    gamma(s t)) against an equilateral: coordinates are the two side ratios
    minus one.  Starts exactly at (-1, 0) and ends exactly at (0, -1); it
    passes through the origin precisely at inscribed equilateral triangles.
    """
    if not 0.0 < s < 1.0:
        raise InvalidArgumentError("anchor parameter must lie in (0, 1)")
    if samples < 32:
        raise InvalidArgumentError("need at least 32 samples")
    base = curve.origin
    anchor = curve.eval(s)
    span = row_norms((anchor - base)[None, :])[0]
    if span < 1e-14 * max(curve.extent, 1.0):
        raise DegenerateConfigurationError("anchor point coincides with the base point")
    ts = np.linspace(0.0, 1.0, samples)
    pts = curve.eval_many(s * ts)
    r1 = row_norms(pts - base) / span
    r2 = row_norms(pts - anchor) / span
    return PlanarPath(np.column_stack([r1 - 1.0, r2 - 1.0]), closed=False)


def _ratio_loop(path_far, path_near):
    """Closed loop: far-anchor path followed by the reversed near-anchor path."""
    pts = np.vstack([path_far.points, path_near.points[::-1]])
    return PlanarPath(pts, closed=True)


def _loop_winding(curve, s_far, path_far, s, samples):
    loop = _ratio_loop(path_far, ratio_path(curve, s, samples))
    return winding_closed(loop, np.zeros(2))


@dataclass
class EquilateralOutcome:
    triangle: InscribedTriangle
    epsilon: float
    strongly_monotone: bool
    loop_winding: int | None
    s_far: float
    s_near: float
    warnings: list


def solve_equilateral(curve, base_param=0.0, options=None):
    """Inscribe an equilateral triangle with one vertex at the base point.

    Scans the window ladder for a strongly monotone window (warns and
    continues if none passes), verifies the reference loop winds once around
    the origin, bisects the anchor parameter to bracket a ratio path through
    the origin, and polishes with the shared Newton refiner.
    """
    opts = options or DEFAULT_OPTIONS
    work = curve.with_base_param(base_param)
    base = work.origin
    warnings = []
    epsilon = None
    for eps in opts.epsilon_ladder:
        try:
            if check_strong_monotone(work, eps):
                epsilon = eps
                break
        except DegenerateConfigurationError as exc:
            warnings.append(f"monotone scan at eps={eps} failed: {exc}")
    strongly_monotone = epsilon is not None
    if not strongly_monotone:
        epsilon = opts.fallback_epsilon
        warnings.append(
            "no strongly monotone window found on the ladder; continuing anyway"
        )
    s_far = work.farthest_param(base)
    clear = work.min_distance_excluding(base, (1.0 - epsilon, epsilon))
    target = clear / 3.0
    # The near anchor sits on the incoming window arm, just before the base:
    # its ratio path then traces everything outside that arm and stays clear
    # of the open third quadrant, which is what fixes the loop winding at 1.
    s_near = _param_at_distance(work, target, 1.0, 1.0 - epsilon)
    if not s_far < s_near:
        raise NoBracketError(
            f"farthest parameter {s_far:.6g} does not precede the near anchor {s_near:.6g}"
        )
    m = opts.ratio_samples
    path_far = ratio_path(work, s_far, m)
    try:
        loop_w = _loop_winding(work, s_far, path_far, s_near, m)
    except (SingularPathError, NumericalDegeneracyError):
        loop_w = None
    if loop_w != 1:
        warnings.append(
            f"reference loop winding is {loop_w!r}, expected 1; bisection may not be certified"
        )
    lo, hi = s_far, s_near
    w_hi = loop_w if loop_w is not None else 1
    s_hit = None
    while hi - lo > opts.bisect_width:
        mid = 0.5 * (lo + hi)
        try:
            w_mid = _loop_winding(work, s_far, path_far, mid, m)
        except (SingularPathError, NumericalDegeneracyError):
            s_hit = mid
            break
        if w_mid == w_hi:
            hi = mid
        else:
            lo = mid
    s_star = s_hit if s_hit is not None else 0.5 * (lo + hi)
    probe = ratio_path(work, s_star, max(m, 2048))
    t_star = float(np.argmin(row_norms(probe.points))) / (max(m, 2048) - 1)
    triangle = refine_similar(work, equilateral_shape(), s_star, s_star * t_star, opts)
    return EquilateralOutcome(
        triangle=triangle,
        epsilon=epsilon,
        strongly_monotone=strongly_monotone,
        loop_winding=loop_w,
        s_far=s_far,
        s_near=s_near,
        warnings=warnings,
    )
