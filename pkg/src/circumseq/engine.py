"""Forward iteration of the circumcenter map and orbit analysis.

A sequence is grown by appending, at every step, the circumcenter of the
last d+1 points.  Starting from d+1 points in good position, every window
stays in good position, consecutive segment lengths contract or expand by a
fixed similarity ratio r once per d+2 steps, and the whole orbit obeys the
affine law p_{i+d+2} = v - r p_i for a fixed shift vector v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import DegenerateGeometryError, InvalidArgumentError
from .geometry import as_point_array, circumcenter, is_general_position, is_good_position
from .tolerance import DEFAULT_TOL, Tolerance

__all__ = [
    "GROWTH_STOP_REL",
    "PERIOD_TOL_REL",
    "SHRINK_STOP_REL",
    "IcsAnalysis",
    "IcsSequence",
    "SeedSimplex",
    "analyze_sequence",
    "characteristic_sequence",
    "detect_period",
    "diameter",
    "empirical_scale_factor",
    "generate",
    "period_residual",
    "shift_vector",
    "special_offset",
    "step",
    "verify_ics",
]

# stop policy for generate(): keep outputs finite and meaningful
SHRINK_STOP_REL = 1e-9    # stop when a new segment falls below this x initial diameter
GROWTH_STOP_REL = 1e12    # stop when displacement from the seed exceeds this x initial diameter

PERIOD_TOL_REL = 1e-7     # default period-detection tolerance, relative to diameter


@dataclass(frozen=True)
class SeedSimplex:
    """d+1 points in good position: a valid starting window."""

    points: np.ndarray

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @classmethod
    def from_points(cls, points, tol: Tolerance = DEFAULT_TOL) -> "SeedSimplex":
        pts = as_point_array(points)
        n, d = pts.shape
        if n != d + 1:
            raise InvalidArgumentError(f"a seed needs exactly d+1 = {d + 1} points, got {n}")
        if not is_good_position(pts, tol):
            raise DegenerateGeometryError("seed points are not in good position")
        return cls(points=pts.copy())


@dataclass
class IcsSequence:
    """A generated or loaded circumcenter sequence.

    stop_reason is None for a complete run, otherwise a short human-readable
    note about why iteration was truncated (segment underflow / coordinate
    overflow).
    """

    d: int
    points: np.ndarray
    stop_reason: str | None = field(default=None)

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @cached_property
    def char_seq(self) -> np.ndarray:
        return characteristic_sequence(self.points)


@dataclass(frozen=True)
class IcsAnalysis:
    """Similarity law measured from a sequence.

    scale_factor and shift_vector realize p_{i+d+2} ~ v - r p_i;
    affine_residual is the worst deviation of that law, relative to the
    sequence diameter.  period is the smallest point-wise period (None when
    the sequence is not periodic at the tolerance), with its own residual.
    """

    scale_factor: float
    shift_vector: np.ndarray
    affine_residual: float
    period: int | None
    period_residual: float | None


def _points_of(seq) -> np.ndarray:
    if isinstance(seq, IcsSequence):
        return seq.points
    if isinstance(seq, SeedSimplex):
        return seq.points
    return as_point_array(seq)


def diameter(points) -> float:
    """Largest pairwise distance."""
    pts = _points_of(points)
    best = 0.0
    # row-chunked to keep the n^2 distance block small for long runs
    for start in range(0, pts.shape[0], 256):
        block = pts[start : start + 256]
        gaps = block[:, None, :] - pts[None, :, :]
        best = max(best, float(np.sqrt((gaps * gaps).sum(axis=-1)).max()))
    return best


def step(window, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """One application of the map: the circumcenter of the last d+1 points."""
    return circumcenter(window, tol)


def generate(seed, n_steps: int, tol: Tolerance = DEFAULT_TOL,
             require_good_position: bool = True) -> IcsSequence:
    """Iterate the circumcenter map n_steps times from a seed window.

    The seed is validated (good position by default; pass
    require_good_position=False to accept any general-position window, e.g.
    one cut from the middle of a longer sequence).  Iteration stops early,
    recording stop_reason, when segments fall below SHRINK_STOP_REL or the
    displacement from the seed exceeds GROWTH_STOP_REL times the initial
    diameter; a degenerate window raises instead, carrying the 1-based step
    index.
    """
    if isinstance(seed, SeedSimplex):
        pts = seed.points
    else:
        pts = as_point_array(seed)
        n, d = pts.shape
        if n != d + 1:
            raise InvalidArgumentError(f"a seed needs exactly d+1 = {d + 1} points, got {n}")
        if require_good_position:
            if not is_good_position(pts, tol):
                raise DegenerateGeometryError("seed points are not in good position")
        elif not is_general_position(pts, tol):
            raise DegenerateGeometryError("seed points are not in general position")
    if n_steps < 0:
        raise InvalidArgumentError("n_steps must be non-negative")
    d = pts.shape[1]
    diam0 = diameter(pts)
    out, status, count = _kernels.iterate_circumcenters(
        np.ascontiguousarray(pts, dtype=np.float64),
        int(n_steps),
        tol.rel_eps,
        SHRINK_STOP_REL * diam0,
        GROWTH_STOP_REL * diam0,
        pts.mean(axis=0),
    )
    steps_done = count - (d + 1)
    if status == _kernels.STATUS_DEGENERATE:
        raise DegenerateGeometryError(
            f"degenerate window at step {steps_done + 1}", step=steps_done + 1
        )
    reason = None
    if status == _kernels.STATUS_UNDERFLOW:
        reason = f"segment-underflow after {steps_done} steps"
    elif status == _kernels.STATUS_OVERFLOW:
        reason = f"coordinate-overflow after {steps_done} steps"
    points = np.array(out[:count]) if count < out.shape[0] else out
    return IcsSequence(d=d, points=points, stop_reason=reason)


def characteristic_sequence(seq, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Ratios a_i = |p_i - p_{i+1}|^2 / (4 |p_{i+1} - p_{i+2}|^2), i = 1..n-2.

    Similarity-invariant; raises on repeated consecutive points.
    """
    pts = _points_of(seq)
    if pts.shape[0] < 3:
        raise InvalidArgumentError("need at least 3 points")
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    if np.any(seg <= tol.abs_floor * max(float(seg.max()), 1.0)):
        raise DegenerateGeometryError("repeated consecutive points")
    return seg[:-1] ** 2 / (4.0 * seg[1:] ** 2)


def _dim_of(seq, pts: np.ndarray) -> int:
    return seq.d if isinstance(seq, IcsSequence) else pts.shape[1]


def empirical_scale_factor(seq, tol: Tolerance = DEFAULT_TOL) -> float:
    """Mean of |p_{i+d+2} - p_{i+d+3}| / |p_i - p_{i+1}| over all windows.

    This is the similarity ratio r; it equals 1/(2^(d+2) sqrt(a_1...a_{d+2}))
    for the characteristic values of any window of length d+2.
    """
    pts = _points_of(seq)
    d = _dim_of(seq, pts)
    if pts.shape[0] < d + 4:
        raise InvalidArgumentError(f"need at least d+4 = {d + 4} points")
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    if np.any(seg <= tol.abs_floor * max(float(seg.max()), 1.0)):
        raise DegenerateGeometryError("repeated consecutive points")
    return float(np.mean(seg[d + 2 :] / seg[: -(d + 2)]))


def shift_vector(seq, tol: Tolerance = DEFAULT_TOL):
    """Shift vector v of the affine law p_{i+d+2} = v - r p_i.

    Returns (v, residual) with v = p_{d+3} + r p_1 and residual the worst
    |p_{i+d+2} - (v - r p_i)| over the sequence, relative to its diameter.
    """
    pts = _points_of(seq)
    d = _dim_of(seq, pts)
    if pts.shape[0] < 2 * d + 5:
        raise InvalidArgumentError(f"need at least 2d+5 = {2 * d + 5} points")
    r = empirical_scale_factor(pts if not isinstance(seq, IcsSequence) else seq, tol)
    v = pts[d + 2] + r * pts[0]
    predicted = v - r * pts[: -(d + 2)]
    resid = float(np.linalg.norm(pts[d + 2 :] - predicted, axis=1).max())
    return v, resid / diameter(pts)


def period_residual(seq, m: int) -> float:
    """Worst |p_{i+m} - p_i| over the overlap, relative to the diameter."""
    pts = _points_of(seq)
    n = pts.shape[0]
    if not 1 <= m < n:
        raise InvalidArgumentError("shift must satisfy 1 <= m < n")
    resid = float(np.linalg.norm(pts[m:] - pts[:-m], axis=1).max())
    return resid / diameter(pts)


def detect_period(seq, tol_rel: float = PERIOD_TOL_REL) -> int | None:
    """Smallest m <= n/2 with every |p_{i+m} - p_i| below tol_rel x diameter.

    Returns None when no shift qualifies.  At least 2(2d+4) points are needed
    to be able to see the full period of a periodic orbit.
    """
    pts = _points_of(seq)
    n = pts.shape[0]
    diam = diameter(pts)
    if diam <= 0.0:
        raise DegenerateGeometryError("all points coincide")
    for m in range(1, n // 2 + 1):
        resid = float(np.linalg.norm(pts[m:] - pts[:-m], axis=1).max())
        if resid <= tol_rel * diam:
            return m
    return None


def analyze_sequence(seq, tol: Tolerance = DEFAULT_TOL,
                     period_tol_rel: float = PERIOD_TOL_REL) -> IcsAnalysis:
    """Measure the similarity law and periodicity of a sequence."""
    pts = _points_of(seq)
    v, affine_resid = shift_vector(seq, tol)
    r = empirical_scale_factor(seq, tol)
    period = detect_period(pts, period_tol_rel)
    p_resid = period_residual(pts, period) if period is not None else None
    return IcsAnalysis(
        scale_factor=r,
        shift_vector=v,
        affine_residual=affine_resid,
        period=period,
        period_residual=p_resid,
    )


def verify_ics(points, tol: Tolerance = DEFAULT_TOL, rel_tol: float = 1e-8) -> None:
    """Check that each point past the first window is the circumcenter of the
    d+1 points before it, within rel_tol of the local radius.

    Raises DegenerateGeometryError (with the offending index) otherwise.
    """
    pts = as_point_array(points)
    n, d = pts.shape
    if n < d + 1:
        raise DegenerateGeometryError(f"need at least d+1 = {d + 1} points, got {n}")
    for i in range(d + 1, n):
        window = pts[i - (d + 1) : i]
        try:
            center = circumcenter(window, tol)
        except DegenerateGeometryError as exc:
            raise DegenerateGeometryError(
                f"window ending at point {i} is degenerate: {exc}", step=i
            ) from None
        radius = float(np.linalg.norm(center - window[0]))
        if float(np.linalg.norm(center - pts[i])) > rel_tol * max(radius, tol.abs_floor):
            raise DegenerateGeometryError(
                f"point {i + 1} is not the circumcenter of its window", step=i
            )


def special_offset(points, tol: Tolerance = DEFAULT_TOL) -> int:
    """Index shift after which the sequence starts with a good-position window.

    0 when the first d+1 points already qualify; otherwise d-1 (any valid
    circumcenter iteration is in good position from there on).  Raises when
    neither window qualifies.
    """
    pts = as_point_array(points)
    n, d = pts.shape
    if n < d + 1:
        raise DegenerateGeometryError(f"need at least d+1 = {d + 1} points, got {n}")
    if is_good_position(pts[: d + 1], tol):
        return 0
    shift = d - 1
    if n < shift + d + 1:
        raise DegenerateGeometryError(
            f"need at least 2d = {shift + d + 1} points to reach the good-position tail"
        )
    if is_good_position(pts[shift : shift + d + 1], tol):
        return shift
    raise DegenerateGeometryError("sequence never reaches a good-position window")
