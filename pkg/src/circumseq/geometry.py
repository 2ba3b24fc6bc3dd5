"""Euclidean primitives: affine rank, position predicates, circumcenters.

Points are plain float arrays; a point set is an (n, d) array, one point per
row.  All predicates run through one Tolerance policy (relative epsilon plus
absolute floor) instead of ad-hoc epsilons.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    ConstraintViolationError,
    DegenerateGeometryError,
    DimensionMismatchError,
    InvalidArgumentError,
)
from .lyness import continuant_prefixes
from .tolerance import DEFAULT_TOL, Tolerance

__all__ = [
    "CircumsphereResult",
    "affine_rank",
    "as_point_array",
    "circumcenter",
    "circumcenter_same_side",
    "circumradius_sq_from_lengths",
    "circumsphere_in_hull",
    "is_general_position",
    "is_good_position",
]


def as_point_array(points) -> np.ndarray:
    """Coerce to a float (n, d) array, rejecting ragged or non-finite input."""
    try:
        arr = np.asarray(points, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DimensionMismatchError(f"points do not form a rectangular array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatchError("points must form a non-empty (n, d) array")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("coordinates must be finite")
    return arr


def affine_rank(points, tol: Tolerance = DEFAULT_TOL) -> int:
    """Dimension of the affine hull: rank of the differences to the first point.

    Singular values below rel_eps times the largest count as zero.
    """
    pts = as_point_array(points)
    if pts.shape[0] == 1:
        return 0
    sv = np.linalg.svd(pts[1:] - pts[0], compute_uv=False)
    if sv[0] <= tol.abs_floor:
        return 0
    return int(np.count_nonzero(sv > tol.rel_eps * sv[0]))


def _min_pairwise_distance(pts: np.ndarray) -> float:
    gaps = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((gaps * gaps).sum(axis=-1))
    n = pts.shape[0]
    return float(dist[~np.eye(n, dtype=bool)].min())


def is_general_position(points, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the n points affinely span an (n-1)-dimensional hull.

    Requires n <= d+1 (more points can never qualify); coincident points
    (pairwise distance <= abs_floor) fail rather than raise.
    """
    pts = as_point_array(points)
    n, d = pts.shape
    if n > d + 1:
        raise InvalidArgumentError(f"{n} points in R^{d} cannot be in general position")
    if n == 1:
        return True
    if _min_pairwise_distance(pts) <= tol.abs_floor:
        return False
    return affine_rank(pts, tol) == n - 1


def is_good_position(points, tol: Tolerance = DEFAULT_TOL) -> bool:
    """General position plus the chained equidistance property.

    For each i >= 3, the distances from p_i to all earlier points must agree
    within rel_eps of their mean (earlier points lie on a sphere around the
    next one).  Any two distinct points qualify.
    """
    pts = as_point_array(points)
    n = pts.shape[0]
    if n < 2:
        raise InvalidArgumentError("good position needs at least 2 points")
    if not is_general_position(pts, tol):
        return False
    for i in range(2, n):
        dist = np.linalg.norm(pts[:i] - pts[i], axis=1)
        mean = float(dist.mean())
        if mean <= tol.abs_floor:
            return False
        if float(dist.max() - dist.min()) > tol.rel_eps * mean:
            return False
    return True


def circumcenter(points, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Circumcenter of exactly d+1 points spanning R^d.

    Solves the linear system 2 (p_i - p_1) . y = |p_i - p_1|^2 relative to the
    first point, which keeps the system well-scaled far from the origin.
    Raises DegenerateGeometryError when the simplex is (numerically) flat.
    """
    pts = as_point_array(points)
    n, d = pts.shape
    if n != d + 1:
        raise InvalidArgumentError(f"need exactly d+1 = {d + 1} points, got {n}")
    q = pts[1:] - pts[0]
    sv = np.linalg.svd(q, compute_uv=False)
    if sv[0] <= 0.0 or sv[-1] <= tol.rel_eps * sv[0]:
        raise DegenerateGeometryError("circumcenter system is singular (flat simplex)")
    try:
        y = np.linalg.solve(2.0 * q, np.einsum("ij,ij->i", q, q))
    except np.linalg.LinAlgError:
        raise DegenerateGeometryError("circumcenter system is singular (flat simplex)") from None
    center = pts[0] + y
    radii = np.linalg.norm(center - pts, axis=1)
    scale = max(float(radii.mean()), tol.abs_floor)
    if float(radii.max() - radii.min()) > tol.rel_eps * scale:
        raise DegenerateGeometryError("circumcenter equidistance failed (near-flat simplex)")
    return center


@dataclass(frozen=True)
class CircumsphereResult:
    """Circumsphere of n <= d+1 points inside their own affine hull."""

    center: np.ndarray
    radius: float
    hull_dimension: int


def _hull_basis(pts: np.ndarray, tol: Tolerance) -> np.ndarray:
    """Orthonormal basis (d, n-1) of the affine hull directions, rank-checked."""
    diffs = pts[1:] - pts[0]
    qmat, rmat, _ = scipy.linalg.qr(diffs.T, mode="economic", pivoting=True)
    diag = np.abs(np.diag(rmat))
    if diag[0] <= tol.abs_floor or diag[-1] <= tol.rel_eps * diag[0]:
        raise DegenerateGeometryError("points are affinely degenerate")
    return qmat


def circumsphere_in_hull(points, tol: Tolerance = DEFAULT_TOL) -> CircumsphereResult:
    """Center and radius of the unique sphere through n <= d+1 points,
    restricted to their affine hull.

    The points are projected onto an orthonormal hull basis (column-pivoted QR
    of the difference vectors), solved there as a full-dimensional circumcenter
    problem, and mapped back; the center therefore lies in the hull exactly up
    to rounding.
    """
    pts = as_point_array(points)
    n, d = pts.shape
    if n > d + 1:
        raise InvalidArgumentError(f"{n} points in R^{d} exceed hull capacity d+1")
    if n == 1:
        return CircumsphereResult(center=pts[0].copy(), radius=0.0, hull_dimension=0)
    basis = _hull_basis(pts, tol)
    coords = (pts[1:] - pts[0]) @ basis
    try:
        y = np.linalg.solve(2.0 * coords, np.einsum("ij,ij->i", coords, coords))
    except np.linalg.LinAlgError:
        raise DegenerateGeometryError("circumsphere system is singular") from None
    center = pts[0] + basis @ y
    radii = np.linalg.norm(center - pts, axis=1)
    radius = float(radii.mean())
    if float(radii.max() - radii.min()) > tol.rel_eps * max(radius, tol.abs_floor):
        raise DegenerateGeometryError("circumsphere equidistance failed")
    return CircumsphereResult(center=center, radius=radius, hull_dimension=n - 1)


def circumradius_sq_from_lengths(b, tol: Tolerance = DEFAULT_TOL) -> float:
    """Squared circumradius of a good-position set from its segment lengths.

    Takes the chained lengths b_1..b_{n-1} (b_i = |p_i - p_{i+1}|) and
    evaluates the continued fraction

        R^2 = (b_{n-1}^2 / 4) / (1 - a_{n-2} / (1 - ... / (1 - a_1)))

    with a_i = b_i^2 / (4 b_{i+1}^2), via the continuant quotient
    C(a_1..a_{n-3}) / C(a_1..a_{n-2}).  A single length gives b^2/4.
    """
    arr = np.asarray(b, dtype=float).ravel()
    if arr.size < 1:
        raise InvalidArgumentError("need at least one segment length")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise InvalidArgumentError("segment lengths must be finite and positive")
    if arr.size == 1:
        return float(0.25 * arr[0] ** 2)
    ratios = arr[:-1] ** 2 / (4.0 * arr[1:] ** 2)
    pref = continuant_prefixes(ratios)
    if np.any(pref <= 0.0):
        raise ConstraintViolationError(
            "length chain admits no circumsphere (non-positive prefix continuant)"
        )
    return float(0.25 * arr[-1] ** 2 * pref[-2] / pref[-1])


def circumcenter_same_side(points, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the hull-restricted circumcenter lies strictly on the same side
    of the hull of p_2..p_n as p_1 does.

    The separating functional is x -> u . (x - p_2) with u the component of
    p_1 - p_2 orthogonal to the directions of p_3..p_n from p_2; it is
    positive at p_1 by construction, so the test is one strict sign.
    """
    pts = as_point_array(points)
    n, _ = pts.shape
    if n < 2:
        raise InvalidArgumentError("need at least 2 points")
    result = circumsphere_in_hull(pts, tol)
    base = pts[1]
    u = pts[0] - base
    if n > 2:
        rest = pts[2:] - base
        qmat, _, _ = scipy.linalg.qr(rest.T, mode="economic", pivoting=True)
        u = u - qmat @ (qmat.T @ u)
    norm_u = float(np.linalg.norm(u))
    if norm_u <= tol.abs_floor:
        raise DegenerateGeometryError("first point lies in the hull of the others")
    return bool(float(u @ (result.center - base)) > 0.0)
