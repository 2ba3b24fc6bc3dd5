"""Building sequences with prescribed characteristic values.

Any admissible parameter prefix (a_1..a_{d-1}) is realized by an explicit
seed: place p_1 at the origin and p_2 on the first axis, then lift each next
point above the circumcenter of the previous ones, choosing the height so
the new common distance matches the length chain b_{i+1} = b_i/(2 sqrt(a_i)).
Parameter vectors on the periodicity level set then yield orbits with
similarity ratio 1 and period exactly 2d+4.
"""

from __future__ import annotations

import math

import numpy as np

from .engine import IcsSequence, SeedSimplex, generate
from .errors import ConstraintViolationError, InvalidArgumentError, NumericalInstabilityError
from .geometry import circumsphere_in_hull
from .lyness import _require_params, max_product, solve_periodic
from .tolerance import DEFAULT_TOL, Tolerance

__all__ = ["build_from_params", "build_periodic", "construct_seed"]


def construct_seed(a, b1: float = 1.0, tol: Tolerance = DEFAULT_TOL) -> SeedSimplex:
    """Canonical good-position seed realizing the characteristic prefix ``a``.

    p_1 = 0 and p_2 = b1 e_1; point i+1 sits at Q_i + h_i e_i where Q_i is the
    hull-restricted circumcenter of p_1..p_i and h_i = sqrt(b_i^2 - R_i^2)
    with the positive-axis sign.  Admissibility of ``a`` guarantees
    b_i > R_i, so the heights are real.
    """
    arr = _require_params(a)
    if not (math.isfinite(b1) and b1 > 0.0):
        raise InvalidArgumentError("b1 must be positive")
    d = arr.size + 1
    pts = np.zeros((d + 1, d))
    pts[1, 0] = b1
    b = b1
    for i in range(2, d + 1):
        sphere = circumsphere_in_hull(pts[:i], tol)
        b = b / (2.0 * math.sqrt(arr[i - 2]))
        h_sq = b * b - sphere.radius**2
        if h_sq <= 0.0:
            raise NumericalInstabilityError(
                f"height^2 = {h_sq:.3e} at point {i + 1}; admissible parameters "
                "guarantee positivity, so this indicates accumulated rounding"
            )
        pts[i] = sphere.center
        pts[i, i - 1] = math.sqrt(h_sq)
    return SeedSimplex.from_points(pts, tol)


def build_from_params(a, n_steps: int, b1: float = 1.0,
                      tol: Tolerance = DEFAULT_TOL) -> IcsSequence:
    """Construct the canonical seed for ``a`` and iterate n_steps times."""
    return generate(construct_seed(a, b1, tol), n_steps, tol)


def build_periodic(d: int, n_cycles: int, b1: float = 1.0,
                   tol: Tolerance = DEFAULT_TOL) -> IcsSequence:
    """A periodic sequence in dimension d covering n_cycles periods of 2d+4.

    Uses the level-set root closest to the symmetric maximizer (the most
    balanced choice numerically).  With n_cycles >= 2 the period is visible
    to detect_period and comes out as exactly 2d+4.
    """
    if n_cycles < 1:
        raise InvalidArgumentError("n_cycles must be at least 1")
    roots = solve_periodic(d)
    if not roots:
        raise ConstraintViolationError(
            f"no periodicity root found for d={d}; this should not happen"
        )
    t_star = max_product(d).t_star
    root = min(roots, key=lambda vec: abs(float(vec[0]) - t_star))
    return build_from_params(root, n_cycles * (2 * d + 4), b1, tol)
