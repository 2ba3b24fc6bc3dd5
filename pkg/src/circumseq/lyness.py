"""Cycle algebra for characteristic sequences of circumcenter iterations.

The squared-length ratios a_i = |p_i - p_{i+1}|^2 / (4 |p_{i+1} - p_{i+2}|^2)
measured along an iterated circumcenter sequence in R^d obey a Lyness-type
recurrence whose every orbit is (d+2)-periodic.  All of it reduces to
continuant polynomials: the alternating subset sums that turn the nested
fraction 1 - x_n/(1 - x_{n-1}/(...)) into a quotient of two polynomials.

A parameter vector here is the free prefix (a_1, ..., a_{d-1}) of one period;
the admissible domain consists of the positive vectors whose prefix
continuants all stay positive.  Coordinate positions are 1-based in every
user-facing argument, matching the x_1..x_{d-1} naming used throughout.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    ConstraintViolationError,
    DegenerateGeometryError,
    InvalidArgumentError,
    NumericalInstabilityError,
)

_log = logging.getLogger("circumseq.lyness")

__all__ = [
    "CharCycle",
    "MaxProductResult",
    "complete_cycle",
    "continuant",
    "continuant_prefixes",
    "cross_ratio",
    "cross_ratio_cycle",
    "cycle_product_sqrt",
    "in_param_domain",
    "is_critical_in_last",
    "lyness_orbit",
    "max_product",
    "maximize_product_numeric",
    "sample_param_domain",
    "solve_periodic",
]


def continuant(x) -> float:
    """Continuant polynomial C_n(x_1..x_n) with C_n = C_{n-1} - x_n C_{n-2}.

    C_0 = C_{-1} = 1 (the empty argument list gives 1).  Equivalently, the
    signed sum over all subsets of {1..n} with no two adjacent indices of the
    products of the selected x's, with sign (-1)^(subset size).
    """
    prev2 = prev1 = 1.0
    for xi in np.asarray(x, dtype=float).ravel():
        prev2, prev1 = prev1, prev1 - xi * prev2
    return float(prev1)


def continuant_prefixes(x) -> np.ndarray:
    """All prefix continuants [C_0, C_1(x_1), ..., C_n(x_1..x_n)]."""
    xs = np.asarray(x, dtype=float).ravel()
    out = np.empty(xs.size + 1)
    out[0] = 1.0
    prev2 = prev1 = 1.0
    for k, xi in enumerate(xs):
        prev2, prev1 = prev1, prev1 - xi * prev2
        out[k + 1] = prev1
    return out


def _as_params(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float).ravel()
    if arr.size < 1:
        raise InvalidArgumentError("parameter vector must have at least one entry (d >= 2)")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("parameters must be finite")
    return arr


def in_param_domain(a) -> bool:
    """True iff all entries and all prefix continuants are strictly positive."""
    arr = _as_params(a)
    if np.any(arr <= 0.0):
        return False
    return bool(np.all(continuant_prefixes(arr)[1:] > 0.0))


def _require_params(a) -> np.ndarray:
    arr = _as_params(a)
    if not in_param_domain(arr):
        raise ConstraintViolationError(
            "parameters are outside the admissible domain "
            "(need every entry and every prefix continuant positive)"
        )
    return arr


def sample_param_domain(d: int, rng, margin: float = 0.0) -> np.ndarray:
    """Draw an admissible parameter vector for dimension d.

    Coordinates are drawn sequentially: given the first k entries, the
    admissible values for the next one form the open interval
    (0, C_k/C_{k-1}), which is sampled uniformly.  A positive ``margin``
    shrinks each interval symmetrically to (margin, 1-margin) in relative
    coordinates, keeping samples away from the domain boundary.
    """
    if d < 2:
        raise InvalidArgumentError("dimension must be at least 2")
    if not 0.0 <= margin < 0.5:
        raise InvalidArgumentError("margin must lie in [0, 0.5)")
    a = np.empty(d - 1)
    prev2 = prev1 = 1.0
    for k in range(d - 1):
        bound = prev1 / prev2
        a[k] = bound * rng.uniform(margin, 1.0 - margin)
        prev2, prev1 = prev1, prev1 - a[k] * prev2
    return a


# ---------------------------------------------------------------------------
# cycle completion and the parameter-space product

@dataclass(frozen=True)
class CharCycle:
    """One full period (x_1, ..., x_{d+2}) of a characteristic sequence.

    product_sqrt is sqrt(x_1 * ... * x_{d+2}); scale_factor is the per-period
    similarity ratio 1 / (2^(d+2) * product_sqrt) of the matching geometry.
    """

    d: int
    values: np.ndarray
    product_sqrt: float
    scale_factor: float


def _cycle_parts(a: np.ndarray):
    f1 = continuant_prefixes(a)        # C over a_1..a_k
    f2 = continuant_prefixes(a[1:])    # C over a_2..a_k
    return f1, f2, float(np.prod(a))


def complete_cycle(a) -> CharCycle:
    """Extend an admissible prefix (a_1..a_{d-1}) to its full (d+2)-cycle.

    The three completing entries are quotients of prefix continuants:

        x_d   = C(a_1..a_{d-1}) / C(a_1..a_{d-2})
        x_d+1 = a_1...a_{d-1} / (C(a_1..a_{d-2}) * C(a_2..a_{d-1}))
        x_d+2 = C(a_1..a_{d-1}) / C(a_2..a_{d-1})
    """
    arr = _require_params(a)
    d = arr.size + 1
    f1, f2, prod_a = _cycle_parts(arr)
    x_d = f1[-1] / f1[-2]
    x_d1 = prod_a / (f1[-2] * f2[-1])
    x_d2 = f1[-1] / f2[-1]
    values = np.concatenate([arr, [x_d, x_d1, x_d2]])
    g = prod_a * f1[-1] / (f1[-2] * f2[-1])
    return CharCycle(
        d=d,
        values=values,
        product_sqrt=g,
        scale_factor=1.0 / (2.0 ** (d + 2) * g),
    )


def cycle_product_sqrt(a) -> float:
    """sqrt of the full-cycle product, as a closed form in the free prefix.

    Equals a_1...a_{d-1} * C(a_1..a_{d-1}) / (C(a_1..a_{d-2}) * C(a_2..a_{d-1})),
    which agrees with sqrt(prod(complete_cycle(a).values)).
    """
    arr = _require_params(a)
    f1, f2, prod_a = _cycle_parts(arr)
    return float(prod_a * f1[-1] / (f1[-2] * f2[-1]))


def lyness_orbit(a, n_terms: int) -> np.ndarray:
    """First n_terms of the orbit extending the prefix (a_1..a_{d-1}).

    Each new term is the continuant quotient C(w_1..w_{d-1}) / C(w_1..w_{d-2})
    of the window w of the previous d-1 terms, which is the numerically stable
    form of the nested-fraction recurrence.  Every orbit from an admissible
    prefix is (d+2)-periodic.
    """
    arr = _require_params(a)
    d = arr.size + 1
    if n_terms < d - 1:
        raise InvalidArgumentError(f"n_terms must be at least d-1 = {d - 1}")
    out = np.empty(n_terms)
    out[: d - 1] = arr
    for k in range(d - 1, n_terms):
        pref = continuant_prefixes(out[k - (d - 1) : k])
        if pref[-2] <= 0.0 or pref[-1] <= 0.0:
            raise NumericalInstabilityError(
                f"orbit continuant lost positivity at term {k + 1}; "
                "this cannot happen in exact arithmetic on the admissible domain"
            )
        out[k] = pref[-1] / pref[-2]
    return out


def is_critical_in_last(a, tol: float = 1e-9) -> bool:
    """True iff the completed cycle has x_d == x_{d+1} within tol.

    This is exactly the vanishing of the product's derivative in the last
    free coordinate a_{d-1}.
    """
    cyc = complete_cycle(a)
    return bool(abs(cyc.values[cyc.d - 1] - cyc.values[cyc.d]) <= tol)


# ---------------------------------------------------------------------------
# extremal product

@dataclass(frozen=True)
class MaxProductResult:
    """Closed-form maximum of the cycle product over the admissible domain.

    The maximum is attained at the all-equal vector (t_star, ..., t_star);
    r_min = 1 / (2^(d+2) * g_max) is the smallest similarity ratio any
    d-dimensional circumcenter iteration can realize.
    """

    t_star: float
    g_max: float
    r_min: float


def max_product(d: int) -> MaxProductResult:
    """Maximum of cycle_product_sqrt in dimension d, in closed form.

    t_star = (2 cos(pi/(d+2)))^-2,  g_max = (2 cos(pi/(d+2)))^-(d+2),
    r_min = cos(pi/(d+2))^(d+2).
    """
    if d < 2:
        raise InvalidArgumentError("dimension must be at least 2")
    c = math.cos(math.pi / (d + 2))
    return MaxProductResult(
        t_star=1.0 / (4.0 * c * c),
        g_max=1.0 / (2.0 * c) ** (d + 2),
        r_min=c ** (d + 2),
    )


def _coordinate_interval(a: np.ndarray, j: int):
    """Open admissible interval for coordinate j (0-based) with others fixed.

    Prefix continuants are linear in any single coordinate, so each
    constraint C(a_1..a_i) > 0 with i > j clips a half-line; the result is
    the intersection, or None when the remaining coordinates already violate
    a constraint that does not involve coordinate j.
    """
    lo, hi = 0.0, math.inf
    t0 = np.array(a, dtype=float)
    t1 = np.array(a, dtype=float)
    t0[j] = 0.0
    t1[j] = 1.0
    p0 = continuant_prefixes(t0)
    p1 = continuant_prefixes(t1)
    for i in range(1, j + 1):
        if p0[i] <= 0.0:
            return None
    for i in range(j + 1, a.size + 1):
        c0 = p0[i]
        c1 = p1[i] - c0
        if c1 == 0.0:
            if c0 <= 0.0:
                return None
            continue
        bound = -c0 / c1
        if c1 > 0.0:
            lo = max(lo, bound)
        else:
            hi = min(hi, bound)
    if not lo < hi:
        return None
    return lo, hi


def maximize_product_numeric(d: int, n_starts: int = 5, seed: int = 0):
    """Verify the closed-form maximum by coordinate ascent from random starts.

    Returns (params, value) for the best interior point found.  Each line
    search is a bounded 1-D maximization over the exact per-coordinate
    admissible interval.  This is a verification tool; max_product stays the
    source of truth.
    """
    if d < 2:
        raise InvalidArgumentError("dimension must be at least 2")
    rng = np.random.default_rng(seed)
    best_a = None
    best_g = -math.inf
    for _ in range(max(1, n_starts)):
        a = sample_param_domain(d, rng, margin=0.2)
        g = cycle_product_sqrt(a)
        for _sweep in range(500):
            g_before = g
            for j in range(a.size):
                interval = _coordinate_interval(a, j)
                if interval is None:
                    raise NumericalInstabilityError("ascent iterate left the admissible domain")
                lo, hi = interval
                pad = 1e-12 * (hi - lo)

                def neg(t, j=j):
                    trial = a.copy()
                    trial[j] = t
                    return -cycle_product_sqrt(trial)

                res = minimize_scalar(
                    neg, bounds=(lo + pad, hi - pad), method="bounded",
                    options={"xatol": 1e-13},
                )
                if -res.fun > g:
                    a[j] = float(res.x)
                    g = -float(res.fun)
            if g - g_before <= 1e-16 * max(g, 1e-300):
                break
        if g > best_g:
            best_g = g
            best_a = a.copy()
    _log.debug("numeric max for d=%d: %.17g at %s", d, best_g, best_a)
    return best_a, best_g


# ---------------------------------------------------------------------------
# the periodicity level set

def _scan_roots(phi, lo: float, hi: float, samples: int, iters: int) -> list[float]:
    grid = np.linspace(lo, hi, samples)
    vals = np.array([phi(s) for s in grid])
    roots = []
    for k in range(samples - 1):
        va, vb = vals[k], vals[k + 1]
        if va == 0.0:
            roots.append(float(grid[k]))
            continue
        if va * vb < 0.0:
            sa, sb = float(grid[k]), float(grid[k + 1])
            fa = va
            for _ in range(iters):
                mid = 0.5 * (sa + sb)
                fm = phi(mid)
                if fm == 0.0:
                    sa = sb = mid
                    break
                if fa * fm < 0.0:
                    sb = mid
                else:
                    sa, fa = mid, fm
            roots.append(0.5 * (sa + sb))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    deduped = []
    for r in roots:
        if not deduped or abs(r - deduped[-1]) > 1e-10:
            deduped.append(r)
    return deduped


def solve_periodic(d: int, fixed=None, samples: int = 1024, bisect_iters: int = 64):
    """Parameter vectors whose cycle product hits the periodicity level 2^-(d+2).

    A sequence built from such a vector has similarity ratio exactly 1 and is
    periodic with period 2d+4.  With ``fixed`` omitted the scan runs along
    the all-equal diagonal (s, ..., s) across its full admissible stretch,
    which passes through the symmetric maximizer; otherwise ``fixed`` must
    pin exactly d-2 of the d-1 coordinates as (position, value) pairs with
    1-based positions, and the scan runs along the one free coordinate.

    Returns the list of all sign-change roots found on the scanned segment,
    in increasing scan order; the list is empty when the segment never
    reaches the level (a no-solution result, not an error).
    """
    if d < 2:
        raise InvalidArgumentError("dimension must be at least 2")
    target = 0.5 ** (d + 2)

    if fixed is not None:
        pins = dict((int(i), float(v)) for i, v in (fixed.items() if hasattr(fixed, "items") else fixed))
        if len(pins) != d - 2:
            raise InvalidArgumentError(
                f"fixed must pin exactly d-2 = {d - 2} coordinates, got {len(pins)}"
            )
        if not all(1 <= i <= d - 1 for i in pins):
            raise InvalidArgumentError("fixed positions must lie in 1..d-1")
        free = [j for j in range(1, d) if j not in pins]
        j = free[0] - 1
        base = np.empty(d - 1)
        for i, v in pins.items():
            if v <= 0.0:
                return []
            base[i - 1] = v
        base[j] = 0.5
        interval = _coordinate_interval(base, j)
        if interval is None:
            _log.debug("fixed coordinates admit no admissible point")
            return []
        lo, hi = interval
        width = hi - lo

        def phi(s):
            trial = base.copy()
            trial[j] = s
            return cycle_product_sqrt(trial) - target

        roots = _scan_roots(phi, lo + 1e-9 * width, hi - 1e-9 * width, samples, bisect_iters)
        out = []
        for s in roots:
            vec = base.copy()
            vec[j] = s
            out.append(vec)
        return out

    # diagonal scan: find the admissible stretch of (s,...,s) by bisecting
    # the boundary above the symmetric maximizer, then sweep all of it
    t_star = max_product(d).t_star

    def diag(s):
        return np.full(d - 1, s)

    lo_f, hi_f = t_star, 1.0
    for _ in range(80):
        mid = 0.5 * (lo_f + hi_f)
        if in_param_domain(diag(mid)):
            lo_f = mid
        else:
            hi_f = mid
    s_hi = lo_f

    def phi(s):
        return cycle_product_sqrt(diag(s)) - target

    roots = _scan_roots(phi, 1e-9 * s_hi, s_hi * (1.0 - 1e-9), samples, bisect_iters)
    return [diag(s) for s in roots]


# ---------------------------------------------------------------------------
# cross-ratio parametrization

def cross_ratio(a: float, b: float, c: float, e: float, abs_floor: float = 1e-12) -> float:
    """(a-b)(c-e) / ((a-c)(b-e)).

    Raises when a denominator factor is within abs_floor of zero; a vanishing
    numerator is fine and simply gives 0.
    """
    if abs(a - c) <= abs_floor or abs(b - e) <= abs_floor:
        raise DegenerateGeometryError("cross-ratio denominator vanishes")
    return ((a - b) * (c - e)) / ((a - c) * (b - e))


def cross_ratio_cycle(values, abs_floor: float = 1e-12) -> np.ndarray:
    """Cyclic cross-ratios a_i of 4-term windows of a real tuple.

    For any n = d+2 reals (generic enough for the denominators), the result
    satisfies every cyclic length-d window identity C_d(a_i..a_{i+d-1}) = 0,
    i.e. it is a valid characteristic cycle up to the positivity constraints.
    """
    xs = np.asarray(values, dtype=float).ravel()
    n = xs.size
    if n < 4:
        raise InvalidArgumentError("need at least 4 values")
    return np.array(
        [
            cross_ratio(xs[i], xs[(i + 1) % n], xs[(i + 2) % n], xs[(i + 3) % n], abs_floor)
            for i in range(n)
        ]
    )
