"""Shared fixtures and independent oracle helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from circumseq import circumsphere_in_hull


@pytest.fixture
def rng():
    """Deterministic random generator; tests that need independent streams
    build their own with explicit seeds."""
    return np.random.default_rng(0x5EED)


@pytest.fixture
def announce(capsys):
    """Print a line straight to the terminal, bypassing pytest capture."""

    def _announce(line: str) -> None:
        with capsys.disabled():
            print(line)

    return _announce


def continuant_bruteforce(xs) -> float:
    """Independent oracle: signed sum over index subsets of {0,...,n-1}
    containing no two adjacent indices; the empty subset contributes +1.
    """
    xs = list(xs)
    n = len(xs)
    total = 0.0
    for mask in range(1 << n):
        if mask & (mask >> 1):  # adjacent pair selected
            continue
        term = 1.0
        bits = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                term *= xs[i]
                bits += 1
            m >>= 1
            i += 1
        total += -term if bits & 1 else term
    return total


def nested_fraction(xs) -> float:
    """Literal evaluation of 1 - x_n/(1 - x_{n-1}/(... (1 - x_1))).

    Innermost level uses x_1, so iterate in given order.
    """
    val = 1.0
    for x in xs:
        val = 1.0 - x / val
    return val


def random_rotation(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-ish random orthogonal matrix via QR with sign fixing."""
    mat = rng.standard_normal((d, d))
    q, r = np.linalg.qr(mat)
    return q * np.sign(np.diag(r))


def random_good_position(rng: np.random.Generator, d: int, n: int) -> np.ndarray:
    """n <= d+1 points in good position in R^d, randomly rotated and shifted.

    Construction: place each new point on the axis through the circumcenter
    of the previous points, at a height comparable to their circumradius so
    the chained equidistance holds by construction and stays well scaled.
    """
    if not 2 <= n <= d + 1:
        raise ValueError("need 2 <= n <= d+1")
    pts = np.zeros((n, d))
    pts[1, 0] = rng.uniform(0.5, 2.0)
    for i in range(2, n):
        sphere = circumsphere_in_hull(pts[:i])
        height = rng.uniform(0.2, 2.0) * sphere.radius
        pts[i] = sphere.center
        pts[i, i - 1] = height
    shift = rng.uniform(-3.0, 3.0, size=d)
    return pts @ random_rotation(rng, d).T + shift
