"""Tests for sequence generation, analysis, and the iteration kernels."""

from __future__ import annotations

import math

import numpy as np
import pytest

from circumseq import (
    BACKEND,
    DegenerateGeometryError,
    InvalidArgumentError,
    IcsSequence,
    SeedSimplex,
    analyze_sequence,
    build_from_params,
    build_periodic,
    characteristic_sequence,
    complete_cycle,
    detect_period,
    diameter,
    empirical_scale_factor,
    generate,
    lyness_orbit,
    period_residual,
    sample_param_domain,
    shift_vector,
    special_offset,
    step,
    verify_ics,
)
from conftest import random_good_position, random_rotation

# the canonical d=2 hand run: seed (0,0), (1,0), (0.5,0.5), all ratios 1/2
D2_SEED = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 0.5]])
D2_NEXT = [
    [0.5, 0.0],
    [0.75, 0.25],
    [0.5, 0.25],
    [0.625, 0.125],
    [0.625, 0.25],
]


# ---------------------------------------------------------------------------
# single step and basic generation


def test_step_hand_values():
    np.testing.assert_allclose(step(D2_SEED), [0.5, 0.0], atol=1e-14)
    np.testing.assert_allclose(
        step([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]), [1.0, 1.0], atol=1e-14
    )


def test_generate_d2_hand_run():
    seed = SeedSimplex.from_points(D2_SEED)
    seq = generate(seed, 5)
    assert isinstance(seq, IcsSequence)
    assert len(seq) == 8
    assert seq.stop_reason is None
    np.testing.assert_allclose(seq.points[3:], D2_NEXT, atol=1e-12)
    np.testing.assert_allclose(seq.char_seq, np.full(6, 0.5), atol=1e-12)


def test_generate_zero_steps():
    seq = generate(SeedSimplex.from_points(D2_SEED), 0)
    assert len(seq) == 3
    np.testing.assert_allclose(seq.points, D2_SEED)


def test_generate_validates_seed():
    with pytest.raises(InvalidArgumentError):
        generate(SeedSimplex.from_points(D2_SEED), -1)
    # collinear seed: not even general position
    with pytest.raises(DegenerateGeometryError):
        SeedSimplex.from_points([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
    # general but not good position is rejected by default ...
    skew = np.array([[0.0, 0.0], [1.0, 0.0], [0.9, 0.9]])
    with pytest.raises(DegenerateGeometryError):
        generate(skew, 4)
    # ... but allowed when asked: the run becomes special after d-1 steps
    seq = generate(skew, 8, require_good_position=False)
    assert len(seq) == 11
    assert special_offset(seq.points) == 1


def test_generate_accepts_raw_points():
    seq = generate(D2_SEED, 3)
    assert len(seq) == 6


# ---------------------------------------------------------------------------
# characteristic sequence


def test_characteristic_sequence_values():
    seq = generate(D2_SEED, 6)
    cs = characteristic_sequence(seq)
    np.testing.assert_allclose(cs, np.full(7, 0.5), atol=1e-12)
    # a_i = |p_i - p_{i+1}|^2 / (4 |p_{i+1} - p_{i+2}|^2) literal check
    pts = seq.points
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    np.testing.assert_allclose(cs, seg[:-1] ** 2 / (4.0 * seg[1:] ** 2), rtol=1e-12)


def test_characteristic_sequence_similarity_invariant():
    rng = np.random.default_rng(123)
    p = sample_param_domain(4, rng, margin=0.1)
    seq = build_from_params(p, 14)
    cs = seq.char_seq
    rot = random_rotation(rng, 4)
    mapped = 2.75 * (seq.points @ rot.T) + rng.uniform(-5, 5, size=4)
    cs2 = characteristic_sequence(mapped)
    np.testing.assert_allclose(cs2, cs, rtol=1e-9)


def test_characteristic_sequence_rejects_repeats():
    with pytest.raises(DegenerateGeometryError):
        characteristic_sequence([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(InvalidArgumentError):
        characteristic_sequence([[0.0, 0.0], [1.0, 0.0]])


def test_round_trip_matches_orbit():
    rng = np.random.default_rng(321)
    for d in (2, 3, 4):
        p = sample_param_domain(d, rng, margin=0.05)
        seq = build_from_params(p, 3 * (d + 2))
        orb = lyness_orbit(p, len(seq) - 2)
        np.testing.assert_allclose(seq.char_seq, orb, rtol=1e-9)


# ---------------------------------------------------------------------------
# scale factor, shift vector, affine law


def test_empirical_scale_factor_d2():
    seq = generate(D2_SEED, 9)
    assert empirical_scale_factor(seq) == pytest.approx(0.25, rel=1e-10)


def test_empirical_scale_factor_matches_cycle():
    rng = np.random.default_rng(111)
    for d in (2, 3, 5):
        p = sample_param_domain(d, rng, margin=0.05)
        seq = build_from_params(p, 3 * (d + 2))
        r_th = complete_cycle(p).scale_factor
        assert empirical_scale_factor(seq) == pytest.approx(r_th, rel=1e-8)


def test_shift_vector_d2():
    seq = generate(D2_SEED, 9)
    v, resid = shift_vector(seq)
    np.testing.assert_allclose(v, [0.75, 0.25], atol=1e-10)
    assert resid <= 1e-10


def test_shift_vector_translation_covariance():
    # translating the whole sequence by w moves v to v + (1+r) w
    seq = generate(D2_SEED, 9)
    v, _ = shift_vector(seq)
    w = np.array([2.0, -3.0])
    v2, resid2 = shift_vector(seq.points + w)
    r = empirical_scale_factor(seq)
    np.testing.assert_allclose(v2, v + (1.0 + r) * w, atol=1e-9)
    assert resid2 <= 1e-9


def test_affine_law_parallel_segments():
    # p_{i+d+2} - p_{i+d+3} is antiparallel to p_i - p_{i+1}, scaled by r
    rng = np.random.default_rng(222)
    d = 3
    p = sample_param_domain(d, rng, margin=0.05)
    seq = build_from_params(p, 3 * (d + 2))
    pts = seq.points
    r = complete_cycle(p).scale_factor
    m = d + 2
    delta = np.diff(pts, axis=0)
    np.testing.assert_allclose(delta[m:], -r * delta[:-m], atol=1e-9 * diameter(pts))


# ---------------------------------------------------------------------------
# period detection


def test_detect_period_on_periodic_builds():
    for d, expect in ((2, 8), (3, 10)):
        seq = build_periodic(d, n_cycles=2)
        assert detect_period(seq) == expect
        assert period_residual(seq, expect) <= 1e-10


def test_detect_period_rejects_divisors():
    seq = build_periodic(3, n_cycles=2)
    full = period_residual(seq, 10)
    for q in (1, 2, 5):
        assert period_residual(seq, q) > 1e3 * max(full, 1e-12)


def test_detect_period_none_for_contracting():
    seq = generate(D2_SEED, 13)
    assert detect_period(seq) is None


def test_period_residual_validates():
    seq = generate(D2_SEED, 6)
    with pytest.raises(InvalidArgumentError):
        period_residual(seq, 0)
    with pytest.raises(InvalidArgumentError):
        period_residual(seq, 9)  # longer than half the sequence


# ---------------------------------------------------------------------------
# analysis bundle


def test_analyze_sequence_periodic():
    d = 4
    seq = build_periodic(d, n_cycles=2)
    an = analyze_sequence(seq)
    assert an.scale_factor == pytest.approx(1.0, rel=1e-9)
    assert an.period == 2 * d + 4
    assert an.period_residual <= 1e-9
    assert an.affine_residual <= 1e-9
    # v is the midpoint-like fixed point: p_{i+d+2} = v - r p_i
    m = d + 2
    pts = seq.points
    pred = an.shift_vector - an.scale_factor * pts[:-m]
    np.testing.assert_allclose(pred, pts[m:], atol=1e-8 * diameter(pts))


def test_analyze_sequence_contracting():
    seq = generate(D2_SEED, 12)
    an = analyze_sequence(seq)
    assert an.scale_factor == pytest.approx(0.25, rel=1e-9)
    assert an.period is None
    np.testing.assert_allclose(an.shift_vector, [0.75, 0.25], atol=1e-9)


# ---------------------------------------------------------------------------
# verification helpers


def test_verify_ics_accepts_generated():
    seq = generate(D2_SEED, 8)
    verify_ics(seq.points)  # should not raise


def test_verify_ics_rejects_perturbed():
    seq = generate(D2_SEED, 8)
    pts = seq.points.copy()
    pts[5] += 0.01
    with pytest.raises(DegenerateGeometryError):
        verify_ics(pts)


def test_special_offset():
    assert special_offset(generate(D2_SEED, 5).points) == 0
    skew = np.array([[0.0, 0.0], [1.0, 0.0], [0.9, 0.9]])
    pts = generate(skew, 6, require_good_position=False).points
    assert special_offset(pts) == 1
    with pytest.raises(DegenerateGeometryError):
        special_offset(D2_SEED[:2])


# ---------------------------------------------------------------------------
# truncation guards


def test_underflow_stops_contracting_run():
    # r = 1/4 per 4 steps: segments shrink below 1e-9 x diameter around step 60
    seq = generate(D2_SEED, 200)
    assert seq.stop_reason is not None
    assert "underflow" in seq.stop_reason
    assert 40 <= len(seq) < 203
    # every kept point is still finite and the kept prefix verifies
    verify_ics(seq.points[:20])


def test_overflow_stops_expanding_run():
    seq = build_from_params([0.01], 200)
    assert seq.stop_reason is not None
    assert "overflow" in seq.stop_reason
    assert len(seq) < 203


def test_degenerate_seed_raises_with_step():
    flat = np.array(
        [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.5, 0.5, 1e-13],
        ]
    )
    with pytest.raises(DegenerateGeometryError):
        generate(flat, 3, require_good_position=False)


# ---------------------------------------------------------------------------
# window health along generated runs


def test_windows_stay_good_along_run():
    from circumseq import is_good_position

    rng = np.random.default_rng(333)
    for d in (2, 3, 4):
        p = sample_param_domain(d, rng, margin=0.1)
        seq = build_from_params(p, 2 * (d + 2))
        pts = seq.points
        for i in range(len(pts) - d):
            assert is_good_position(pts[i : i + d + 1])


# ---------------------------------------------------------------------------
# kernel backends


def test_backend_reports_a_known_mode():
    assert BACKEND in {"compiled", "pure-python", "pure-python (forced)"}


def test_kernel_twins_agree():
    from circumseq import _kernels_py

    try:
        from circumseq import _speedups
    except ImportError:
        pytest.skip("compiled kernel not available")

    rng = np.random.default_rng(444)
    for d in (2, 3, 5):
        p = sample_param_domain(d, rng, margin=0.05)
        seed = build_from_params(p, 0).points
        diam = diameter(seed)
        args = (40, 1e-9, 1e-9 * diam, 1e12 * diam, seed[0])
        buf_a, status_a, count_a = _kernels_py.iterate_circumcenters(seed, *args)
        buf_b, status_b, count_b = _speedups.iterate_circumcenters(seed, *args)
        assert status_a == status_b
        assert count_a == count_b
        scale = max(1.0, float(np.max(np.abs(buf_a[:count_a]))))
        assert np.max(np.abs(buf_a[:count_a] - np.asarray(buf_b)[:count_b])) <= 1e-12 * scale


def test_kernel_twins_agree_on_truncation():
    from circumseq import _kernels_py

    try:
        from circumseq import _speedups
    except ImportError:
        pytest.skip("compiled kernel not available")

    seed = D2_SEED
    diam = diameter(seed)
    args = (200, 1e-9, 1e-9 * diam, 1e12 * diam, seed[0])
    buf_a, status_a, count_a = _kernels_py.iterate_circumcenters(seed, *args)
    buf_b, status_b, count_b = _speedups.iterate_circumcenters(seed, *args)
    assert status_a == status_b == _kernels_py.STATUS_UNDERFLOW
    assert count_a == count_b


def test_pure_backend_env_override():
    import subprocess
    import sys

    code = (
        "import circumseq; print(circumseq.BACKEND)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"CIRCUMSEQ_PURE": "1", "PATH": "/usr/bin:/bin"},
        check=True,
    )
    assert out.stdout.strip() == "pure-python (forced)"


# ---------------------------------------------------------------------------
# misc


def test_diameter():
    assert diameter([[0.0, 0.0], [3.0, 4.0], [1.0, 1.0]]) == pytest.approx(5.0)
    assert diameter([[2.0, 2.0]]) == 0.0


def test_seed_simplex_properties():
    seed = SeedSimplex.from_points(D2_SEED)
    assert seed.d == 2
    with pytest.raises(InvalidArgumentError):
        SeedSimplex.from_points(D2_SEED[:2])
