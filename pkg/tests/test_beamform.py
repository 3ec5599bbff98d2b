import math

import numpy as np
import pytest

from airscov.beamform import (
    FlattenPlan,
    conjugate_phases,
    flattened_pattern_gain,
    phases_from_plan,
    plan_flatten_1d,
    plan_flatten_3d,
    single_beam_pattern,
    subarray_count,
)
from airscov.bench import worst_case_gain_law
from airscov.channel import ArrayGeometry, RadioParams, array_gain, snr_grid
from airscov.geometry import Placement, TargetArea, freq_span, rx_spatial_freqs, tx_spatial_freqs

RP = RadioParams(tx_power=0.1, noise_power=1e-14, ref_gain=1e-4)
QUARTER = 4 / math.pi**2


def direct_gain(theta, d_bar, delta):
    """Brute-force |sum of element phasors|^2 at offset delta."""
    n = np.arange(theta.size)
    return abs(np.exp(1j * (theta + 2 * np.pi * n * d_bar * delta)).sum()) ** 2


def test_conjugate_phases_reach_peak_gain():
    rng = np.random.default_rng(1)
    for _ in range(20):
        geo = ArrayGeometry(nx=int(rng.integers(2, 30)), ny=int(rng.integers(1, 20)))
        q = Placement(*rng.uniform(-900, 900, 2), float(rng.uniform(20, 400)))
        w = rng.uniform(-3000, 3000, 2)
        prof = conjugate_phases(q, w, geo, RP)
        assert array_gain(q, w, prof, geo, RP) == pytest.approx(
            geo.n**2, rel=1e-9
        )


def test_conjugate_phases_zero_at_matched_direction():
    # receive and transmit rays coincide: nothing to compensate
    geo = ArrayGeometry(nx=6, ny=6)
    q = Placement(300, 0, 100)
    w = (600.0, 0.0)
    rx, tx = rx_spatial_freqs(q), tx_spatial_freqs(q, w)
    assert rx.phi_bar == pytest.approx(tx.phi_bar, abs=1e-12)
    prof = conjugate_phases(q, w, geo, RP)
    assert np.allclose(prof.theta, 0.0, atol=1e-12)


def test_single_beam_peak_and_nulls():
    ns, d_bar = 64, 0.1
    assert single_beam_pattern(ns, d_bar, 0.0) == ns
    for k in (1, 2, 5, ns - 1):
        assert abs(single_beam_pattern(ns, d_bar, k / (ns * d_bar))) < 1e-9 * ns


def test_single_beam_half_width_value():
    ns, d_bar = 128, 0.1
    val = single_beam_pattern(ns, d_bar, 1 / (2 * ns * d_bar)) ** 2
    assert val == pytest.approx(QUARTER * ns**2, rel=5e-3)


def test_single_beam_periodic_singularity():
    ns, d_bar = 16, 0.1
    assert abs(single_beam_pattern(ns, d_bar, 1 / d_bar)) == pytest.approx(ns)


def test_plan_sizing_basic():
    plan = plan_flatten_1d(0.0, 0.1, 256, 0.1)
    assert plan.num_subarrays == 2
    assert plan.subarray_size == 128
    assert plan.steer_freqs[0] == pytest.approx(0.0 + 1 / (2 * 128 * 0.1))


def test_plan_single_beam_when_span_small():
    plan = plan_flatten_1d(0.2, 0.2 + 0.03, 256, 0.1)  # span * n * d < 1
    assert plan.num_subarrays == 1
    assert plan.subarray_size == 256


def test_plan_exact_integer_sizing_boundary():
    # span * n * d_bar lands exactly on 1.0 up to float rounding
    plan = plan_flatten_1d(-0.05, 0.05, 100, 0.1)
    assert plan.num_subarrays == 1
    assert subarray_count(0.1, 100, 0.1) == 1
    assert subarray_count(0.1, 101, 0.1) == 2


def test_plan_zero_span_centers_on_point():
    plan = plan_flatten_1d(0.37, 0.37, 64, 0.1)
    assert plan.num_subarrays == 1
    assert plan.steer_freqs[0] == pytest.approx(0.37, abs=1e-12)
    lo, hi = plan.coverage
    assert lo < 0.37 < hi
    assert (0.37 - lo) == pytest.approx(hi - 0.37, abs=1e-12)


def test_plan_coverage_contains_span():
    rng = np.random.default_rng(8)
    for _ in range(50):
        lo_in = rng.uniform(-0.9, 0.5)
        hi_in = lo_in + rng.uniform(0, 0.4)
        n = int(rng.integers(8, 2000))
        plan = plan_flatten_1d(lo_in, hi_in, n, 0.1)
        lo, hi = plan.coverage
        assert lo <= lo_in + 1e-12
        assert hi >= hi_in - 1e-12


def test_phases_single_subarray_is_steering_ramp():
    plan = plan_flatten_1d(0.1, 0.1 + 0.01, 32, 0.1)
    theta = phases_from_plan(plan, 32)
    expected = -2 * np.pi * np.arange(32) * 0.1 * plan.steer_freqs[0]
    assert np.allclose(theta - theta[0], expected, atol=1e-9)
    assert theta[0] == pytest.approx(plan.common_phases[0])


def test_phases_cover_all_elements_when_not_divisible():
    plan = plan_flatten_1d(0.0, 0.3, 130, 0.1)  # L = 2, sizes 65/65; then 131
    assert phases_from_plan(plan, 130).size == 130
    plan2 = plan_flatten_1d(0.0, 0.3, 131, 0.1)
    sizes = plan2.subarray_sizes(131)
    assert sizes.sum() == 131
    assert sizes[0] == sizes[-1] + 1
    assert phases_from_plan(plan2, 131).size == 131


def test_pattern_peaks_at_steering_freqs():
    plan = plan_flatten_1d(-0.15625, 0.15625, 512, 0.1)
    ns = plan.subarray_size
    for f in plan.steer_freqs:
        assert flattened_pattern_gain(plan, 512, f) == pytest.approx(
            ns**2, rel=1e-9
        )


def test_pattern_matches_direct_sum():
    rng = np.random.default_rng(21)
    for n in (512, 131, 97):
        plan = plan_flatten_1d(-0.1, 0.12, n, 0.1)
        theta = phases_from_plan(plan, n)
        for delta in rng.uniform(-2, 2, 40):
            got = flattened_pattern_gain(plan, n, float(delta))
            want = direct_gain(theta, 0.1, float(delta))
            assert got == pytest.approx(want, rel=1e-9, abs=1e-6 * n)


def test_pattern_intersection_points_near_crossover_level():
    # adjacent sub-beams are phase-aligned at their crossovers; remaining
    # sub-beam tails still modulate the level by up to ~3.6 dB
    plan = plan_flatten_1d(-0.15625, 0.15625, 512, 0.1)
    ns = plan.subarray_size
    cross = plan.steer_freqs[:-1] + 1 / (2 * ns * 0.1)
    gains = flattened_pattern_gain(plan, 512, cross)
    level = 16 / math.pi**2 * ns**2
    assert np.all(gains >= 0.42 * level)
    assert np.all(gains <= 1.05 * level)


def test_pattern_boundary_envelope():
    # exact edge gain sits between 0.42x and 1.05x of the one-beam estimate
    for n, span in [(256, 0.1), (512, 0.3125), (1000, 0.1), (2000, 0.1)]:
        plan = plan_flatten_1d(-span / 2, span / 2, n, 0.1)
        ns = plan.subarray_size
        lo, hi = plan.coverage
        for edge in (lo, hi):
            g = flattened_pattern_gain(plan, n, edge)
            assert 0.42 * QUARTER * ns**2 <= g <= 1.05 * QUARTER * ns**2


def test_pattern_flatness_within_two_db():
    plan = plan_flatten_1d(-0.15625, 0.15625, 512, 0.1)
    ns = plan.subarray_size
    deltas = np.linspace(plan.steer_freqs[0], plan.steer_freqs[-1], 4096)
    ripple = np.abs(
        10 * np.log10(flattened_pattern_gain(plan, 512, deltas)) - 10 * math.log10(ns**2)
    )
    assert ripple.max() <= 2.0


def test_pattern_floor_over_ripple_band():
    for count in (2, 4, 7, 10):
        n = count * 128
        span = count * count / (n * 0.1) * 0.999
        plan = plan_flatten_1d(-span / 2, span / 2, n, 0.1)
        band = np.linspace(plan.steer_freqs[0], plan.steer_freqs[-1], 4001)
        floor = flattened_pattern_gain(plan, n, band).min()
        assert floor >= 0.63 * plan.subarray_size**2


def test_pattern_floor_over_coverage():
    for count in (2, 3, 4, 8, 12):
        ns = 64
        n = count * ns
        span = count * count / (n * 0.1) * 0.999
        plan = plan_flatten_1d(-span / 2, span / 2, n, 0.1)
        lo, hi = plan.coverage
        floor = flattened_pattern_gain(plan, n, np.linspace(lo, hi, 4001)).min()
        assert floor >= 0.40 * QUARTER * plan.subarray_size**2


def test_worst_gain_law_two_regimes():
    span, d_bar = 0.1, 0.1
    for n in (10, 20, 50, 100):
        law = worst_case_gain_law(n, span, d_bar)
        assert abs(10 * math.log10(law / (QUARTER * n * n))) <= 3.0
    for n in (1000, 1234, 2000, 3000, 5000, 10000):
        law = worst_case_gain_law(n, span, d_bar)
        linear = QUARTER * n / (span * d_bar)
        assert abs(10 * math.log10(law / linear)) <= 3.0


def test_plan_3d_point_area_equals_conjugate():
    geo = ArrayGeometry(nx=16, ny=12)
    q = Placement(40, -30, 100)
    area = TargetArea(900, 0, 0)
    _, _, prof = plan_flatten_3d(q, area, geo, RP)
    conj = conjugate_phases(q, (900, 0), geo, RP)
    diff = np.mod(prof.theta - conj.theta, 2 * np.pi)
    # profiles agree up to one common phase
    spread = np.angle(np.exp(1j * (diff - diff[0])))
    assert np.max(np.abs(spread)) < 1e-9
    assert array_gain(q, (900, 0), prof, geo, RP) == pytest.approx(
        geo.n**2, rel=1e-9
    )


def test_plan_3d_grid_gain_margins():
    # per-point exact SNR vs the per-point design estimate: points whose
    # offsets sit in the inner ripple bands clear the estimate, and no
    # in-coverage point falls more than 7.5 dB below it (edge dips stack
    # across the two axes at worst)
    geo = ArrayGeometry(nx=50, ny=20)
    q = Placement(6.0, -0.125, 100.0)
    area = TargetArea(1000, 1000, 600)
    plan_x, plan_y, prof = plan_flatten_3d(q, area, geo, RP)
    wx, wy, vals = snr_grid(q, prof, area, geo, RP)
    gx, gy = np.meshgrid(wx, wy, indexing="ij")
    rx = rx_spatial_freqs(q)
    dx, dy = gx - q.qx, gy - q.qy
    dist = np.sqrt(q.h**2 + dx**2 + dy**2)
    off_x = dx / dist - rx.phi_bar
    off_y = dy / dist - rx.omega_bar

    gain_est = (QUARTER * plan_x.subarray_size**2) * (
        QUARTER * plan_y.subarray_size**2
    )
    pref = RP.pbar * RP.ref_gain**2 * geo.m_tx
    est = pref * gain_est / (
        (q.h**2 + dx**2 + dy**2) * (q.h**2 + q.qx**2 + q.qy**2)
    )

    in_cov = (
        (off_x >= plan_x.coverage[0]) & (off_x <= plan_x.coverage[1])
        & (off_y >= plan_y.coverage[0]) & (off_y <= plan_y.coverage[1])
    )
    assert in_cov.all()
    assert np.all(vals >= est * 10 ** (-7.5 / 10))

    band = (
        (off_x >= plan_x.steer_freqs[0]) & (off_x <= plan_x.steer_freqs[-1])
        & (off_y >= plan_y.steer_freqs[0]) & (off_y <= plan_y.steer_freqs[-1])
    )
    if band.any():
        assert np.all(vals[band] >= est[band] * 10 ** (-1.5 / 10))


def test_plan_validation():
    with pytest.raises(ValueError):
        plan_flatten_1d(0.2, 0.1, 64, 0.1)
    with pytest.raises(ValueError):
        FlattenPlan(2, 16, np.array([0.1, 0.2]), np.array([0.0, 0.0]), 0.0, 0.1)


def test_span_zero_three_d_consistency():
    # per-axis spans of a point area are exactly zero from any placement
    q = Placement(-250, 10, 100)
    area = TargetArea(1234, 0, 0)
    for axis in ("x", "y"):
        lo, hi = freq_span(q, area, axis)
        assert lo == hi
