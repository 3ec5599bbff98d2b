"""Acceptance gate: every criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one printed
pass/fail line per criterion.
"""

import math
from contextlib import contextmanager

import numpy as np
import pytest

import airscov as ac
from airscov import bench

RP = ac.default_radio_params()
H = 100.0
AREA = bench.DEFAULT_AREA


@contextmanager
def criterion(num, summary):
    try:
        yield
    except AssertionError:
        print(f"ACCEPTANCE {num}: FAIL - {summary}")
        raise
    print(f"ACCEPTANCE {num}: PASS - {summary}")


def first_size_reaching(target_db, snr_of_n):
    n = 1
    while 10 * math.log10(snr_of_n(n)) < target_db:
        n += 1
        assert n < 5000, "threshold never reached"
    return n


def test_criterion_1_closed_form_placement():
    with criterion(1, "closed-form deployment fractions"):
        xis, _ = ac.optimal_placement_single((1000.0, 0.0), H)  # rho = 10
        assert round(xis[0], 4) == 0.0101
        assert round(xis[1], 4) == 0.9899
        for rho in np.linspace(0.0, 2.0, 81):
            xis, _ = ac.optimal_placement_single((rho * H, 0.0), H)
            assert xis == (0.5,)


def test_criterion_2_single_location_snr_curve():
    with criterion(2, "single-location SNR vs array size"):
        w1 = (1000.0, 0.0)
        opt = lambda n: ac.single_location_snr(w1, H, n, 64, RP)
        f2_mid = (H * H + 0.25 * 1000.0**2) ** 2
        mid = lambda n: RP.pbar * RP.ref_gain**2 * 64 * n * n / f2_mid

        n_opt = first_size_reaching(15.0, opt)
        n_mid = first_size_reaching(15.0, mid)
        assert abs(n_opt - 225) <= 10
        assert abs(n_mid - 580) <= 20

        for snr_of_n in (opt, mid):
            decade = 10 * math.log10(snr_of_n(2000) / snr_of_n(200))
            assert abs(decade - 20.0) <= 0.1


def test_criterion_3_beam_flatness():
    with criterion(3, "flattened beam ripple within 2 dB"):
        plan = ac.plan_flatten_1d(-0.15625, 0.15625, 512, 0.1)
        assert plan.num_subarrays == 4
        ns = plan.subarray_size
        deltas = np.linspace(plan.steer_freqs[0], plan.steer_freqs[-1], 4096)
        gains_db = 10 * np.log10(ac.flattened_pattern_gain(plan, 512, deltas))
        assert np.max(np.abs(gains_db - 10 * math.log10(ns * ns))) <= 2.0


def test_criterion_4_worst_case_gain_law():
    with criterion(4, "worst-case gain growth law"):
        span, d_bar = 0.1, 0.1
        for n in (10, 16, 25, 40, 63, 100):
            law = ac.worst_case_gain_law(n, span, d_bar)
            quad = 4 / math.pi**2 * n * n
            assert abs(10 * math.log10(law / quad)) <= 3.0
        for n in (1000, 1234, 1500, 2000, 3000, 5000, 10000):
            law = ac.worst_case_gain_law(n, span, d_bar)
            lin = 4 / math.pi**2 * n / (span * d_bar)
            assert abs(10 * math.log10(law / lin)) <= 3.0


def test_criterion_5_placement_regimes():
    with criterion(5, "segment placement regimes"):
        geo = ac.ArrayGeometry(nx=256, ny=1)
        left = ac.search_placement_ula(ac.TargetArea(500, 500, 0), geo, RP, H)
        assert left.q_star.qx < 0
        near = ac.search_placement_ula(ac.TargetArea(1000, 1000, 0), geo, RP, H)
        assert abs(near.q_star.qx) <= 50
        inside = ac.search_placement_ula(ac.TargetArea(240, 170, 0), geo, RP, H)
        assert 0 < inside.q_star.qx <= 240


def test_criterion_6_area_coverage_gains():
    with criterion(6, "area-coverage gains over benchmarks"):
        geo_ula = ac.ArrayGeometry(nx=256, ny=1)
        opt = ac.search_placement_ula(AREA, geo_ula, RP, H)
        cen = bench.benchmark_center_placement(AREA, geo_ula, RP, H)
        gain_db = 10 * math.log10(opt.worst_snr_linear / cen.worst_snr_linear)
        assert gain_db >= 20.0

        geo_upa = ac.ArrayGeometry(nx=50, ny=20)
        flat = ac.search_placement_upa(AREA, geo_upa, RP, H)
        _, one_d = bench.benchmark_1d_on_upa(flat.q_star, AREA, geo_upa, RP)
        gain_db = 10 * math.log10(flat.worst_snr_linear / max(one_d, 1e-300))
        assert gain_db >= 25.0


def test_criterion_7_oracle_equivalences():
    with criterion(7, "oracle equivalence property suite"):
        rng = np.random.default_rng(2024)

        # (a) conjugate phasing reaches the coherent bound
        for _ in range(100):
            geo = ac.ArrayGeometry(nx=int(rng.integers(2, 40)),
                                   ny=int(rng.integers(1, 25)))
            q = ac.Placement(*rng.uniform(-1000, 1000, 2),
                             float(rng.uniform(20, 500)))
            w = tuple(rng.uniform(-4000, 4000, 2))
            prof = ac.conjugate_phases(q, w, geo, RP)
            assert ac.array_gain(q, w, prof, geo, RP) == pytest.approx(
                geo.n**2, rel=1e-9
            )

        # (b) separable-phase factorization
        geo = ac.ArrayGeometry(nx=8, ny=8)
        q = ac.Placement(50, -20, H)
        w = (900.0, 150.0)
        for _ in range(100):
            tx = rng.uniform(0, 2 * math.pi, 8)
            ty = rng.uniform(0, 2 * math.pi, 8)
            a = ac.snr_separable(q, w, tx, ty, geo, RP)
            b = ac.snr(q, w, ac.PhaseProfile.from_separable(tx, ty), geo, RP)
            assert a == pytest.approx(b, rel=1e-12)

        # (c) closed-form optimum equals exact evaluation at the optimum
        for _ in range(20):
            w1 = tuple(rng.uniform(-1500, 1500, 2))
            h = float(rng.uniform(50, 300))
            n = int(rng.integers(4, 400))
            geo = ac.ArrayGeometry(nx=n, ny=1, m_tx=64)
            _, cands = ac.optimal_placement_single(w1, h)
            prof = ac.conjugate_phases(cands[0], w1, geo, RP)
            exact = ac.snr(cands[0], w1, prof, geo, RP)
            closed = ac.single_location_snr(w1, h, n, 64, RP)
            assert exact == pytest.approx(closed, rel=1e-10)

        # (d) closed-form candidates sit on the brute-force cost minimum
        for _ in range(20):
            w1 = (float(rng.uniform(-1500, 1500)), float(rng.uniform(-1500, 1500)))
            h = float(rng.uniform(40, 350))
            _, cands = ac.optimal_placement_single(w1, h)
            span = max(abs(w1[0]), abs(w1[1]), h)
            xs = np.linspace(min(0, w1[0]) - 0.2 * span,
                             max(0, w1[0]) + 0.2 * span, 400)
            ys = np.linspace(min(0, w1[1]) - 0.2 * span,
                             max(0, w1[1]) + 0.2 * span, 400)
            gx, gy = np.meshgrid(xs, ys, indexing="ij")
            f2 = (h**2 + (gx - w1[0]) ** 2 + (gy - w1[1]) ** 2) * (
                h**2 + gx**2 + gy**2
            )
            i, j = np.unravel_index(np.argmin(f2), f2.shape)
            cell = math.hypot(xs[1] - xs[0], ys[1] - ys[0])
            nearest = min(
                math.hypot(c.qx - xs[i], c.qy - ys[j]) for c in cands
            )
            assert nearest <= cell

        # (e) closed-form pattern equals the channel's gain of the profile
        n = 384
        plan = ac.plan_flatten_1d(-0.08, 0.1, n, 0.1)
        theta = ac.phases_from_plan(plan, n)
        prof = ac.PhaseProfile.from_separable(theta, [0.0])
        geo = ac.ArrayGeometry(nx=n, ny=1)
        for delta in rng.uniform(-1.9, 1.9, 1000):
            s = float(delta) / 2.0
            qx = -s * H / math.sqrt(1 - s * s)
            q = ac.Placement(qx, 0.0, H)
            w = (qx + s * H / math.sqrt(1 - s * s), 0.0)
            got = ac.array_gain(q, w, prof, geo, RP)
            want = ac.flattened_pattern_gain(plan, n, float(delta))
            assert got == pytest.approx(want, rel=1e-9, abs=1e-7 * n)
