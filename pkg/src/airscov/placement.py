"""Placement optimization for the aerial reflecting array.

The single-location optimum is closed-form: the best horizontal position is
a fraction of the way from the source to the target that depends only on the
distance-to-altitude ratio. Area coverage couples the angular span seen from
the array (which sets the required beam broadening, hence the achievable
gain) with the cascaded two-hop path loss; the resulting cost is univariate
in the along-axis coordinate and is minimized by a deterministic grid
search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beamform import (
    FlattenPlan,
    phases_from_plan,
    plan_flatten_1d,
    plan_flatten_3d,
    subarray_count,
)
from .channel import ArrayGeometry, PhaseProfile, RadioParams, worst_snr
from .geometry import Placement, TargetArea, max_dist_to_area

_QUARTER_GAIN = 4.0 / math.pi**2  # worst-in-coverage gain factor per axis


@dataclass(frozen=True)
class PlacementResult:
    """Outcome of a placement search.

    ``worst_snr_linear`` is the grid-evaluated minimum SNR over the area
    (ground truth); ``worst_snr_approx_linear`` is the design-law estimate
    used by the search objective. ``objective_trace`` holds (qx, cost) pairs
    for every candidate visited.
    """

    q_star: Placement
    worst_snr_linear: float
    worst_snr_approx_linear: float
    subarrays_x: int
    subarrays_y: int
    span_x: float
    span_y: float
    plan_x: FlattenPlan
    plan_y: FlattenPlan | None
    phases: PhaseProfile
    objective_trace: tuple[tuple[float, float], ...]


def optimal_placement_single(
    w1, h: float
) -> tuple[tuple[float, ...], tuple[Placement, ...]]:
    """Closed-form placement(s) maximizing the SNR at a single point w1.

    Let rho = |w1| / h. For rho <= 2 the unique optimum is the midpoint
    between source and target; beyond that the cost has two symmetric
    minima, q = xi * w1 with xi = 1/2 +- sqrt(1/4 - 1/rho^2).

    Returns:
        (xis, candidates), sorted by (qx, qy) for deterministic tie-breaking.
    """
    if not h > 0:
        raise ValueError("altitude h must be positive")
    w1x, w1y = float(w1[0]), float(w1[1])
    rho = math.hypot(w1x, w1y) / h
    if rho <= 2.0:
        xis = [0.5]
    else:
        off = math.sqrt(0.25 - 1.0 / (rho * rho))
        xis = [0.5 - off, 0.5 + off]
    pairs = sorted(
        ((xi, Placement(xi * w1x, xi * w1y, h)) for xi in xis),
        key=lambda p: (p[1].qx, p[1].qy),
    )
    return tuple(p[0] for p in pairs), tuple(p[1] for p in pairs)


def single_location_snr(w1, h: float, n: int, m: int, rp: RadioParams) -> float:
    """Optimal linear SNR at point w1 with an n-element array, closed form."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be at least 1")
    w2 = float(w1[0]) ** 2 + float(w1[1]) ** 2
    h2 = h * h
    rho = math.sqrt(w2) / h
    num = rp.pbar * rp.ref_gain**2 * m * n * n
    if rho <= 2.0:
        return num / (h2 + w2 / 4.0) ** 2
    off = math.sqrt(0.25 - 1.0 / (rho * rho))
    return num / ((h2 + (0.5 + off) ** 2 * w2) * (h2 + (0.5 - off) ** 2 * w2))


def _axis_gain(n_a: int, l_a: int) -> float:
    # single-element axes have a flat unit pattern, no boundary loss
    if n_a == 1:
        return 1.0
    return _QUARTER_GAIN * (n_a / l_a) ** 2


def approx_worst_snr(
    q: Placement,
    area: TargetArea,
    geo: ArrayGeometry,
    rp: RadioParams,
    plan_x: FlattenPlan,
    plan_y: FlattenPlan | None,
) -> float:
    """Design-law estimate of the worst SNR over the area for a placement."""
    gain = _axis_gain(geo.nx, plan_x.num_subarrays)
    if plan_y is not None:
        gain *= _axis_gain(geo.ny, plan_y.num_subarrays)
    dmax = max_dist_to_area(q, area)
    h2 = q.h * q.h
    denom = (h2 + dmax * dmax) * (h2 + q.qx * q.qx + q.qy * q.qy)
    return rp.pbar * rp.ref_gain**2 * geo.m_tx * gain / denom


def _candidate_stats(qxs: np.ndarray, qy: float, h: float, area: TargetArea):
    """Spans, deviation extrema, and max corner distance per candidate qx."""
    pts = area.boundary_points()
    wx = pts[:, 0][None, :]
    wy = pts[:, 1][None, :]
    qx = qxs[:, None]
    dx = wx - qx
    dy = wy - qy
    dist = np.sqrt(h * h + dx * dx + dy * dy)
    rnorm = np.sqrt(h * h + qx * qx + qy * qy)
    dev_x = dx / dist - qx / rnorm
    dev_y = dy / dist - qy / rnorm
    c = area.corners()
    reach2 = (c[:, 0][None, :] - qx) ** 2 + (c[:, 1][None, :] - qy) ** 2
    return (
        dev_x.min(axis=1),
        dev_x.max(axis=1),
        dev_y.min(axis=1),
        dev_y.max(axis=1),
        np.sqrt(reach2.max(axis=1)),
    )


def cost_curve_ula(
    qxs, h: float, area: TargetArea, geo: ArrayGeometry, rp: RadioParams
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Placement cost and its ingredients along an array of qx candidates.

    Returns (spans, dmax, subarrays, costs): the spatial-frequency span, the
    maximum horizontal distance to the area, the implied sub-array count,
    and the full cost L^2 (h^2 + dmax^2)(h^2 + qx^2); lower cost is better.
    """
    qxs = np.asarray(qxs, dtype=float)
    lo, hi, _, _, dmax = _candidate_stats(qxs, 0.0, h, area)
    spans = hi - lo
    subarrays = np.array(
        [subarray_count(s, geo.nx, rp.dbar_x) for s in spans], dtype=int
    )
    h2 = h * h
    costs = subarrays.astype(float) ** 2 * (h2 + dmax**2) * (h2 + qxs**2)
    return spans, dmax, subarrays, costs


def placement_objective_ula(
    qx: float, h: float, area: TargetArea, geo: ArrayGeometry, rp: RadioParams
) -> float:
    """Cost of placing a linear array at (qx, 0); lower is better.

    Trades the sub-array count forced by the angular span against the
    cascaded path loss to the farthest point of the area.
    """
    if not geo.is_ula:
        raise ValueError("objective is defined for linear arrays (ny == 1)")
    _, _, _, costs = cost_curve_ula(np.array([qx]), h, area, geo, rp)
    return float(costs[0])


def _search_grid(q_min: float, q_max: float, step: float) -> np.ndarray:
    if step <= 0:
        raise ValueError("search step must be positive")
    if not q_min < q_max:
        raise ValueError(f"empty search range [{q_min}, {q_max}]")
    count = int(math.floor((q_max - q_min) / step + 1e-9))
    qxs = q_min + step * np.arange(count + 1)
    if qxs[-1] < q_max - 1e-9 * max(1.0, abs(q_max)):
        qxs = np.append(qxs, q_max)
    return qxs


def search_placement_ula(
    area: TargetArea,
    geo: ArrayGeometry,
    rp: RadioParams,
    h: float,
    q_min: float | None = None,
    q_max: float | None = None,
    step: float = 1.0,
    grid_pts: tuple[int, int] = (101, 61),
    threads: int = 1,
) -> PlacementResult:
    """Grid search of the linear-array placement along the x-axis.

    Symmetry pins qy = 0. Defaults search [-5h, area center]; ties go to the
    smallest qx. The flattening design at the winning placement is
    synthesized and its exact worst SNR evaluated on the area grid.
    """
    if not geo.is_ula:
        raise ValueError("search_placement_ula needs a linear array (ny == 1)")
    if q_min is None:
        q_min = -5.0 * h
    if q_max is None:
        q_max = area.center_x
    qxs = _search_grid(q_min, q_max, step)
    lo, hi, lo_y, hi_y, dmax = _candidate_stats(qxs, 0.0, h, area)
    spans = hi - lo
    subarrays = np.array(
        [subarray_count(s, geo.nx, rp.dbar_x) for s in spans], dtype=int
    )
    h2 = h * h
    costs = subarrays.astype(float) ** 2 * (h2 + dmax**2) * (h2 + qxs**2)
    idx = int(np.argmin(costs))

    q_star = Placement(float(qxs[idx]), 0.0, h)
    plan_x = plan_flatten_1d(float(lo[idx]), float(hi[idx]), geo.nx, rp.dbar_x)
    profile = PhaseProfile.from_separable(
        phases_from_plan(plan_x, geo.nx), np.zeros(geo.ny)
    )
    exact = worst_snr(q_star, profile, area, geo, rp, *grid_pts, threads=threads)
    approx = approx_worst_snr(q_star, area, geo, rp, plan_x, None)
    return PlacementResult(
        q_star=q_star,
        worst_snr_linear=exact,
        worst_snr_approx_linear=approx,
        subarrays_x=int(subarrays[idx]),
        subarrays_y=1,
        span_x=float(spans[idx]),
        span_y=float(hi_y[idx] - lo_y[idx]),
        plan_x=plan_x,
        plan_y=None,
        phases=profile,
        objective_trace=tuple(zip(qxs.tolist(), costs.tolist())),
    )


def search_placement_upa(
    area: TargetArea,
    geo: ArrayGeometry,
    rp: RadioParams,
    h: float,
    q_min: float | None = None,
    q_max: float | None = None,
    step: float = 1.0,
    grid_pts: tuple[int, int] = (101, 61),
    threads: int = 1,
) -> PlacementResult:
    """Grid search of the planar-array placement along the x-axis.

    The reference element is the array's bottom-left corner, so symmetry
    puts it half the array's physical y-extent below the axis. Both per-axis
    spans enter the cost.
    """
    if q_min is None:
        q_min = -5.0 * h
    if q_max is None:
        q_max = area.center_x
    qy = -geo.ny * rp.dbar_y * rp.wavelength / 2.0
    qxs = _search_grid(q_min, q_max, step)
    lo_x, hi_x, lo_y, hi_y, dmax = _candidate_stats(qxs, qy, h, area)
    spans_x = hi_x - lo_x
    spans_y = hi_y - lo_y
    sub_x = np.array(
        [subarray_count(s, geo.nx, rp.dbar_x) for s in spans_x], dtype=int
    )
    sub_y = np.array(
        [subarray_count(s, geo.ny, rp.dbar_y) for s in spans_y], dtype=int
    )
    h2 = h * h
    costs = (
        sub_x.astype(float) ** 2
        * sub_y.astype(float) ** 2
        * (h2 + dmax**2)
        * (h2 + qxs**2 + qy * qy)
    )
    idx = int(np.argmin(costs))

    q_star = Placement(float(qxs[idx]), qy, h)
    plan_x, plan_y, profile = plan_flatten_3d(q_star, area, geo, rp)
    exact = worst_snr(q_star, profile, area, geo, rp, *grid_pts, threads=threads)
    approx = approx_worst_snr(q_star, area, geo, rp, plan_x, plan_y)
    return PlacementResult(
        q_star=q_star,
        worst_snr_linear=exact,
        worst_snr_approx_linear=approx,
        subarrays_x=plan_x.num_subarrays,
        subarrays_y=plan_y.num_subarrays,
        span_x=float(spans_x[idx]),
        span_y=float(spans_y[idx]),
        plan_x=plan_x,
        plan_y=plan_y,
        phases=profile,
        objective_trace=tuple(zip(qxs.tolist(), costs.tolist())),
    )
