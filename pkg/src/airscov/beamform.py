"""Phase-profile synthesis for the reflecting array.

Three designs live here: conjugate phasing that focuses the full array on a
single ground point, a 1-D beam broadening/flattening construction that
partitions the array into steered sub-arrays whose aligned side phases
produce a near-constant gain across an adjustable spatial-frequency
interval, and the separable 3-D extension that applies the 1-D construction
independently per axis of a planar array. Synthesis only sets phases; every
element keeps unit amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import TWO_PI, ArrayGeometry, PhaseProfile, RadioParams
from .geometry import Placement, TargetArea, freq_span, rx_spatial_freqs, tx_spatial_freqs

# |sin| below this is treated as a removable singularity of the beam kernel
_SING_EPS = 1e-12

# slack subtracted before ceil() so exact-integer sizing ratios do not get
# bumped up a whole sub-array by float rounding
_CEIL_EPS = 1e-9


@dataclass(frozen=True)
class FlattenPlan:
    """Sub-array partition and steering that realize one flattened beam.

    Attributes:
        num_subarrays: number of sub-arrays L.
        subarray_size: nominal elements per sub-array (floor(N / L)).
        steer_freqs: per-sub-array steering spatial frequencies, arithmetic
            with step 1 / (subarray_size * spacing).
        common_phases: per-sub-array common phase terms that align adjacent
            sub-beams at their crossover points.
        delta_min: lower edge of the covered spatial-frequency interval.
        spacing: element spacing in wavelengths along this axis.
    """

    num_subarrays: int
    subarray_size: int
    steer_freqs: np.ndarray
    common_phases: np.ndarray
    delta_min: float
    spacing: float

    def __post_init__(self):
        if self.num_subarrays < 1 or self.subarray_size < 1:
            raise ValueError("plan needs at least one sub-array of one element")
        steer = np.asarray(self.steer_freqs, dtype=float)
        alpha = np.asarray(self.common_phases, dtype=float)
        if steer.size != self.num_subarrays or alpha.size != self.num_subarrays:
            raise ValueError("steer_freqs and common_phases must have length L")
        half = 1.0 / (2.0 * self.subarray_size * self.spacing)
        if abs(steer[0] - (self.delta_min + half)) > 1e-9:
            raise ValueError("first steering frequency must sit half a "
                             "coverage beamwidth above delta_min")
        if steer.size > 1 and np.abs(np.diff(steer) - 2.0 * half).max() > 1e-9:
            raise ValueError("steering frequencies must be arithmetic with "
                             "step 1/(subarray_size * spacing)")
        steer.setflags(write=False)
        alpha.setflags(write=False)
        object.__setattr__(self, "steer_freqs", steer)
        object.__setattr__(self, "common_phases", alpha)

    @property
    def coverage(self) -> tuple[float, float]:
        """Spatial-frequency interval the flattened beam is credited with."""
        width = self.num_subarrays / (self.subarray_size * self.spacing)
        return self.delta_min, self.delta_min + width

    def subarray_sizes(self, n: int) -> np.ndarray:
        """Actual per-sub-array sizes for an n-element array.

        The first n mod L sub-arrays absorb one extra element each, so no
        element is ever discarded when L does not divide n.
        """
        if n // self.num_subarrays != self.subarray_size:
            raise ValueError(
                f"plan sized for subarrays of {self.subarray_size}, "
                f"inconsistent with n={n}, L={self.num_subarrays}"
            )
        sizes = np.full(self.num_subarrays, self.subarray_size, dtype=int)
        sizes[: n - self.subarray_size * self.num_subarrays] += 1
        return sizes


def conjugate_phases(
    q: Placement, w, geo: ArrayGeometry, rp: RadioParams
) -> PhaseProfile:
    """Phases that cancel the propagation offsets toward w exactly.

    The resulting array gain at w is N^2 (coherent combining); the free
    common phase is fixed to 0.
    """
    rx = rx_spatial_freqs(q)
    tx = tx_spatial_freqs(q, w)
    dphi = tx.phi_bar - rx.phi_bar
    domega = tx.omega_bar - rx.omega_bar
    ramp_x = -TWO_PI * rp.dbar_x * np.arange(geo.nx) * dphi
    ramp_y = -TWO_PI * rp.dbar_y * np.arange(geo.ny) * domega
    return PhaseProfile.from_separable(ramp_x, ramp_y)


def single_beam_pattern(ns: int, d_bar: float, delta):
    """Field pattern sin(pi ns d delta) / sin(pi d delta) of one sub-array.

    Peaks at ns for delta = 0, with nulls every 1 / (ns * d_bar). The
    removable singularities where the denominator vanishes are evaluated by
    their limit (+/- ns).
    """
    if ns < 1:
        raise ValueError("ns must be at least 1")
    arg = np.pi * d_bar * np.asarray(delta, dtype=float)
    den = np.sin(arg)
    near = np.abs(den) < _SING_EPS
    ratio = np.sin(ns * arg) / np.where(near, 1.0, den)
    limit = ns * np.cos(ns * arg) / np.cos(arg)
    out = np.where(near, limit, ratio)
    return float(out) if np.ndim(delta) == 0 else out


def _subarray_sum(m: int, d_bar: float, x: np.ndarray) -> np.ndarray:
    """Complex sum of m element phasors at spatial-frequency offset x."""
    arg = np.pi * d_bar * x
    den = np.sin(arg)
    near = np.abs(den) < _SING_EPS
    mag = np.sin(m * arg) / np.where(near, 1.0, den)
    val = np.exp(1j * (m - 1) * arg) * mag
    # all m phasors coincide at the singular offsets
    return np.where(near, complex(m), val)


def subarray_count(span: float, n: int, d_bar: float) -> int:
    """Smallest sub-array count whose broadened beam covers the span.

    The flattened beam of L sub-arrays covers L^2 / (n * d_bar) in spatial
    frequency while its worst-case gain falls as 1 / L^2, so the best L is
    the smallest one reaching the span.
    """
    if span < 0:
        raise ValueError("span must be non-negative")
    return max(1, math.ceil(math.sqrt(span * n * d_bar) - _CEIL_EPS))


def plan_flatten_1d(
    delta_min: float, delta_max: float, n: int, d_bar: float
) -> FlattenPlan:
    """Size and steer a sub-array partition covering [delta_min, delta_max].

    The number of sub-arrays is the smallest L whose broadened coverage
    beamwidth L^2 / (n * d_bar) reaches the requested span, which maximizes
    the worst-case gain ~ (2 N / (pi L))^2. A zero span degenerates to a
    single full-array beam centered on the point.
    """
    if delta_max < delta_min:
        raise ValueError("delta_max must not be below delta_min")
    if n < 1:
        raise ValueError("n must be at least 1")
    span = delta_max - delta_min
    num = subarray_count(span, n, d_bar)
    size = n // num
    half = 1.0 / (2.0 * size * d_bar)
    lo = delta_min if span > 0.0 else delta_min - half
    ls = np.arange(1, num + 1)
    steer = lo + (2 * ls - 1) * half
    alpha = -(TWO_PI * size * d_bar * lo + math.pi + math.pi / size) * ls
    return FlattenPlan(num, size, steer, alpha, lo, d_bar)


def phases_from_plan(plan: FlattenPlan, n: int) -> np.ndarray:
    """Flat per-element phases (radians) realizing the plan on n elements.

    Element i of sub-array l carries the sub-array's common phase plus its
    steering ramp; extra elements of oversized sub-arrays continue the ramp.
    """
    sizes = plan.subarray_sizes(n)
    parts = []
    for l in range(plan.num_subarrays):
        i = np.arange(sizes[l])
        parts.append(
            plan.common_phases[l]
            - TWO_PI * i * plan.spacing * plan.steer_freqs[l]
        )
    return np.concatenate(parts)


def flattened_pattern_gain(plan: FlattenPlan, n: int, delta):
    """Exact array gain of the synthesized profile at offset(s) delta.

    Matches the gain of the generated per-element profile identically: each
    sub-array contributes its beam kernel shifted to its steering frequency,
    advanced by the phase accumulated over the elements preceding it.
    """
    sizes = plan.subarray_sizes(n)
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    d = np.asarray(delta, dtype=float)
    total = np.zeros(np.shape(d), dtype=complex)
    for l in range(plan.num_subarrays):
        pre = np.exp(
            1j * (plan.common_phases[l] + TWO_PI * starts[l] * plan.spacing * d)
        )
        total = total + pre * _subarray_sum(
            int(sizes[l]), plan.spacing, d - plan.steer_freqs[l]
        )
    gain = np.abs(total) ** 2
    return float(gain) if np.ndim(delta) == 0 else gain


def plan_flatten_3d(
    q: Placement, area: TargetArea, geo: ArrayGeometry, rp: RadioParams
) -> tuple[FlattenPlan, FlattenPlan, PhaseProfile]:
    """Per-axis flattening plans and the combined separable profile.

    The planar array is treated as two decoupled linear arrays: each axis
    gets its own plan sized to that axis' spatial-frequency span of the
    area, and the element phases are the outer sum of the two 1-D designs.
    """
    lo_x, hi_x = freq_span(q, area, "x")
    lo_y, hi_y = freq_span(q, area, "y")
    plan_x = plan_flatten_1d(lo_x, hi_x, geo.nx, rp.dbar_x)
    plan_y = plan_flatten_1d(lo_y, hi_y, geo.ny, rp.dbar_y)
    theta_x = phases_from_plan(plan_x, geo.nx)
    theta_y = phases_from_plan(plan_y, geo.ny)
    return plan_x, plan_y, PhaseProfile.from_separable(theta_x, theta_y)
