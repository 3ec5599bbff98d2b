"""Coordinate geometry for an elevated reflecting array serving a ground area.

The source node sits at the origin of the x-y plane; the reflecting array
flies at a fixed altitude ``h`` with horizontal position ``q = (qx, qy)``.
Target locations ``w = (wx, wy)`` lie in an axis-aligned rectangle on the
ground, centered on the x-axis. Spatial frequencies are the sine-space
direction cosines of the incoming/outgoing rays; their per-axis deviation
between the receive and transmit directions is what every array-gain
computation downstream consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EDGE_SAMPLES = 256  # interior samples per rectangle edge for span extrema


@dataclass(frozen=True)
class Placement:
    """Horizontal array position (m) at fixed altitude ``h`` > 0 (m)."""

    qx: float
    qy: float
    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"altitude h must be positive, got {self.h}")

    @property
    def xy(self) -> np.ndarray:
        return np.array([self.qx, self.qy], dtype=float)


@dataclass(frozen=True)
class TargetArea:
    """Axis-aligned ground rectangle centered on the x-axis.

    Attributes:
        center_x: x-coordinate of the rectangle center (m).
        length: extent along x (m); 0 collapses the rectangle to a segment
            along y, or to a point if ``width`` is 0 too.
        width: extent along y (m); 0 gives a segment along x.
    """

    center_x: float
    length: float
    width: float

    def __post_init__(self):
        if self.length < 0 or self.width < 0:
            raise ValueError("area length and width must be non-negative")

    @property
    def x_min(self) -> float:
        return self.center_x - self.length / 2.0

    @property
    def x_max(self) -> float:
        return self.center_x + self.length / 2.0

    @property
    def y_min(self) -> float:
        return -self.width / 2.0

    @property
    def y_max(self) -> float:
        return self.width / 2.0

    @property
    def is_point(self) -> bool:
        return self.length == 0.0 and self.width == 0.0

    def corners(self) -> np.ndarray:
        """The 4 rectangle corners as a (4, 2) array."""
        return np.array(
            [
                [self.x_min, self.y_min],
                [self.x_min, self.y_max],
                [self.x_max, self.y_min],
                [self.x_max, self.y_max],
            ]
        )

    def boundary_points(self, edge_samples: int = EDGE_SAMPLES) -> np.ndarray:
        """Corner-exact boundary sampling of the rectangle, shape (P, 2).

        Each of the 4 edges contributes its two corners plus ``edge_samples``
        interior points. Extrema of the spatial-frequency deviation over the
        rectangle are attained on the boundary (the deviation has no interior
        stationary points), so this point set bounds the extrema to well below
        1e-4 at the default density.
        """
        tx = np.linspace(self.x_min, self.x_max, edge_samples + 2)
        ty = np.linspace(self.y_min, self.y_max, edge_samples + 2)
        edges = [
            np.column_stack([tx, np.full_like(tx, self.y_min)]),
            np.column_stack([tx, np.full_like(tx, self.y_max)]),
            np.column_stack([np.full_like(ty, self.x_min), ty]),
            np.column_stack([np.full_like(ty, self.x_max), ty]),
        ]
        return np.concatenate(edges, axis=0)


@dataclass(frozen=True)
class SpatialFrequencies:
    """Direction cosines of one ray: sin(zenith) * {cos, sin}(azimuth)."""

    phi_bar: float
    omega_bar: float

    def __post_init__(self):
        if self.phi_bar**2 + self.omega_bar**2 > 1.0 + 1e-12:
            raise ValueError("phi_bar^2 + omega_bar^2 must not exceed 1")


def dist_source_to_airs(q: Placement) -> float:
    """3-D distance (m) from the source at the origin to the array."""
    return math.sqrt(q.h * q.h + q.qx * q.qx + q.qy * q.qy)


def rx_spatial_freqs(q: Placement) -> SpatialFrequencies:
    """Spatial frequencies of the ray arriving at the array from the source."""
    d = dist_source_to_airs(q)
    return SpatialFrequencies(q.qx / d, q.qy / d)


def tx_spatial_freqs(q: Placement, w) -> SpatialFrequencies:
    """Spatial frequencies of the ray leaving the array toward ground point w.

    Args:
        q: array placement.
        w: ground location as a length-2 sequence (wx, wy) in meters.
    """
    wx, wy = float(w[0]), float(w[1])
    dx = wx - q.qx
    dy = wy - q.qy
    d = math.sqrt(q.h * q.h + dx * dx + dy * dy)
    return SpatialFrequencies(dx / d, dy / d)


def _tx_deviation(q: Placement, pts: np.ndarray, axis: str) -> np.ndarray:
    """Per-point deviation of the transmit from the receive spatial frequency."""
    rx = rx_spatial_freqs(q)
    dx = pts[..., 0] - q.qx
    dy = pts[..., 1] - q.qy
    d = np.sqrt(q.h * q.h + dx * dx + dy * dy)
    if axis == "x":
        return dx / d - rx.phi_bar
    if axis == "y":
        return dy / d - rx.omega_bar
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def freq_span(
    q: Placement, area: TargetArea, axis: str = "x"
) -> tuple[float, float]:
    """Extrema of the spatial-frequency deviation over the target area.

    Returns ``(delta_min, delta_max)`` for the requested axis, evaluated on
    the rectangle's corners plus dense boundary sampling. The width
    ``delta_max - delta_min`` is the angular span the reflected beam must
    cover.
    """
    dev = _tx_deviation(q, area.boundary_points(), axis)
    return float(dev.min()), float(dev.max())


def max_dist_to_area(q: Placement, area: TargetArea) -> float:
    """Maximum horizontal distance (m) from q to the rectangle.

    Distance to a point is convex, so the maximum over the rectangle is
    attained at one of the 4 corners; this is exact.
    """
    c = area.corners()
    d2 = (c[:, 0] - q.qx) ** 2 + (c[:, 1] - q.qy) ** 2
    return float(np.sqrt(d2.max()))
