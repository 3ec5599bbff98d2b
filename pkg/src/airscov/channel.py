"""Free-space line-of-sight channel model and exact end-to-end SNR.

Both hops follow inverse-square path loss relative to a reference gain at
1 m. The reflected signal adds coherently according to the per-element phase
shifts; transmit beamforming at the source is matched-filter optimal and
location-independent, so it enters the SNR only as the antenna-count factor
``m_tx``. All quantities here are linear; conversion to dB happens in the
reporting layers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .geometry import Placement, TargetArea, rx_spatial_freqs

TWO_PI = 2.0 * math.pi

# grid points per worker chunk when threaded evaluation is requested
_CHUNK = 2048


def to_db(x) -> np.ndarray | float:
    """Linear power ratio to dB."""
    return 10.0 * np.log10(x)


def from_db(x) -> np.ndarray | float:
    """dB to linear power ratio."""
    return 10.0 ** (np.asarray(x, dtype=float) / 10.0)


@dataclass(frozen=True)
class RadioParams:
    """Link-budget constants shared by every evaluation.

    Attributes:
        tx_power: source transmit power P (W).
        noise_power: receiver noise power (W).
        ref_gain: channel power gain at 1 m reference distance (linear).
        dbar_x: element spacing along x in wavelengths, in (0, 0.5).
        dbar_y: element spacing along y in wavelengths, in (0, 0.5).
        wavelength: carrier wavelength (m); only used to convert element
            spacings to meters when the array's physical footprint matters.
    """

    tx_power: float
    noise_power: float
    ref_gain: float
    dbar_x: float = 0.1
    dbar_y: float = 0.1
    wavelength: float = 0.125

    def __post_init__(self):
        if not self.tx_power > 0:
            raise ValueError("tx_power must be positive")
        if not self.noise_power > 0:
            raise ValueError("noise_power must be positive")
        if not self.ref_gain > 0:
            raise ValueError("ref_gain must be positive")
        for name in ("dbar_x", "dbar_y"):
            v = getattr(self, name)
            if not 0.0 < v < 0.5:
                raise ValueError(f"{name} must lie in (0, 0.5), got {v}")
        if not self.wavelength > 0:
            raise ValueError("wavelength must be positive")

    @property
    def pbar(self) -> float:
        """Transmit SNR P / noise_power."""
        return self.tx_power / self.noise_power


@dataclass(frozen=True)
class ArrayGeometry:
    """Element counts: nx-by-ny reflecting array, m_tx source antennas."""

    nx: int
    ny: int = 1
    m_tx: int = 64

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("nx and ny must be at least 1")
        if self.m_tx < 1:
            raise ValueError("m_tx must be at least 1")

    @property
    def n(self) -> int:
        return self.nx * self.ny

    @property
    def is_ula(self) -> bool:
        return self.ny == 1


@dataclass(frozen=True)
class PhaseProfile:
    """Per-element phase shifts, wrapped to [0, 2pi).

    The flat layout is row-major over (nx, ny): element (nx, ny), both
    1-based, sits at flat index (nx - 1) * Ny + (ny - 1).
    """

    theta: np.ndarray

    def __post_init__(self):
        arr = np.mod(np.asarray(self.theta, dtype=float).ravel(), TWO_PI)
        if not np.all(np.isfinite(arr)):
            raise ValueError("phase shifts must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "theta", arr)

    def __len__(self) -> int:
        return self.theta.size

    @classmethod
    def from_separable(cls, theta_x, theta_y) -> "PhaseProfile":
        """Profile theta[nx, ny] = theta_x[nx] + theta_y[ny]."""
        tx = np.asarray(theta_x, dtype=float).ravel()
        ty = np.asarray(theta_y, dtype=float).ravel()
        return cls((tx[:, None] + ty[None, :]).ravel())

    def grid(self, geo: ArrayGeometry) -> np.ndarray:
        """Phases reshaped to (nx, ny)."""
        if len(self) != geo.n:
            raise ValueError(
                f"profile has {len(self)} phases but geometry needs {geo.n}"
            )
        return self.theta.reshape(geo.nx, geo.ny)


def path_gain_source_airs(q: Placement, rp: RadioParams) -> float:
    """Channel power gain of the source-to-array hop."""
    return rp.ref_gain / (q.h * q.h + q.qx * q.qx + q.qy * q.qy)


def path_gain_airs_dest(q: Placement, w, rp: RadioParams) -> float:
    """Channel power gain of the array-to-ground hop toward w = (wx, wy)."""
    dx = float(w[0]) - q.qx
    dy = float(w[1]) - q.qy
    return rp.ref_gain / (q.h * q.h + dx * dx + dy * dy)


def _weights_grid(phases, geo: ArrayGeometry) -> np.ndarray:
    """Complex element weights as an (nx, ny) grid.

    Accepts a PhaseProfile (unit-modulus weights) or a flat complex array of
    explicit weights, e.g. with zeroed amplitudes for deactivated elements.
    """
    if isinstance(phases, PhaseProfile):
        return np.exp(1j * phases.grid(geo))
    w = np.asarray(phases, dtype=complex).ravel()
    if w.size != geo.n:
        raise ValueError(f"got {w.size} weights but geometry needs {geo.n}")
    return w.reshape(geo.nx, geo.ny)


def _gain_for_offsets(
    dphi: np.ndarray,
    domega: np.ndarray,
    wgrid: np.ndarray,
    rp: RadioParams,
    threads: int = 1,
) -> np.ndarray:
    """|sum of element phasors|^2 for arrays of spatial-frequency offsets."""
    dphi = np.atleast_1d(np.asarray(dphi, dtype=float))
    domega = np.atleast_1d(np.asarray(domega, dtype=float))
    nx, ny = wgrid.shape
    px = TWO_PI * rp.dbar_x * np.arange(nx)
    py = TWO_PI * rp.dbar_y * np.arange(ny)
    out = np.empty(dphi.shape, dtype=float)

    def fill(sl):
        ax = np.exp(1j * np.outer(dphi[sl], px))
        ay = np.exp(1j * np.outer(domega[sl], py))
        total = np.einsum("gx,xy,gy->g", ax, wgrid, ay)
        out[sl] = np.abs(total) ** 2

    g = dphi.size
    if threads <= 1 or g <= _CHUNK:
        fill(slice(0, g))
    else:
        slices = [slice(i, min(i + _CHUNK, g)) for i in range(0, g, _CHUNK)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill, slices))
    return out


def array_gain(
    q: Placement, w, phases: PhaseProfile, geo: ArrayGeometry, rp: RadioParams
) -> float:
    """Passive-beamforming power gain at ground point w, in [0, N^2].

    Equals N^2 exactly when the phases conjugate the per-element propagation
    phase offsets (coherent combining).
    """
    rx = rx_spatial_freqs(q)
    dx = float(w[0]) - q.qx
    dy = float(w[1]) - q.qy
    d = math.sqrt(q.h * q.h + dx * dx + dy * dy)
    dphi = dx / d - rx.phi_bar
    domega = dy / d - rx.omega_bar
    wgrid = _weights_grid(phases, geo)
    return float(_gain_for_offsets(dphi, domega, wgrid, rp)[0])


def _cascade(q: Placement, wx, wy):
    """Product of squared hop distances (h^2 + |q - w|^2)(h^2 + |q|^2)."""
    h2 = q.h * q.h
    d2 = (np.asarray(wx, dtype=float) - q.qx) ** 2 + (
        np.asarray(wy, dtype=float) - q.qy
    ) ** 2
    return (h2 + d2) * (h2 + q.qx * q.qx + q.qy * q.qy)


def snr(
    q: Placement, w, phases: PhaseProfile, geo: ArrayGeometry, rp: RadioParams
) -> float:
    """Exact linear SNR at ground point w for a given phase profile."""
    gain = array_gain(q, w, phases, geo, rp)
    pref = rp.pbar * rp.ref_gain**2 * geo.m_tx
    return pref * gain / float(_cascade(q, float(w[0]), float(w[1])))


def snr_separable(
    q: Placement, w, theta_x, theta_y, geo: ArrayGeometry, rp: RadioParams
) -> float:
    """SNR for a separable profile theta[nx, ny] = theta_x[nx] + theta_y[ny].

    The double phasor sum factors exactly into the product of the two 1-D
    sums, so this equals ``snr`` called with the combined profile.
    """
    tx = np.asarray(theta_x, dtype=float).ravel()
    ty = np.asarray(theta_y, dtype=float).ravel()
    if tx.size != geo.nx or ty.size != geo.ny:
        raise ValueError(
            f"need {geo.nx} x-phases and {geo.ny} y-phases, "
            f"got {tx.size} and {ty.size}"
        )
    rx = rx_spatial_freqs(q)
    dx = float(w[0]) - q.qx
    dy = float(w[1]) - q.qy
    d = math.sqrt(q.h * q.h + dx * dx + dy * dy)
    dphi = dx / d - rx.phi_bar
    domega = dy / d - rx.omega_bar
    sx = np.exp(1j * (tx + TWO_PI * rp.dbar_x * np.arange(geo.nx) * dphi)).sum()
    sy = np.exp(1j * (ty + TWO_PI * rp.dbar_y * np.arange(geo.ny) * domega)).sum()
    gain = (abs(sx) * abs(sy)) ** 2
    pref = rp.pbar * rp.ref_gain**2 * geo.m_tx
    return pref * gain / float(_cascade(q, float(w[0]), float(w[1])))


def area_grid(
    area: TargetArea, nx_pts: int = 101, ny_pts: int = 61
) -> tuple[np.ndarray, np.ndarray]:
    """Evaluation grid over the rectangle; degenerate axes collapse to 1 point."""
    if nx_pts < 1 or ny_pts < 1:
        raise ValueError("grid must have at least one point per axis")
    if area.length == 0.0:
        nx_pts = 1
    if area.width == 0.0:
        ny_pts = 1
    wx = np.linspace(area.x_min, area.x_max, nx_pts)
    wy = np.linspace(area.y_min, area.y_max, ny_pts)
    return wx, wy


def snr_grid(
    q: Placement,
    phases,
    area: TargetArea,
    geo: ArrayGeometry,
    rp: RadioParams,
    nx_pts: int = 101,
    ny_pts: int = 61,
    threads: int = 1,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact SNR on a grid over the area.

    Args:
        phases: PhaseProfile, or a flat complex weight vector for designs
            with amplitude control (e.g. deactivated elements).

    Returns:
        (wx, wy, snr) with snr of shape (len(wx), len(wy)).
    """
    wx, wy = area_grid(area, nx_pts, ny_pts)
    gx, gy = np.meshgrid(wx, wy, indexing="ij")
    rx = rx_spatial_freqs(q)
    dx = gx - q.qx
    dy = gy - q.qy
    d = np.sqrt(q.h * q.h + dx * dx + dy * dy)
    dphi = (dx / d - rx.phi_bar).ravel()
    domega = (dy / d - rx.omega_bar).ravel()
    wgrid = _weights_grid(phases, geo)
    gains = _gain_for_offsets(dphi, domega, wgrid, rp, threads=threads)
    pref = rp.pbar * rp.ref_gain**2 * geo.m_tx
    vals = pref * gains.reshape(gx.shape) / _cascade(q, gx, gy)
    return wx, wy, vals


def worst_snr(
    q: Placement,
    phases,
    area: TargetArea,
    geo: ArrayGeometry,
    rp: RadioParams,
    nx_pts: int = 101,
    ny_pts: int = 61,
    threads: int = 1,
) -> float:
    """Minimum grid-evaluated SNR over the area (linear)."""
    _, _, vals = snr_grid(q, phases, area, geo, rp, nx_pts, ny_pts, threads)
    return float(vals.min())
