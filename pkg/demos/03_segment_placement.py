#!/usr/bin/env python3
"""Hovering position for covering a ground segment: three regimes.

Moving the relay toward the segment shortens the worst link but widens the
angular span it must illuminate, forcing more sub-arrays and a lower flat
gain. The best position can land left of the source, on top of it, or
partway toward the segment, purely depending on the segment's geometry.

Run:  python demos/03_segment_placement.py [--save]
"""

import sys

import numpy as np

import airscov as ac

SAVE = "--save" in sys.argv

H = 100.0
geo = ac.ArrayGeometry(nx=256, ny=1)
rp = ac.default_radio_params()

SEGMENTS = {
    "wide, near": ac.TargetArea(500.0, 500.0, 0.0),
    "wide, far": ac.TargetArea(1000.0, 1000.0, 0.0),
    "narrow, near": ac.TargetArea(240.0, 170.0, 0.0),
}

curves = {}
for label, area in SEGMENTS.items():
    res = ac.search_placement_ula(area, geo, rp, H)
    qxs = np.array([qx for qx, _ in res.objective_trace])
    costs = np.array([c for _, c in res.objective_trace])
    spans, dmax, subarrays, _ = ac.cost_curve_ula(qxs, H, area, geo, rp)
    curves[label] = (qxs, costs, subarrays, res)
    lo, hi = area.x_min, area.x_max
    print(f"{label}: segment [{lo:.0f}, {hi:.0f}] m")
    print(f"  best hover qx* = {res.q_star.qx:.0f} m "
          f"(sub-arrays: {res.subarrays_x}, span {res.span_x:.4f})")
    print(f"  worst SNR on the segment: "
          f"{10 * np.log10(res.worst_snr_linear):.2f} dB "
          f"(design estimate {10 * np.log10(res.worst_snr_approx_linear):.2f} dB)")
    steps = np.nonzero(np.diff(subarrays))[0]
    if steps.size:
        marks = ", ".join(f"{qxs[i]:.0f}" for i in steps[:6])
        print(f"  sub-array count steps at qx = {marks} m")
    print()

print("regimes: left of the source / near the source / between source and segment")

if SAVE:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(13, 3.8), sharey=False)
    for ax, (label, (qxs, costs, subarrays, res)) in zip(axes, curves.items()):
        ax.semilogy(qxs, costs, lw=1.2)
        ax.axvline(res.q_star.qx, color="r", ls="--", lw=1)
        ax2 = ax.twinx()
        ax2.step(qxs, subarrays, color="gray", alpha=0.6, where="post")
        ax2.set_ylabel("sub-arrays", color="gray", fontsize=8)
        ax.set_title(label, fontsize=10)
        ax.set_xlabel("hover position qx [m]")
        ax.set_ylabel("placement cost")
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig("demo03_segment_placement.png", dpi=130)
    print("saved demo03_segment_placement.png")
