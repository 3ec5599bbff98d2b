"""Command-line front end: scenario configuration and CSV emission.

Scenarios are described by a flat ``key = value`` text file (every key
optional, defaults below) plus ``--set key=value`` overrides. dBm/dB inputs
are converted to linear units here, at the boundary; the library itself is
all-linear. Subcommands write CSV to ``--out`` or stdout and exit nonzero
with a one-line diagnostic on any error.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import bench
from .beamform import flattened_pattern_gain, plan_flatten_1d
from .channel import ArrayGeometry, RadioParams, from_db, to_db
from .geometry import TargetArea
from .placement import (
    optimal_placement_single,
    search_placement_ula,
    search_placement_upa,
    single_location_snr,
)

# config keys use the scenario's own notation; attributes are snake_case
_KEY_TO_ATTR = {
    "H": "h",
    "tx_power_dbm": "tx_power_dbm",
    "noise_dbm": "noise_dbm",
    "beta0_db": "beta0_db",
    "M": "m",
    "Nx": "nx",
    "Ny": "ny",
    "dbar_x": "dbar_x",
    "dbar_y": "dbar_y",
    "wavelength": "wavelength",
    "area_center_x": "area_center_x",
    "area_length": "area_length",
    "area_width": "area_width",
    "q_min": "q_min",
    "q_max": "q_max",
    "q_step": "q_step",
    "grid_nx": "grid_nx",
    "grid_ny": "grid_ny",
}
_ATTR_TO_KEY = {v: k for k, v in _KEY_TO_ATTR.items()}
_INT_KEYS = {"M", "Nx", "Ny", "grid_nx", "grid_ny"}


@dataclass(frozen=True)
class ScenarioConfig:
    """One fully-resolved scenario; defaults are the shared desk-scale setup."""

    h: float = 100.0
    tx_power_dbm: float = 20.0
    noise_dbm: float = -110.0
    beta0_db: float = -40.0
    m: int = 64
    nx: int = 256
    ny: int = 1
    dbar_x: float = 0.1
    dbar_y: float = 0.1
    wavelength: float = 0.125
    area_center_x: float = 1000.0
    area_length: float = 1000.0
    area_width: float = 600.0
    q_min: float = -500.0
    q_max: float = 1000.0
    q_step: float = 1.0
    grid_nx: int = 101
    grid_ny: int = 61

    def __post_init__(self):
        checks = [
            ("H", self.h > 0, "must be positive"),
            ("M", self.m >= 1, "must be at least 1"),
            ("Nx", self.nx >= 1, "must be at least 1"),
            ("Ny", self.ny >= 1, "must be at least 1"),
            ("dbar_x", 0 < self.dbar_x < 0.5, "must lie in (0, 0.5)"),
            ("dbar_y", 0 < self.dbar_y < 0.5, "must lie in (0, 0.5)"),
            ("wavelength", self.wavelength > 0, "must be positive"),
            ("area_length", self.area_length >= 0, "must be non-negative"),
            ("area_width", self.area_width >= 0, "must be non-negative"),
            ("q_step", self.q_step > 0, "must be positive"),
            ("q_max", self.q_min < self.q_max, "must exceed q_min"),
            ("grid_nx", self.grid_nx >= 1, "must be at least 1"),
            ("grid_ny", self.grid_ny >= 1, "must be at least 1"),
        ]
        for key, ok, constraint in checks:
            if not ok:
                raise ValueError(f"config key {key}: {constraint}")

    def radio_params(self) -> RadioParams:
        return RadioParams(
            tx_power=1e-3 * float(from_db(self.tx_power_dbm)),
            noise_power=1e-3 * float(from_db(self.noise_dbm)),
            ref_gain=float(from_db(self.beta0_db)),
            dbar_x=self.dbar_x,
            dbar_y=self.dbar_y,
            wavelength=self.wavelength,
        )

    def array_geometry(self) -> ArrayGeometry:
        return ArrayGeometry(nx=self.nx, ny=self.ny, m_tx=self.m)

    def target_area(self) -> TargetArea:
        return TargetArea(self.area_center_x, self.area_length, self.area_width)


def _coerce(key: str, raw: str):
    text = raw.replace("−", "-").strip().strip('"').strip("'")
    try:
        return int(text) if key in _INT_KEYS else float(text)
    except ValueError:
        kind = "an integer" if key in _INT_KEYS else "a number"
        raise ValueError(f"config key {key}: expected {kind}, got {raw!r}")


def parse_config(text: str, overrides: dict[str, str] | None = None) -> ScenarioConfig:
    """Parse flat ``key = value`` text into a validated ScenarioConfig.

    Unset keys take the scenario defaults; ``q_min``/``q_max`` default to
    -5H and the area center. Unknown keys and out-of-range values raise
    ValueError naming the key.
    """
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"config line {lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _KEY_TO_ATTR:
            raise ValueError(f"unknown config key {key!r}")
        values[_KEY_TO_ATTR[key]] = _coerce(key, raw)
    for key, raw in (overrides or {}).items():
        if key not in _KEY_TO_ATTR:
            raise ValueError(f"unknown config key {key!r}")
        values[_KEY_TO_ATTR[key]] = _coerce(key, raw)
    if "q_min" not in values:
        values["q_min"] = -5.0 * float(values.get("h", 100.0))
    if "q_max" not in values:
        values["q_max"] = float(values.get("area_center_x", 1000.0))
    return ScenarioConfig(**values)


def serialize_config(cfg: ScenarioConfig) -> str:
    """Render a config as flat text that parses back to an identical config."""
    lines = []
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        lines.append(f"{_ATTR_TO_KEY[f.name]} = {value!r}")
    return "\n".join(lines) + "\n"


def _thread_cap() -> int:
    raw = os.environ.get("AIRS_THREADS", "")
    if raw == "":
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"AIRS_THREADS must be a non-negative integer, got {raw!r}")
    if cap < 0:
        raise ValueError(f"AIRS_THREADS must be a non-negative integer, got {cap}")
    return cap if cap > 0 else (os.cpu_count() or 1)


def _load_config(args) -> ScenarioConfig:
    text = ""
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    overrides = {}
    for item in getattr(args, "set", None) or []:
        if "=" not in item:
            raise ValueError(f"--set expects key=value, got {item!r}")
        key, raw = item.split("=", 1)
        overrides[key.strip()] = raw
    return parse_config(text, overrides)


def _emit(table: bench.ExperimentTable, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            bench.write_csv(table, fh)
    else:
        buf = io.StringIO()
        bench.write_csv(table, buf)
        sys.stdout.write(buf.getvalue())


def _cmd_single_loc(args) -> int:
    cfg = _load_config(args)
    w1 = (args.w1[0], args.w1[1])
    n = args.n if args.n is not None else cfg.nx * cfg.ny
    rp = cfg.radio_params()
    xis, cands = optimal_placement_single(w1, cfg.h)
    best = single_location_snr(w1, cfg.h, n, cfg.m, rp)
    rows = [(0, "snr-db", float(to_db(best)))]
    for i, (xi, q) in enumerate(zip(xis, cands), start=1):
        rows += [(i, "xi", xi), (i, "qx", q.qx), (i, "qy", q.qy)]
    _emit(bench.ExperimentTable(("sweep", "scheme", "value_db"), tuple(rows)),
          args.out)
    return 0


def _cmd_flatten_1d(args) -> int:
    plan = plan_flatten_1d(args.delta_min, args.delta_max, args.n, args.dbar)
    lo, hi = plan.coverage
    rows = [
        (0, "num-subarrays", plan.num_subarrays),
        (0, "subarray-size", plan.subarray_size),
        (0, "coverage-lo", lo),
        (0, "coverage-hi", hi),
    ]
    for l in range(plan.num_subarrays):
        rows.append((l + 1, "steer-freq", plan.steer_freqs[l]))
        rows.append((l + 1, "common-phase", plan.common_phases[l]))
    _emit(bench.ExperimentTable(("sweep", "scheme", "value_db"), tuple(rows)),
          args.out)
    return 0


def _cmd_pattern_dump(args) -> int:
    plan = plan_flatten_1d(args.delta_min, args.delta_max, args.n, args.dbar)
    lo, hi = plan.coverage
    deltas = np.linspace(lo - args.margin, hi + args.margin, args.points)
    gains = flattened_pattern_gain(plan, args.n, deltas)
    rows = tuple(
        (d, float(to_db(max(g, 1e-30))))
        for d, g in zip(deltas.tolist(), gains.tolist())
    )
    _emit(bench.ExperimentTable(("delta", "gain_db"), rows), args.out)
    return 0


def _placement_rows(res) -> tuple:
    return (
        (0, "qx-star", res.q_star.qx),
        (0, "qy-star", res.q_star.qy),
        (0, "worst-snr-db", float(to_db(max(res.worst_snr_linear, 1e-30)))),
        (0, "worst-snr-approx-db",
         float(to_db(max(res.worst_snr_approx_linear, 1e-30)))),
        (0, "subarrays-x", res.subarrays_x),
        (0, "subarrays-y", res.subarrays_y),
        (0, "span-x", res.span_x),
        (0, "span-y", res.span_y),
    )


def _cmd_place(args, search) -> int:
    cfg = _load_config(args)
    res = search(cfg.target_area(), cfg.array_geometry(), cfg.radio_params(),
                 cfg.h, q_min=cfg.q_min, q_max=cfg.q_max, step=cfg.q_step,
                 grid_pts=(cfg.grid_nx, cfg.grid_ny), threads=_thread_cap())
    _emit(bench.ExperimentTable(("sweep", "scheme", "value_db"),
                                _placement_rows(res)), args.out)
    return 0


def _cmd_figure(args) -> int:
    spec = bench.figure_spec(args.id, out_path=args.out)
    if args.sweep:
        sweep = tuple(float(v) for v in args.sweep.split(","))
        spec = bench.ExperimentSpec(spec.scenario, sweep, spec.schemes,
                                    spec.out_path)
    table = bench.run_experiment(spec, threads=_thread_cap())
    _emit(table, args.out)
    return 0


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.replace("−", "-").split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected two comma-separated numbers")
    return float(parts[0]), float(parts[1])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="airscov",
        description="Placement and passive-beamforming design for an aerial "
                    "reflecting-surface relay.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="path to a flat key = value scenario file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override one config key (repeatable)")
        p.add_argument("--out", help="write CSV here instead of stdout")

    p = sub.add_parser("single-loc", help="closed-form single-target placement")
    common(p)
    p.add_argument("--w1", type=_parse_pair, default=(1000.0, 0.0),
                   metavar="X,Y", help="target location in meters")
    p.add_argument("--N", dest="n", type=int, default=None,
                   help="total reflecting elements (default Nx*Ny)")
    p.set_defaults(func=_cmd_single_loc)

    p = sub.add_parser("flatten-1d", help="sub-array flattening plan for a span")
    p.add_argument("--delta-min", type=float, required=True)
    p.add_argument("--delta-max", type=float, required=True)
    p.add_argument("--N", dest="n", type=int, required=True)
    p.add_argument("--dbar", type=float, default=0.1,
                   help="element spacing in wavelengths")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_flatten_1d)

    p = sub.add_parser("pattern-dump", help="gain samples of a flattened beam")
    p.add_argument("--delta-min", type=float, required=True)
    p.add_argument("--delta-max", type=float, required=True)
    p.add_argument("--N", dest="n", type=int, required=True)
    p.add_argument("--dbar", type=float, default=0.1)
    p.add_argument("--points", type=int, default=4096)
    p.add_argument("--margin", type=float, default=0.0,
                   help="extra spatial frequency beyond the coverage interval")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_pattern_dump)

    p = sub.add_parser("place-ula", help="placement search for a linear array")
    common(p)
    p.set_defaults(func=lambda a: _cmd_place(a, search_placement_ula))

    p = sub.add_parser("place-upa", help="placement search for a planar array")
    common(p)
    p.set_defaults(func=lambda a: _cmd_place(a, search_placement_upa))

    p = sub.add_parser("figure", help="emit one preset experiment table")
    p.add_argument("id", help=f"one of: {', '.join(bench.FIGURE_IDS)}")
    p.add_argument("--sweep", help="comma-separated sweep override")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
