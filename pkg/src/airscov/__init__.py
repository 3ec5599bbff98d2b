"""Joint placement and passive-beamforming design for an aerial
reflecting-surface relay serving a ground coverage area."""

from .geometry import (
    Placement,
    SpatialFrequencies,
    TargetArea,
    dist_source_to_airs,
    freq_span,
    max_dist_to_area,
    rx_spatial_freqs,
    tx_spatial_freqs,
)
from .channel import (
    ArrayGeometry,
    PhaseProfile,
    RadioParams,
    array_gain,
    from_db,
    path_gain_airs_dest,
    path_gain_source_airs,
    snr,
    snr_grid,
    snr_separable,
    to_db,
    worst_snr,
)
from .beamform import (
    FlattenPlan,
    conjugate_phases,
    flattened_pattern_gain,
    phases_from_plan,
    plan_flatten_1d,
    plan_flatten_3d,
    single_beam_pattern,
    subarray_count,
)
from .placement import (
    PlacementResult,
    approx_worst_snr,
    cost_curve_ula,
    optimal_placement_single,
    placement_objective_ula,
    search_placement_ula,
    search_placement_upa,
    single_location_snr,
)
from .bench import (
    ExperimentSpec,
    ExperimentTable,
    benchmark_1d_on_upa,
    benchmark_center_placement,
    benchmark_deactivation,
    default_radio_params,
    figure_spec,
    measured_worst_coverage_gain,
    run_experiment,
    worst_case_gain_law,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
