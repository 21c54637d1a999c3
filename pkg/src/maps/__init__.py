"""
Contains the self-replication and cloning maps, their tangent maps
(analytic Jacobians and finite-difference oracles) and the engine that
compares symplectic areas before and after a map.
"""

from .gauge import \
    GaugeVariant, \
    GaugeSpec, \
    MachineRule, \
    zero_gauge, \
    constant_gauge, \
    smooth_gauge, \
    linear_gauge, \
    gauge_partials_error, \
    CONJUGATE_MACHINE, \
    FIXED_MACHINE, \
    SWAPPED_MACHINE

from .definitions import \
    MapDefinition, \
    MAP_NAMES, \
    map_by_name, \
    self_replication, \
    quantum_cloning, \
    hybrid_cloning, \
    checked_object, \
    initial_point, \
    self_replication_map, \
    quantum_cloning_map, \
    hybrid_cloning_map, \
    clone_succeeded

from .tangents import \
    TangentParams, \
    ZeroTangentException, \
    object_tangent, \
    tangent_from_params, \
    radial_overlap

from .jacobians import \
    Method, \
    MissingJacobianException, \
    directional_difference, \
    finite_difference_jacobian, \
    analytic_jacobian, \
    pushforward, \
    jacobian_disagreement, \
    perturbed

from .verdicts import \
    EXPECTED_RATIOS, \
    RejectionSamplingException, \
    RatioVerdict, \
    SweepSummary, \
    SweepResult, \
    area_factor, \
    closed_form_area, \
    area_ratio, \
    haar_qubit_states, \
    sample_object_state, \
    sample_tangent_params, \
    summarize, \
    sweep_ratios

__all__ = [
    # Gauges and machine rules
    "GaugeVariant",
    "GaugeSpec",
    "MachineRule",
    "zero_gauge",
    "constant_gauge",
    "smooth_gauge",
    "linear_gauge",
    "gauge_partials_error",
    "CONJUGATE_MACHINE",
    "FIXED_MACHINE",
    "SWAPPED_MACHINE",

    # Maps
    "MapDefinition",
    "MAP_NAMES",
    "map_by_name",
    "self_replication",
    "quantum_cloning",
    "hybrid_cloning",
    "checked_object",
    "initial_point",
    "self_replication_map",
    "quantum_cloning_map",
    "hybrid_cloning_map",
    "clone_succeeded",

    # Tangents
    "TangentParams",
    "ZeroTangentException",
    "object_tangent",
    "tangent_from_params",
    "radial_overlap",

    # Pushforwards
    "Method",
    "MissingJacobianException",
    "directional_difference",
    "finite_difference_jacobian",
    "analytic_jacobian",
    "pushforward",
    "jacobian_disagreement",
    "perturbed",

    # Verdicts
    "EXPECTED_RATIOS",
    "RejectionSamplingException",
    "RatioVerdict",
    "SweepSummary",
    "SweepResult",
    "area_factor",
    "closed_form_area",
    "area_ratio",
    "haar_qubit_states",
    "sample_object_state",
    "sample_tangent_params",
    "summarize",
    "sweep_ratios"
]
