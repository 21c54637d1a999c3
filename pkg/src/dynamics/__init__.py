"""
Contains Hamiltonian flows on quantum and hybrid phase spaces (linear,
nonlinear and mean-field), their symplectic integration, and ensemble
evolution with density matrix and purity diagnostics.
"""

from .hamiltonians import \
    QuadraticOperator, \
    PolynomialTerm, \
    ExpectationPolynomial, \
    MeanFieldHybrid, \
    HamiltonianSpec, \
    make_term, \
    quantum_dim, \
    check_space, \
    effective_operator, \
    energy, \
    gradient, \
    hamiltonian_vector_field, \
    as_scalar_field

from .integrators import \
    FixedPointConvergenceException, \
    Trajectory, \
    TRIPLE_JUMP, \
    midpoint_step, \
    composed_step, \
    step_count, \
    integrate_field, \
    flow_field, \
    linear_generator, \
    linear_step_matrix, \
    integrate, \
    flow_map, \
    flow_symplectic_check

from .ensembles import \
    EmptyEnsembleException, \
    EnsembleWeightsException, \
    TraceException, \
    EnsembleMemberException, \
    EnsembleMember, \
    HybridEnsemble, \
    Driver, \
    make_ensemble, \
    delta_ensemble, \
    two_point_ensemble, \
    ensemble_trajectories, \
    evolve_ensemble, \
    final_ensemble, \
    density_matrix, \
    purity, \
    purity_series, \
    coevolve_overlap, \
    separate_run_overlap

from .oracles import \
    unitary_oracle, \
    oracle_point, \
    commutator_expectation, \
    bracket_commutator_residual, \
    random_hermitian, \
    random_state

from .presets import \
    WEINBERG_COUPLING, \
    Preset, \
    PRESET_NAMES, \
    linear_sigma_z, \
    weinberg_quadratic, \
    oscillator_coupling, \
    meanfield_oscillator, \
    preset_by_name

__all__ = [
    # Hamiltonians
    "QuadraticOperator",
    "PolynomialTerm",
    "ExpectationPolynomial",
    "MeanFieldHybrid",
    "HamiltonianSpec",
    "make_term",
    "quantum_dim",
    "check_space",
    "effective_operator",
    "energy",
    "gradient",
    "hamiltonian_vector_field",
    "as_scalar_field",

    # Integration
    "FixedPointConvergenceException",
    "Trajectory",
    "TRIPLE_JUMP",
    "midpoint_step",
    "composed_step",
    "step_count",
    "integrate_field",
    "flow_field",
    "linear_generator",
    "linear_step_matrix",
    "integrate",
    "flow_map",
    "flow_symplectic_check",

    # Ensembles
    "EmptyEnsembleException",
    "EnsembleWeightsException",
    "TraceException",
    "EnsembleMemberException",
    "EnsembleMember",
    "HybridEnsemble",
    "Driver",
    "make_ensemble",
    "delta_ensemble",
    "two_point_ensemble",
    "ensemble_trajectories",
    "evolve_ensemble",
    "final_ensemble",
    "density_matrix",
    "purity",
    "purity_series",
    "coevolve_overlap",
    "separate_run_overlap",

    # Oracles
    "unitary_oracle",
    "oracle_point",
    "commutator_expectation",
    "bracket_commutator_residual",
    "random_hermitian",
    "random_state",

    # Presets
    "WEINBERG_COUPLING",
    "Preset",
    "PRESET_NAMES",
    "linear_sigma_z",
    "weinberg_quadratic",
    "oscillator_coupling",
    "meanfield_oscillator",
    "preset_by_name"
]
