"""
Contains the phase space structures of Hamiltonian quantum and hybrid
mechanics: descriptors for quantum, classical and hybrid spaces, canonical
coordinates of state vectors, tangent vectors, the symplectic form, the
Riemann metric, quadratic observables and the Poisson bracket.
"""

from .structures import \
    SpaceKind, \
    PhaseSpaceDescriptor, \
    PhasePoint, \
    TangentVector, \
    HermitianOperator, \
    quantum, \
    classical, \
    hybrid, \
    compose_quantum, \
    compose_hybrid, \
    make_point, \
    make_tangent, \
    zero_operator, \
    SIGMA_X, \
    SIGMA_Y, \
    SIGMA_Z, \
    IDENTITY_2

from .coordinates import \
    to_canonical, \
    from_canonical, \
    quantum_amplitudes, \
    norm_squared, \
    is_normalized, \
    assert_normalized_amplitudes, \
    classical_from_complex, \
    classical_to_complex, \
    product_embed, \
    split_hybrid, \
    replace_quantum, \
    phase_rotate, \
    equal_up_to_phase, \
    reduced_density_matrix

from .geometry import \
    ScalarField, \
    unit_symplectic_matrix, \
    poisson_tensor, \
    symplectic_matrix, \
    complex_structure, \
    symplectic_form, \
    riemann_metric, \
    expectation, \
    quantum_gradient, \
    observable, \
    coordinate_field, \
    finite_difference_gradient, \
    field_gradient, \
    poisson_bracket

__all__ = [
    # Structures
    "SpaceKind",
    "PhaseSpaceDescriptor",
    "PhasePoint",
    "TangentVector",
    "HermitianOperator",
    "quantum",
    "classical",
    "hybrid",
    "compose_quantum",
    "compose_hybrid",
    "make_point",
    "make_tangent",
    "zero_operator",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY_2",

    # Coordinates
    "to_canonical",
    "from_canonical",
    "quantum_amplitudes",
    "norm_squared",
    "is_normalized",
    "assert_normalized_amplitudes",
    "classical_from_complex",
    "classical_to_complex",
    "product_embed",
    "split_hybrid",
    "replace_quantum",
    "phase_rotate",
    "equal_up_to_phase",
    "reduced_density_matrix",

    # Geometry
    "ScalarField",
    "unit_symplectic_matrix",
    "poisson_tensor",
    "symplectic_matrix",
    "complex_structure",
    "symplectic_form",
    "riemann_metric",
    "expectation",
    "quantum_gradient",
    "observable",
    "coordinate_field",
    "finite_difference_gradient",
    "field_gradient",
    "poisson_bracket"
]
