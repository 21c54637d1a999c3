"""
Named Hamiltonians with their default initial points, runnable from the
command line by name.
"""
from typing import NamedTuple

import numpy as np

from ..phase_space import \
    PhasePoint, \
    SIGMA_X, \
    SIGMA_Z, \
    classical, \
    quantum, \
    to_canonical, \
    product_embed, \
    zero_operator
from .hamiltonians import \
    HamiltonianSpec, \
    QuadraticOperator, \
    ExpectationPolynomial, \
    MeanFieldHybrid, \
    make_term

# Strength of the <sigma_x>^2 term of the nonlinear preset
WEINBERG_COUPLING = 0.3


class Preset(NamedTuple):
    name: str
    hamiltonian: HamiltonianSpec
    initial_point: PhasePoint
    description: str


def linear_sigma_z() -> Preset:
    return Preset(
        name="linear-sigma-z",
        hamiltonian=QuadraticOperator(SIGMA_Z),
        initial_point=to_canonical(np.array([1.0, 1.0]) / np.sqrt(2.0), quantum(2)),
        description="<sigma_z>, the linear Schrodinger flow of a qubit"
    )


def weinberg_quadratic(coupling: float = WEINBERG_COUPLING) -> Preset:
    return Preset(
        name="weinberg-quadratic",
        hamiltonian=ExpectationPolynomial((
            make_term(1.0, [SIGMA_Z], [1]),
            make_term(coupling, [SIGMA_X], [2])
        )),
        initial_point=to_canonical(np.array([1.0, 1.0]) / np.sqrt(2.0), quantum(2)),
        description=f"<sigma_z> + {coupling} <sigma_x>^2, a nonlinear phase-invariant flow"
    )


def oscillator_coupling(coupling: float = 1.0) -> MeanFieldHybrid:
    """
    A unit harmonic oscillator coupled to a qubit:
    H = (p^2 + q^2)/2 + <sigma_z> + coupling * q <sigma_x>.
    """
    zero = zero_operator(2)
    return MeanFieldHybrid(
        n_classical=1,
        classical_energy=lambda q, p: 0.5 * float(p[0] ** 2 + q[0] ** 2),
        quantum_operator=SIGMA_Z,
        interaction=lambda q, p: float(coupling * q[0]) * SIGMA_X,
        classical_gradient=lambda q, p: (q.copy(), p.copy()),
        interaction_partials=lambda q, p: ([coupling * SIGMA_X], [zero])
    )


def meanfield_oscillator(coupling: float = 1.0) -> Preset:
    return Preset(
        name="meanfield-oscillator",
        hamiltonian=oscillator_coupling(coupling),
        initial_point=product_embed(
            PhasePoint(classical(1), np.array([1.0, 0.0])),
            to_canonical([1.0, 0.0], quantum(2))),
        description="(p^2 + q^2)/2 + <sigma_z> + q <sigma_x>, a mean-field hybrid"
    )


_PRESETS = {
    "linear-sigma-z": linear_sigma_z,
    "weinberg-quadratic": weinberg_quadratic,
    "meanfield-oscillator": meanfield_oscillator
}

PRESET_NAMES = tuple(_PRESETS)


def preset_by_name(name: str) -> Preset:
    """
    Raises:
        ValueError: Raised for names outside PRESET_NAMES
    """
    if name not in _PRESETS:
        raise ValueError(
            f"Unknown preset '{name}'; expected one of {', '.join(PRESET_NAMES)}")
    return _PRESETS[name]()


__all__ = [
    "WEINBERG_COUPLING",
    "Preset",
    "PRESET_NAMES",
    "linear_sigma_z",
    "weinberg_quadratic",
    "oscillator_coupling",
    "meanfield_oscillator",
    "preset_by_name"
]
