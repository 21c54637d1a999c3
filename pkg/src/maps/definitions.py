"""
Contains the self-replication and cloning maps and the record which
describes a smooth map between phase spaces.

Every bundled map reads the object qubit (alpha, beta) off its domain
point, builds the image in complex notation and converts it back to
canonical coordinates. Analytic Jacobians are assembled from the
derivatives of the image with respect to (Re alpha, Im alpha, Re beta,
Im beta); the domain directions that don't carry the object contribute
nothing.
"""
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

import config
from ..exceptions import SpaceKindException
from ..phase_space import \
    PhaseSpaceDescriptor, \
    PhasePoint, \
    quantum, \
    classical, \
    compose_quantum, \
    compose_hybrid, \
    to_canonical, \
    quantum_amplitudes, \
    classical_from_complex, \
    product_embed, \
    assert_normalized_amplitudes, \
    reduced_density_matrix
from .gauge import \
    GaugeSpec, \
    GaugeVariant, \
    MachineRule, \
    zero_gauge, \
    CONJUGATE_MACHINE, \
    FIXED_MACHINE, \
    SWAPPED_MACHINE

QUBIT = quantum(2)
MACHINE_DOF = 2


class MapDefinition(NamedTuple):
    """
    A smooth map between phase spaces.

    embed places an object state (alpha, beta) on the initial submanifold
    M_in of the domain, and object_columns lists the domain coordinates
    (x_alpha, y_alpha, x_beta, y_beta) that carry it. Maps built by hand
    (identity, linear maps) can leave these, the Jacobian, the gauge and
    the machine rule unset.
    """
    name: str
    domain: PhaseSpaceDescriptor
    codomain: PhaseSpaceDescriptor
    forward: Callable[[PhasePoint], PhasePoint]
    analytic_jacobian: Optional[Callable[[PhasePoint], np.ndarray]] = None
    gauge: GaugeSpec = zero_gauge()
    machine_final_rule: Optional[MachineRule] = None
    embed: Optional[Callable[[complex, complex], PhasePoint]] = None
    object_columns: Optional[Tuple[int, int, int, int]] = None


class _Image(NamedTuple):
    """An image in complex notation, before the gauge phase is applied."""
    quantum: np.ndarray
    classical: Optional[np.ndarray] = None


class _ImageRule(NamedTuple):
    """How a bundled map builds its image and the image's derivatives."""
    image: Callable[[complex, complex], _Image]
    # (4, n_quantum) and optionally (4, n_classical) complex arrays
    partials: Callable[[complex, complex], _Image]


def _object_columns(domain: PhaseSpaceDescriptor, stride: int) -> Tuple[int, int, int, int]:
    """
    Domain coordinates of (x_alpha, y_alpha, x_beta, y_beta) when the object
    is the outermost tensor factor: alpha sits at amplitude 0, beta at
    amplitude `stride` (the size of the remaining factors).
    """
    offset = domain.quantum_offset
    n = domain.n_quantum
    return (offset, offset + n, offset + stride, offset + n + stride)


def _read_object(point: PhasePoint, columns: Tuple[int, int, int, int]) -> Tuple[complex, complex]:
    scale = np.sqrt(point.space.hbar / 2.0)
    c = point.coords
    return (
        complex(scale * c[columns[0]], scale * c[columns[1]]),
        complex(scale * c[columns[2]], scale * c[columns[3]])
    )


def _image_coords(
    codomain: PhaseSpaceDescriptor,
    quantum_part: np.ndarray,
    classical_part: Optional[np.ndarray]
) -> np.ndarray:
    """Canonical coordinates of an image given in complex notation."""
    blocks = []
    if codomain.has_classical:
        blocks.append(np.sqrt(2.0) * np.concatenate(
            [classical_part.real, classical_part.imag]))
    blocks.append(np.sqrt(2.0 / codomain.hbar) * np.concatenate(
        [quantum_part.real, quantum_part.imag]))
    return np.concatenate(blocks)


def _build_map(
    name: str,
    domain: PhaseSpaceDescriptor,
    codomain: PhaseSpaceDescriptor,
    rule: _ImageRule,
    embed: Callable[[complex, complex], PhasePoint],
    columns: Tuple[int, int, int, int],
    gauge: GaugeSpec,
    machine_final_rule: Optional[MachineRule]
) -> MapDefinition:
    """
    Wraps an image rule into a MapDefinition with forward map and analytic
    Jacobian in canonical coordinates.
    """
    def _forward(point: PhasePoint) -> PhasePoint:
        alpha, beta = _read_object(point, columns)
        image = rule.image(alpha, beta)
        phase = np.exp(1j * gauge.value(alpha, beta))
        return PhasePoint(
            codomain,
            _image_coords(codomain, phase * image.quantum, image.classical))

    def _jacobian(point: PhasePoint) -> np.ndarray:
        alpha, beta = _read_object(point, columns)
        image = rule.image(alpha, beta)
        partials = rule.partials(alpha, beta)
        theta = gauge.value(alpha, beta)
        theta_partials = gauge.gradient(alpha, beta)
        phase = np.exp(1j * theta)

        # d/d(x_domain) = sqrt(hbar/2) d/d(Re alpha), and likewise for the rest
        chain = np.sqrt(domain.hbar / 2.0)
        jacobian = np.zeros((codomain.total_real_dim, domain.total_real_dim))
        for s, column in enumerate(columns):
            d_quantum = phase * (
                partials.quantum[s] + 1j * theta_partials[s] * image.quantum)
            d_classical = None \
                if partials.classical is None \
                else partials.classical[s]
            jacobian[:, column] = \
                chain * _image_coords(codomain, d_quantum, d_classical)
        return jacobian

    return MapDefinition(
        name=name,
        domain=domain,
        codomain=codomain,
        forward=_forward,
        analytic_jacobian=_jacobian,
        gauge=gauge,
        machine_final_rule=machine_final_rule,
        embed=embed,
        object_columns=columns
    )


def _replica(alpha: complex, beta: complex) -> np.ndarray:
    """The two-qubit product (alpha, beta) (x) (alpha, beta)."""
    return np.array([alpha * alpha, alpha * beta, beta * alpha, beta * beta])


def _replica_partials(alpha: complex, beta: complex) -> np.ndarray:
    d_alpha = np.array([2 * alpha, beta, beta, 0.0])
    d_beta = np.array([0.0, alpha, alpha, 2 * beta])
    return np.array([d_alpha, 1j * d_alpha, d_beta, 1j * d_beta])


def self_replication(gauge: GaugeSpec = zero_gauge()) -> MapDefinition:
    """
    The self-replication map (alpha, 0, beta, 0) -> (alpha^2, alpha beta,
    beta alpha, beta^2) exp(i theta) on the two-qubit phase space.
    """
    space = compose_quantum(QUBIT, QUBIT)
    rule = _ImageRule(
        image=lambda alpha, beta: _Image(_replica(alpha, beta)),
        partials=lambda alpha, beta: _Image(_replica_partials(alpha, beta))
    )
    return _build_map(
        name="self-replication",
        domain=space,
        codomain=space,
        rule=rule,
        embed=lambda alpha, beta: to_canonical([alpha, 0, beta, 0], space),
        columns=_object_columns(space, stride=2),
        gauge=gauge,
        machine_final_rule=None
    )


def quantum_cloning(
    machine_final_rule: MachineRule = CONJUGATE_MACHINE,
    gauge: GaugeSpec = zero_gauge(),
    name: str = "quantum-cloning"
) -> MapDefinition:
    """
    Cloning with a quantum machine qubit: object (x) target (x) machine
    goes from (alpha, beta) (x) (1, 0) (x) (1, 0) to
    (alpha, beta) (x) (alpha, beta) (x) machine_final_rule(alpha, beta).
    """
    space = compose_quantum(compose_quantum(QUBIT, QUBIT), QUBIT)

    def _image(alpha: complex, beta: complex) -> _Image:
        return _Image(np.kron(
            _replica(alpha, beta),
            machine_final_rule.state(alpha, beta)))

    def _partials(alpha: complex, beta: complex) -> _Image:
        replica = _replica(alpha, beta)
        replica_partials = _replica_partials(alpha, beta)
        machine = machine_final_rule.state(alpha, beta)
        machine_partials = machine_final_rule.partials(alpha, beta)
        return _Image(np.array([
            np.kron(replica_partials[s], machine) + np.kron(replica, machine_partials[s])
            for s in range(4)
        ]))

    return _build_map(
        name=name,
        domain=space,
        codomain=space,
        rule=_ImageRule(_image, _partials),
        embed=lambda alpha, beta: to_canonical([alpha, 0, 0, 0, beta, 0, 0, 0], space),
        columns=_object_columns(space, stride=4),
        gauge=gauge,
        machine_final_rule=machine_final_rule
    )


def hybrid_cloning(machine_final_rule: MachineRule = SWAPPED_MACHINE) -> MapDefinition:
    """
    Cloning with a classical machine of two degrees of freedom. The machine
    starts at complex coordinates (1, 0) and ends at
    (Im alpha + i Re alpha, Im beta + i Re beta).
    """
    machine_space = classical(MACHINE_DOF)
    object_target = compose_quantum(QUBIT, QUBIT)
    space = compose_hybrid(machine_space, object_target)
    machine_start = classical_from_complex([1.0, 0.0], machine_space)

    def _image(alpha: complex, beta: complex) -> _Image:
        return _Image(
            _replica(alpha, beta),
            np.asarray(machine_final_rule.state(alpha, beta), dtype=complex))

    def _partials(alpha: complex, beta: complex) -> _Image:
        return _Image(
            _replica_partials(alpha, beta),
            np.asarray(machine_final_rule.partials(alpha, beta), dtype=complex))

    return _build_map(
        name="hybrid-cloning",
        domain=space,
        codomain=space,
        rule=_ImageRule(_image, _partials),
        embed=lambda alpha, beta: product_embed(
            machine_start,
            to_canonical([alpha, 0, beta, 0], object_target)),
        columns=_object_columns(space, stride=2),
        gauge=zero_gauge(),
        machine_final_rule=machine_final_rule
    )


MAP_NAMES = (
    "self-replication",
    "quantum-cloning",
    "quantum-cloning-fixed-machine",
    "hybrid-cloning"
)


def map_by_name(name: str, gauge: GaugeSpec = zero_gauge()) -> MapDefinition:
    """
    Looks up one of the bundled maps by its command line name.

    Raises:
        ValueError: Raised for names outside MAP_NAMES, or a gauge other
        than zero for hybrid-cloning, whose image carries no gauge phase
    """
    if name == "self-replication":
        return self_replication(gauge)
    elif name == "quantum-cloning":
        return quantum_cloning(CONJUGATE_MACHINE, gauge)
    elif name == "quantum-cloning-fixed-machine":
        return quantum_cloning(FIXED_MACHINE, gauge, name=name)
    elif name == "hybrid-cloning":
        if gauge.variant is not GaugeVariant.ZERO:
            raise ValueError(
                f"Map '{name}' takes no gauge phase, got a {gauge.variant.value} gauge")
        return hybrid_cloning()
    else:
        raise ValueError(
            f"Unknown map '{name}'; expected one of {', '.join(MAP_NAMES)}")


def checked_object(obj) -> Tuple[complex, complex]:
    """Returns a normalized object state as a complex pair."""
    alpha, beta = assert_normalized_amplitudes(obj, "object state")
    return complex(alpha), complex(beta)


def initial_point(map_: MapDefinition, obj) -> PhasePoint:
    """
    Places a normalized object state on the map's initial submanifold,
    with the target (and a quantum machine) at (1, 0) and a classical
    machine at complex coordinates (1, 0).

    Raises:
        NotNormalizedException: Raised if the object isn't normalized
    """
    alpha, beta = checked_object(obj)
    if map_.embed is None:
        raise SpaceKindException(
            f"Map '{map_.name}' doesn't define an initial submanifold")
    return map_.embed(alpha, beta)


def self_replication_map(obj, gauge: GaugeSpec = zero_gauge()) -> PhasePoint:
    """
    Image of a normalized object qubit under self-replication:
    the two-qubit point with amplitudes (alpha^2, alpha beta, beta alpha, beta^2) e^{i theta}.
    """
    map_ = self_replication(gauge)
    return map_.forward(initial_point(map_, obj))


def quantum_cloning_map(obj, machine_final_rule: MachineRule = CONJUGATE_MACHINE) -> PhasePoint:
    """
    Image of a normalized object qubit under cloning with a quantum machine.

    Raises:
        NotNormalizedException: Raised if the object or the machine's
        final state isn't normalized
    """
    alpha, beta = checked_object(obj)
    assert_normalized_amplitudes(
        machine_final_rule.state(alpha, beta), "final machine state")
    map_ = quantum_cloning(machine_final_rule)
    return map_.forward(map_.embed(alpha, beta))


def hybrid_cloning_map(obj) -> PhasePoint:
    """
    Image of a normalized object qubit under cloning with a classical machine.
    The quantum sector holds (alpha^2, alpha beta, beta alpha, beta^2).
    """
    map_ = hybrid_cloning()
    return map_.forward(initial_point(map_, obj))


def clone_succeeded(
    map_: MapDefinition,
    obj,
    tolerance: float = config.tolerances.normalization
) -> bool:
    """
    Whether the image of an object state holds object (x) object once any
    quantum machine factor is traced out, i.e. whether the target ends in
    the object's state up to a global phase.
    """
    alpha, beta = checked_object(obj)
    image = map_.forward(initial_point(map_, obj))
    amplitudes = quantum_amplitudes(image)

    # Qubit factors, object outermost
    n_factors = int(round(np.log2(amplitudes.size)))
    reduced = reduced_density_matrix(amplitudes, [2] * n_factors, keep=[0, 1])

    expected_state = np.kron([alpha, beta], [alpha, beta])
    expected = np.outer(expected_state, expected_state.conj())
    return bool(np.max(np.abs(reduced - expected)) <= tolerance)


__all__ = [
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
    "clone_succeeded"
]
