"""
Conversions between complex state amplitudes and real canonical
coordinates, product embeddings of points, and the global phase
criterion used to decide whether two quantum points represent the
same state.
"""
from typing import Sequence, Tuple

import numpy as np

import config
from ..exceptions import \
    DimensionMismatchException, \
    SpaceKindException, \
    NotNormalizedException
from .structures import \
    PhaseSpaceDescriptor, \
    PhasePoint, \
    SpaceKind, \
    compose_quantum, \
    compose_hybrid, \
    make_point


def to_canonical(amplitudes, space: PhaseSpaceDescriptor) -> PhasePoint:
    """
    Maps complex amplitudes c_j to canonical coordinates
    x_j = sqrt(2/hbar) Re c_j, y_j = sqrt(2/hbar) Im c_j.

    Args:
        amplitudes: Complex vector of length N
        space (PhaseSpaceDescriptor): A quantum space of complex dimension N

    Raises:
        SpaceKindException: Raised if the space isn't quantum
        DimensionMismatchException: Raised if the amplitude count differs from N

    Returns:
        PhasePoint: The point (x_1..x_N, y_1..y_N)
    """
    if space.kind is not SpaceKind.QUANTUM:
        raise SpaceKindException(
            f"to_canonical needs a quantum space, got {space.kind.value}")

    amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if amplitudes.size != space.n_quantum:
        raise DimensionMismatchException(
            "amplitude vector", space.n_quantum, amplitudes.size)

    scale = np.sqrt(2.0 / space.hbar)
    return PhasePoint(
        space,
        scale * np.concatenate([amplitudes.real, amplitudes.imag])
    )


def from_canonical(point: PhasePoint) -> np.ndarray:
    """
    Inverse of to_canonical: c_j = sqrt(hbar/2) (x_j + i y_j).

    Raises:
        SpaceKindException: Raised if the point isn't on a quantum space
    """
    if point.space.kind is not SpaceKind.QUANTUM:
        raise SpaceKindException(
            f"from_canonical needs a quantum point, got {point.space.kind.value}")
    return quantum_amplitudes(point)


def quantum_amplitudes(point: PhasePoint) -> np.ndarray:
    """
    Returns the amplitudes of the quantum sector of a quantum or hybrid point.
    """
    space = point.space
    if not space.has_quantum:
        raise SpaceKindException("Point has no quantum sector")
    x = point.quantum_coords[:space.n_quantum]
    y = point.quantum_coords[space.n_quantum:]
    return np.sqrt(space.hbar / 2.0) * (x + 1j * y)


def norm_squared(point: PhasePoint) -> float:
    """Returns sum |c_j|^2 over the quantum sector of a point."""
    return float(np.sum(np.abs(quantum_amplitudes(point)) ** 2))


def is_normalized(
    point: PhasePoint,
    tolerance: float = config.tolerances.normalization
) -> bool:
    """
    Whether the quantum sector of a point is the image of a unit vector,
    i.e. whether sum(x^2 + y^2) = 2/hbar within tolerance.
    """
    return abs(norm_squared(point) - 1.0) <= tolerance


def assert_normalized_amplitudes(
    amplitudes,
    what: str = "state",
    tolerance: float = config.tolerances.normalization
) -> np.ndarray:
    """
    Checks a complex amplitude vector has unit norm and returns it as an array.

    Raises:
        NotNormalizedException: Raised if |norm^2 - 1| exceeds tolerance
    """
    amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
    total = float(np.sum(np.abs(amplitudes) ** 2))
    if abs(total - 1.0) > tolerance:
        raise NotNormalizedException(what, total)
    return amplitudes


def classical_from_complex(values, space: PhaseSpaceDescriptor) -> PhasePoint:
    """
    Builds a classical point from its complex notation w_i = (q_i + i p_i)/sqrt(2).

    The sqrt(2) matches the amplitude scale of quantum coordinates at
    hbar = 1, so a classical sector written in complex notation enters the
    symplectic form with the same weight as a quantum amplitude.
    """
    if space.kind is not SpaceKind.CLASSICAL:
        raise SpaceKindException(
            f"classical_from_complex needs a classical space, got {space.kind.value}")
    values = np.asarray(values, dtype=complex).reshape(-1)
    if values.size != space.n_classical:
        raise DimensionMismatchException(
            "classical complex vector", space.n_classical, values.size)
    return PhasePoint(
        space,
        np.sqrt(2.0) * np.concatenate([values.real, values.imag])
    )


def classical_to_complex(point: PhasePoint) -> np.ndarray:
    """Returns the complex notation (q + i p)/sqrt(2) of a classical sector."""
    space = point.space
    if not space.has_classical:
        raise SpaceKindException("Point has no classical sector")
    q = point.classical_coords[:space.n_classical]
    p = point.classical_coords[space.n_classical:]
    return (q + 1j * p) / np.sqrt(2.0)


def product_embed(a: PhasePoint, b: PhasePoint) -> PhasePoint:
    """
    Combines two points into a point on the composite space.

    Two quantum points combine into the point of the tensor product
    c_jk = a_j b_k (row-major). A classical and a quantum point, in either
    order, combine into a hybrid point by concatenating coordinates with
    the classical block first.

    Raises:
        SpaceKindException: Raised for any other pairing of kinds
        NotNormalizedException: Raised if a quantum factor of a tensor
        product isn't normalized
    """
    kinds = (a.space.kind, b.space.kind)

    if kinds == (SpaceKind.QUANTUM, SpaceKind.QUANTUM):
        for label, factor in (("first factor", a), ("second factor", b)):
            if not is_normalized(factor):
                raise NotNormalizedException(label, norm_squared(factor))
        space = compose_quantum(a.space, b.space)
        return to_canonical(
            np.kron(from_canonical(a), from_canonical(b)), space)

    if kinds == (SpaceKind.QUANTUM, SpaceKind.CLASSICAL):
        a, b = b, a
        kinds = (SpaceKind.CLASSICAL, SpaceKind.QUANTUM)

    if kinds == (SpaceKind.CLASSICAL, SpaceKind.QUANTUM):
        space = compose_hybrid(a.space, b.space)
        return PhasePoint(space, np.concatenate([a.coords, b.coords]))

    raise SpaceKindException(
        f"Cannot embed a {kinds[0].value} point with a {kinds[1].value} point")


def split_hybrid(point: PhasePoint) -> Tuple[PhasePoint, PhasePoint]:
    """Splits a hybrid point into its (classical, quantum) factors."""
    if point.space.kind is not SpaceKind.HYBRID:
        raise SpaceKindException(
            f"split_hybrid needs a hybrid point, got {point.space.kind.value}")
    return (
        PhasePoint(point.space.classical_part(), point.classical_coords.copy()),
        PhasePoint(point.space.quantum_part(), point.quantum_coords.copy())
    )


def replace_quantum(point: PhasePoint, amplitudes) -> PhasePoint:
    """Returns a copy of a quantum or hybrid point with new quantum amplitudes."""
    space = point.space
    amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if amplitudes.size != space.n_quantum:
        raise DimensionMismatchException(
            "amplitude vector", space.n_quantum, amplitudes.size)
    scale = np.sqrt(2.0 / space.hbar)
    coords = point.coords.copy()
    coords[space.quantum_offset:] = \
        scale * np.concatenate([amplitudes.real, amplitudes.imag])
    return make_point(space, coords)


def phase_rotate(point: PhasePoint, theta: float) -> PhasePoint:
    """
    Multiplies the quantum sector of a point by exp(i theta), i.e.
    x -> x cos(theta) - y sin(theta), y -> y cos(theta) + x sin(theta).
    """
    return replace_quantum(
        point, np.exp(1j * theta) * quantum_amplitudes(point))


def equal_up_to_phase(
    candidate: PhasePoint,
    reference: PhasePoint,
    tolerance: float = config.tolerances.flow_oracle
) -> Tuple[bool, float, float]:
    """
    Decides whether two quantum points represent the same state up to a
    global phase.

    The phase theta is fitted by maximizing Re <reference| e^{i theta} candidate>,
    which gives theta = arg <candidate|reference>. The residual is the largest
    coordinate deviation of the rotated candidate from the reference.

    Returns:
        Tuple[bool, float, float]: (within tolerance, fitted theta, residual)
    """
    if candidate.space != reference.space:
        raise SpaceKindException("Points live on different spaces")

    overlap = np.vdot(quantum_amplitudes(candidate), quantum_amplitudes(reference))
    theta = float(np.angle(overlap)) if abs(overlap) > 0 else 0.0
    rotated = phase_rotate(candidate, theta)
    residual = float(np.max(np.abs(rotated.coords - reference.coords)))
    return residual <= tolerance, theta, residual


def reduced_density_matrix(
    amplitudes,
    dims: Sequence[int],
    keep: Sequence[int]
) -> np.ndarray:
    """
    Traces a pure product-space state down to the listed factors.

    Args:
        amplitudes: Complex vector on the composite space (row-major order)
        dims (Sequence[int]): Complex dimension of each factor
        keep (Sequence[int]): Indices of the factors to keep, in order

    Returns:
        np.ndarray: The reduced density matrix on the kept factors
    """
    amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
    dims = list(dims)
    if amplitudes.size != int(np.prod(dims)):
        raise DimensionMismatchException(
            "composite amplitude vector", int(np.prod(dims)), amplitudes.size)

    keep = list(keep)
    traced = [i for i in range(len(dims)) if i not in keep]

    # Reorder to (kept..., traced...) and flatten into a matrix
    tensor = amplitudes.reshape(dims).transpose(keep + traced)
    kept_dim = int(np.prod([dims[i] for i in keep]))
    psi = tensor.reshape(kept_dim, -1)
    return psi @ psi.conj().T
