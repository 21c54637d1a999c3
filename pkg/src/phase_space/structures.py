"""
Contains the records which describe phase spaces, the points on them,
tangent vectors attached to those points and Hermitian operators, along
with the rules for composing quantum and hybrid spaces.
"""
from enum import Enum
from typing import NamedTuple

import numpy as np

import config
from ..exceptions import \
    DimensionMismatchException, \
    SpaceKindException, \
    NotHermitianException


class SpaceKind(Enum):
    """The ways a phase space can be built."""
    # Hilbert space C^N viewed as the real manifold R^2N
    QUANTUM = "quantum"

    # Ordinary canonical (q, p) coordinates
    CLASSICAL = "classical"

    # Cartesian product of a classical and a quantum part
    HYBRID = "hybrid"


class PhaseSpaceDescriptor(NamedTuple):
    """
    Describes the manifold a point lives on.

    n_classical counts classical degrees of freedom and n_quantum is the
    complex dimension of the quantum part; either is zero when that
    sector is absent. hbar is kept explicit even though every bundled
    experiment fixes it to 1.
    """
    kind: SpaceKind
    n_classical: int
    n_quantum: int
    hbar: float = 1.0

    @property
    def classical_dim(self) -> int:
        """Real dimension of the classical sector."""
        return 2 * self.n_classical

    @property
    def quantum_dim(self) -> int:
        """Real dimension of the quantum sector."""
        return 2 * self.n_quantum

    @property
    def total_real_dim(self) -> int:
        """Length of a coordinate vector on this space."""
        return self.classical_dim + self.quantum_dim

    @property
    def quantum_offset(self) -> int:
        """Index of x_1 within a coordinate vector."""
        return self.classical_dim

    @property
    def has_quantum(self) -> bool:
        return self.n_quantum > 0

    @property
    def has_classical(self) -> bool:
        return self.n_classical > 0

    def classical_part(self) -> "PhaseSpaceDescriptor":
        """Returns the classical factor of a hybrid (or classical) space."""
        if not self.has_classical:
            raise SpaceKindException(f"{self} has no classical sector")
        return classical(self.n_classical)

    def quantum_part(self) -> "PhaseSpaceDescriptor":
        """Returns the quantum factor of a hybrid (or quantum) space."""
        if not self.has_quantum:
            raise SpaceKindException(f"{self} has no quantum sector")
        return quantum(self.n_quantum, hbar=self.hbar)


def quantum(n: int, hbar: float = 1.0) -> PhaseSpaceDescriptor:
    """
    Builds the descriptor of the phase space of C^n.

    Args:
        n (int): Complex dimension of the Hilbert space, at least 1
        hbar (float, optional): Planck's constant. Defaults to 1.

    Returns:
        PhaseSpaceDescriptor: A quantum descriptor of real dimension 2n
    """
    if n < 1:
        raise ValueError(f"Quantum dimension must be at least 1, got {n}")
    if not hbar > 0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    return PhaseSpaceDescriptor(SpaceKind.QUANTUM, 0, n, hbar)


def classical(n: int) -> PhaseSpaceDescriptor:
    """
    Builds the descriptor of a classical system with n degrees of freedom.
    """
    if n < 1:
        raise ValueError(
            f"Classical degree of freedom count must be at least 1, got {n}")
    return PhaseSpaceDescriptor(SpaceKind.CLASSICAL, n, 0)


def compose_quantum(
    a: PhaseSpaceDescriptor,
    b: PhaseSpaceDescriptor
) -> PhaseSpaceDescriptor:
    """
    Composes two quantum spaces by the tensor product rule.

    The result has complex dimension N1*N2; basis vectors are ordered
    row-major over the factor bases (index of a outer, index of b inner).

    Raises:
        SpaceKindException: Raised if either factor isn't quantum, or
        the factors disagree on hbar.
    """
    for factor in (a, b):
        if factor.kind is not SpaceKind.QUANTUM:
            raise SpaceKindException(
                f"Tensor composition needs quantum factors, got {factor.kind.value}")
    if a.hbar != b.hbar:
        raise SpaceKindException(
            f"Cannot compose spaces with hbar {a.hbar} and {b.hbar}")
    return quantum(a.n_quantum * b.n_quantum, hbar=a.hbar)


def compose_hybrid(
    c: PhaseSpaceDescriptor,
    q: PhaseSpaceDescriptor
) -> PhaseSpaceDescriptor:
    """
    Composes a classical space and a quantum space by the Cartesian product.
    Coordinates on the result are ordered (q, p, x, y).

    Raises:
        SpaceKindException: Raised unless c is classical and q is quantum
    """
    if c.kind is not SpaceKind.CLASSICAL or q.kind is not SpaceKind.QUANTUM:
        raise SpaceKindException(
            "Hybrid composition needs (classical, quantum), got " \
            f"({c.kind.value}, {q.kind.value})")
    return PhaseSpaceDescriptor(
        SpaceKind.HYBRID,
        c.n_classical,
        q.n_quantum,
        q.hbar
    )


def hybrid(n_classical: int, n_quantum: int, hbar: float = 1.0) -> PhaseSpaceDescriptor:
    """Shorthand for compose_hybrid(classical(n_c), quantum(n_q))."""
    return compose_hybrid(classical(n_classical), quantum(n_quantum, hbar))


class PhasePoint(NamedTuple):
    """
    A real canonical coordinate vector on a phase space.

    Quantum coordinates are ordered (x_1..x_N, y_1..y_N), classical ones
    (q_1..q_n, p_1..p_n), and hybrid ones are the classical block followed
    by the quantum block.
    """
    space: PhaseSpaceDescriptor
    coords: np.ndarray

    @property
    def classical_coords(self) -> np.ndarray:
        return self.coords[:self.space.classical_dim]

    @property
    def quantum_coords(self) -> np.ndarray:
        return self.coords[self.space.quantum_offset:]


def make_point(space: PhaseSpaceDescriptor, coords) -> PhasePoint:
    """
    Builds a PhasePoint, checking its length against the space.

    Raises:
        DimensionMismatchException: Raised if the coordinate vector has
        the wrong length for the given space
    """
    coords = np.asarray(coords, dtype=float).reshape(-1)
    if coords.size != space.total_real_dim:
        raise DimensionMismatchException(
            "phase point coordinates", space.total_real_dim, coords.size)
    return PhasePoint(space, coords)


class TangentVector(NamedTuple):
    """A real vector attached to a base point."""
    base: PhasePoint
    components: np.ndarray

    def __add__(self, other: "TangentVector") -> "TangentVector":
        _assert_same_base(self, other)
        return TangentVector(self.base, self.components + other.components)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        _assert_same_base(self, other)
        return TangentVector(self.base, self.components - other.components)

    def __mul__(self, scalar: float) -> "TangentVector":
        return TangentVector(self.base, scalar * self.components)

    __rmul__ = __mul__

    def __neg__(self) -> "TangentVector":
        return TangentVector(self.base, -self.components)


def make_tangent(base: PhasePoint, components) -> TangentVector:
    """
    Builds a TangentVector at the given base point.

    Raises:
        DimensionMismatchException: Raised if the component count
        doesn't match the dimension of the base point's space
    """
    components = np.asarray(components, dtype=float).reshape(-1)
    if components.size != base.space.total_real_dim:
        raise DimensionMismatchException(
            "tangent vector components",
            base.space.total_real_dim,
            components.size)
    return TangentVector(base, components)


def _assert_same_base(u: TangentVector, v: TangentVector) -> None:
    if u.base.space != v.base.space \
            or not np.array_equal(u.base.coords, v.base.coords):
        raise SpaceKindException(
            "Tangent vectors are attached to different base points")


class HermitianOperator:
    """
    A Hermitian operator on C^N, stored as a complex square array.
    Hermiticity is checked once, on construction.
    """
    @property
    def dim(self) -> int:
        """Complex dimension of the space the operator acts on."""
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """A read-only view of the matrix entries."""
        return self._entries

    def commutator(self, other: "HermitianOperator") -> np.ndarray:
        """
        Returns the commutator [self, other] as a plain (anti-Hermitian)
        complex array.
        """
        return self._entries @ other.entries - other.entries @ self._entries

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        return HermitianOperator(self._entries + other.entries)

    def __mul__(self, scalar: float) -> "HermitianOperator":
        return HermitianOperator(float(scalar) * self._entries)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"HermitianOperator(dim={self.dim})"

    def __init__(
        self,
        entries,
        tolerance: float = config.tolerances.hermiticity
    ) -> None:
        entries = np.array(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatchException(
                "operator (square array expected)",
                entries.shape[0],
                entries.shape[-1])

        deviation = float(np.max(np.abs(entries - entries.conj().T)))
        if not deviation <= tolerance:
            raise NotHermitianException(deviation, tolerance)

        # Symmetrize away the residual so downstream expectations are real
        self._entries = 0.5 * (entries + entries.conj().T)
        self._entries.setflags(write=False)


# Pauli operators, used by the presets and the tests
SIGMA_X = HermitianOperator([[0, 1], [1, 0]])
SIGMA_Y = HermitianOperator([[0, -1j], [1j, 0]])
SIGMA_Z = HermitianOperator([[1, 0], [0, -1]])
IDENTITY_2 = HermitianOperator(np.eye(2))


def zero_operator(dim: int) -> HermitianOperator:
    return HermitianOperator(np.zeros((dim, dim)))
