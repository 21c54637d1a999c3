"""
Contains the geometric structures of a phase space: the symplectic form,
the Riemann metric and almost complex structure of quantum spaces,
quadratic observables and the (hybrid) Poisson bracket.
"""
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.linalg import block_diag

import config
from ..exceptions import \
    DimensionMismatchException, \
    SpaceKindException, \
    NonFiniteValueException, \
    NotHermitianException
from .structures import \
    PhaseSpaceDescriptor, \
    PhasePoint, \
    TangentVector, \
    HermitianOperator, \
    SpaceKind
from .coordinates import quantum_amplitudes


def unit_symplectic_matrix(n: int) -> np.ndarray:
    """The 2n x 2n matrix [[0, 1], [-1, 0]]."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def poisson_tensor(space: PhaseSpaceDescriptor) -> np.ndarray:
    """
    The matrix P with {f, g} = grad(f)^T P grad(g): the unit symplectic
    matrix on the classical sector and (1/hbar) times it on the quantum one.
    """
    blocks = []
    if space.has_classical:
        blocks.append(unit_symplectic_matrix(space.n_classical))
    if space.has_quantum:
        blocks.append(unit_symplectic_matrix(space.n_quantum) / space.hbar)
    return block_diag(*blocks)


def symplectic_matrix(space: PhaseSpaceDescriptor) -> np.ndarray:
    """
    The matrix W with omega(u, v) = u^T W v.

    W is derived from the bracket: its quantum block carries hbar where the
    Poisson tensor carries 1/hbar, which is what Hamiltonian flows of the
    bracket preserve. At hbar = 1 both are the unit symplectic matrix.
    """
    blocks = []
    if space.has_classical:
        blocks.append(unit_symplectic_matrix(space.n_classical))
    if space.has_quantum:
        blocks.append(space.hbar * unit_symplectic_matrix(space.n_quantum))
    return block_diag(*blocks)


def complex_structure(space: PhaseSpaceDescriptor) -> np.ndarray:
    """
    The almost complex structure J: (x_j, y_j) -> (-y_j, x_j) of a quantum space.
    J squares to minus the identity.
    """
    _assert_quantum(space, "complex_structure")
    return -unit_symplectic_matrix(space.n_quantum)


def _assert_same_base_space(u: TangentVector, v: TangentVector) -> PhaseSpaceDescriptor:
    if u.base.space != v.base.space:
        raise SpaceKindException(
            "Tangent vectors are attached to points on different spaces")
    return u.base.space


def _assert_quantum(space: PhaseSpaceDescriptor, operation: str) -> None:
    if space.kind is not SpaceKind.QUANTUM:
        raise SpaceKindException(
            f"{operation} needs a quantum space, got {space.kind.value}")


def symplectic_form(u: TangentVector, v: TangentVector) -> float:
    """
    Returns the symplectic area omega(u, v) = sum_j (u_xj v_yj - v_xj u_yj),
    summed sector by sector with the weights of symplectic_matrix.

    Raises:
        SpaceKindException: Raised if u and v live on different spaces
    """
    space = _assert_same_base_space(u, v)
    return float(u.components @ symplectic_matrix(space) @ v.components)


def riemann_metric(u: TangentVector, v: TangentVector) -> float:
    """
    Returns g(u, v) = hbar * sum_j (u_xj v_xj + u_yj v_yj) on a quantum space.
    Satisfies g(u, v) = omega(u, J v).

    Raises:
        SpaceKindException: Raised for mismatched or non-quantum spaces
    """
    space = _assert_same_base_space(u, v)
    _assert_quantum(space, "riemann_metric")
    return float(space.hbar * (u.components @ v.components))


def expectation(op: HermitianOperator, point: PhasePoint) -> float:
    """
    Returns the quadratic function A(X) = <psi_X|A|psi_X> for the quantum
    sector of a quantum or hybrid point.

    Raises:
        DimensionMismatchException: Raised if the operator and the
        quantum sector have different dimensions
        NonFiniteValueException: Raised if the point isn't finite
        NotHermitianException: Raised if the value has an imaginary part
        beyond rounding
    """
    psi = quantum_amplitudes(point)
    if op.dim != psi.size:
        raise DimensionMismatchException("operator", psi.size, op.dim)

    value = np.vdot(psi, op.entries @ psi)
    if not np.isfinite(value):
        raise NonFiniteValueException(f"Expectation is not finite at {point.coords!r}")

    # Hermiticity makes this real; anything left over is rounding
    allowed = config.tolerances.hermiticity * (1.0 + abs(value.real))
    if not abs(value.imag) <= allowed:
        raise NotHermitianException(abs(value.imag), allowed)
    return float(value.real)


def quantum_gradient(complex_gradient: np.ndarray, space: PhaseSpaceDescriptor) -> np.ndarray:
    """
    Converts G = dH/d(conj psi) into the real gradient over (x, y).

    With psi = sqrt(hbar/2)(x + i y), dH = 2 Re(dpsi^H G) gives
    grad_x = sqrt(2 hbar) Re G and grad_y = sqrt(2 hbar) Im G.
    """
    scale = np.sqrt(2.0 * space.hbar)
    return scale * np.concatenate([complex_gradient.real, complex_gradient.imag])


class ScalarField(NamedTuple):
    """
    A smooth real function on a phase space, with an optional analytic
    gradient. Fields without a gradient are differentiated numerically.
    """
    value: Callable[[PhasePoint], float]
    gradient: Optional[Callable[[PhasePoint], np.ndarray]] = None


def observable(op: HermitianOperator) -> ScalarField:
    """The quadratic observable <psi|A|psi> as a ScalarField."""
    def _gradient(point: PhasePoint) -> np.ndarray:
        psi = quantum_amplitudes(point)
        grad = np.zeros(point.space.total_real_dim)
        grad[point.space.quantum_offset:] = \
            quantum_gradient(op.entries @ psi, point.space)
        return grad

    return ScalarField(lambda point: expectation(op, point), _gradient)


def coordinate_field(space: PhaseSpaceDescriptor, index: int) -> ScalarField:
    """The i-th canonical coordinate as a ScalarField."""
    if not 0 <= index < space.total_real_dim:
        raise DimensionMismatchException(
            "coordinate index (exclusive bound)", space.total_real_dim, index)

    basis = np.zeros(space.total_real_dim)
    basis[index] = 1.0
    return ScalarField(
        lambda point: float(point.coords[index]),
        lambda point: basis.copy()
    )


def finite_difference_gradient(
    field: Callable[[PhasePoint], float],
    point: PhasePoint,
    step: float = config.finite_differences.step
) -> np.ndarray:
    """
    Central difference gradient of a scalar function at a point.

    Raises:
        NonFiniteValueException: Raised if any difference quotient isn't finite
    """
    grad = np.zeros(point.coords.size)
    shifted = point.coords.copy()
    for i in range(point.coords.size):
        shifted[i] += step
        forward = field(PhasePoint(point.space, shifted.copy()))
        shifted[i] -= 2 * step
        backward = field(PhasePoint(point.space, shifted.copy()))
        shifted[i] += step
        grad[i] = (forward - backward) / (2 * step)

    if not np.all(np.isfinite(grad)):
        raise NonFiniteValueException(
            f"Finite difference gradient is not finite at {point.coords!r}")
    return grad


def field_gradient(field: ScalarField, point: PhasePoint) -> np.ndarray:
    """Returns the analytic gradient of a field if it has one, else a numerical one."""
    if field.gradient is None:
        return finite_difference_gradient(field.value, point)

    grad = np.asarray(field.gradient(point), dtype=float)
    if not np.all(np.isfinite(grad)):
        raise NonFiniteValueException(
            f"Analytic gradient is not finite at {point.coords!r}")
    return grad


def poisson_bracket(f: ScalarField, g: ScalarField, point: PhasePoint) -> float:
    """
    Evaluates the hybrid Poisson bracket

        {f, g} = sum_i (df/dq_i dg/dp_i - dg/dq_i df/dp_i)
               + (1/hbar) sum_j (df/dx_j dg/dy_j - dg/dx_j df/dy_j)

    at a point. With no classical sector this is the quantum bracket alone.
    """
    grad_f = field_gradient(f, point)
    grad_g = field_gradient(g, point)
    return float(grad_f @ poisson_tensor(point.space) @ grad_g)
