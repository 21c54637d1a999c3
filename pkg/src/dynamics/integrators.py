"""
Implicit midpoint integration of Hamiltonian flows.

Each midpoint step solves x1 = x0 + dt f((x0 + x1)/2) by fixed-point
iteration. The step is symplectic for any smooth Hamiltonian and keeps
every quadratic invariant (the norm of phase-invariant flows, the energy
of quadratic ones) exactly. By default three steps are composed by the
symmetric triple jump into a fourth order scheme.

Quadratic Hamilton functions give linear fields, for which the midpoint
equation is solved exactly by the Cayley transform of the generator.
"""
import logging
from typing import Callable, List, NamedTuple, Tuple

import numpy as np

import config
from ..exceptions import DegenerateAreaException, NonFiniteValueException, SpaceKindException
from ..phase_space import \
    PhasePoint, \
    TangentVector, \
    norm_squared, \
    poisson_tensor, \
    symplectic_form
from .hamiltonians import HamiltonianSpec, QuadraticOperator, check_space, energy, gradient

log = logging.getLogger(__name__)

VectorField = Callable[[np.ndarray], np.ndarray]

# Triple jump weights for raising a symmetric second order step to fourth order
_CUBE_ROOT_2 = 2.0 ** (1.0 / 3.0)
TRIPLE_JUMP = (
    1.0 / (2.0 - _CUBE_ROOT_2),
    -_CUBE_ROOT_2 / (2.0 - _CUBE_ROOT_2),
    1.0 / (2.0 - _CUBE_ROOT_2)
)


class FixedPointConvergenceException(Exception):
    """
    Represents an instance where the fixed-point iteration of an implicit
    midpoint step didn't settle within its iteration cap, usually a sign
    that the time step is too large for the Hamiltonian.
    """
    def __init__(self, iterations: int, residual: float) -> None:
        message = \
            f"Implicit midpoint iteration did not converge in {iterations} " \
            f"iterations (last update {residual!r}); try a smaller dt."
        self.residual = residual
        super().__init__(message)


class Trajectory(NamedTuple):
    """Sampled solution of a flow: times, the points at those times and H there."""
    times: np.ndarray
    points: List[PhasePoint]
    energies: np.ndarray

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    @property
    def final_point(self) -> PhasePoint:
        return self.points[-1]

    @property
    def norms(self) -> np.ndarray:
        """Squared norm of the quantum sector at every sample."""
        return np.array([norm_squared(point) for point in self.points])

    @property
    def energy_drift(self) -> float:
        return float(np.max(np.abs(self.energies - self.energies[0])))

    @property
    def norm_drift(self) -> float:
        norms = self.norms
        return float(np.max(np.abs(norms - norms[0])))


def midpoint_step(
    field: VectorField,
    x: np.ndarray,
    dt: float,
    tolerance: float = config.integrator.tolerance,
    max_iterations: int = config.integrator.max_iterations
) -> Tuple[np.ndarray, int]:
    """
    One implicit midpoint step, started from an explicit Euler guess.

    Returns:
        Tuple[np.ndarray, int]: The new state and the iteration count

    Raises:
        FixedPointConvergenceException: Raised if the update is still
        above tolerance * max(1, |x|) after max_iterations
        NonFiniteValueException: Raised if an iterate isn't finite
    """
    x_new = x + dt * field(x)
    delta = np.inf
    for iteration in range(1, max_iterations + 1):
        candidate = x + dt * field(0.5 * (x + x_new))
        if not np.all(np.isfinite(candidate)):
            raise NonFiniteValueException(
                f"Midpoint iteration became non-finite after {iteration} iterations")
        delta = float(np.max(np.abs(candidate - x_new)))
        x_new = candidate
        if delta < tolerance * max(1.0, float(np.max(np.abs(x_new)))):
            return x_new, iteration

    raise FixedPointConvergenceException(max_iterations, delta)


def _substep_weights(order: int) -> Tuple[float, ...]:
    if order == 2:
        return (1.0,)
    if order == 4:
        return TRIPLE_JUMP
    raise ValueError(f"Integrator order must be 2 or 4, got {order}")


def composed_step(
    field: VectorField,
    x: np.ndarray,
    dt: float,
    order: int = config.integrator.order,
    tolerance: float = config.integrator.tolerance,
    max_iterations: int = config.integrator.max_iterations
) -> Tuple[np.ndarray, int]:
    """
    One step of the plain (order 2) or triple jump (order 4) scheme.
    Returns the new state and the largest iteration count of its substeps.
    """
    most_iterations = 0
    for weight in _substep_weights(order):
        x, iterations = midpoint_step(field, x, weight * dt, tolerance, max_iterations)
        most_iterations = max(most_iterations, iterations)
    return x, most_iterations


def step_count(t_final: float, dt: float) -> int:
    """
    Number of fixed steps covering t_final; t_final is rounded to the
    nearest multiple of dt.

    Raises:
        ValueError: Raised if dt <= 0 or t_final < 0
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_final < 0:
        raise ValueError(f"t_final must be non-negative, got {t_final}")
    return int(round(t_final / dt))


def integrate_field(
    field: VectorField,
    x0: np.ndarray,
    n_steps: int,
    dt: float,
    order: int = config.integrator.order
) -> np.ndarray:
    """
    Integrates a vector field on raw coordinate arrays.

    Returns:
        np.ndarray: An (n_steps + 1, len(x0)) array of states

    Raises:
        FixedPointConvergenceException: Raised by a step that doesn't converge
        NonFiniteValueException: Raised if the state stops being finite
    """
    states = np.empty((n_steps + 1, x0.size))
    states[0] = x0
    most_iterations = 0
    for n in range(n_steps):
        states[n + 1], iterations = composed_step(field, states[n], dt, order)
        most_iterations = max(most_iterations, iterations)

    log.debug(f"{n_steps} steps, at most {most_iterations} fixed-point iterations")
    return states


def flow_field(h: HamiltonianSpec, x0: PhasePoint) -> VectorField:
    """
    The Hamiltonian vector field of h as a function of raw coordinates.
    The space is checked once here rather than at every evaluation.
    """
    space = x0.space
    check_space(h, space)
    tensor = poisson_tensor(space)
    return lambda x: tensor @ gradient(h, PhasePoint(space, x), check=False)


def linear_generator(h: QuadraticOperator, x0: PhasePoint) -> np.ndarray:
    """The matrix A with P grad(H)(x) = A x, read off column by column."""
    field = flow_field(h, x0)
    return np.column_stack([field(e) for e in np.eye(x0.coords.size)])


def linear_step_matrix(
    generator: np.ndarray,
    dt: float,
    order: int = config.integrator.order
) -> np.ndarray:
    """
    One composed step of x' = A x as a matrix. Each substep of weight w is
    the exact implicit midpoint solution (1 - w dt A/2)^-1 (1 + w dt A/2).
    """
    identity = np.eye(generator.shape[0])
    step = identity
    for weight in _substep_weights(order):
        half = 0.5 * weight * dt * generator
        step = np.linalg.solve(identity - half, identity + half) @ step
    return step


def _integrate_states(
    h: HamiltonianSpec,
    x0: PhasePoint,
    n_steps: int,
    dt: float,
    order: int
) -> np.ndarray:
    if not isinstance(h, QuadraticOperator):
        return integrate_field(flow_field(h, x0), x0.coords, n_steps, dt, order)

    step = linear_step_matrix(linear_generator(h, x0), dt, order)
    states = np.empty((n_steps + 1, x0.coords.size))
    states[0] = x0.coords
    for n in range(n_steps):
        states[n + 1] = step @ states[n]
    if not np.all(np.isfinite(states)):
        raise NonFiniteValueException("Linear flow produced a non-finite state")
    log.debug(f"{n_steps} linear steps")
    return states


def integrate(
    h: HamiltonianSpec,
    x0: PhasePoint,
    t_final: float,
    dt: float,
    order: int = config.integrator.order
) -> Trajectory:
    """
    Integrates the Hamiltonian flow of h from x0.

    Args:
        h (HamiltonianSpec): The Hamilton function
        x0 (PhasePoint): Initial point on a space that fits h
        t_final (float): Requested final time, rounded to a multiple of dt
        dt (float): Step size
        order (int, optional): 2 or 4. Defaults to config.integrator.order.

    Raises:
        ValueError: Raised if dt <= 0 or t_final < 0
        FixedPointConvergenceException: Raised by a non-converging step
        NonFiniteValueException: Raised if the state stops being finite

    Returns:
        Trajectory: Samples at every step, including t = 0
    """
    check_space(h, x0.space)
    n_steps = step_count(t_final, dt)

    states = _integrate_states(h, x0, n_steps, dt, order)
    points = [PhasePoint(x0.space, state) for state in states]
    trajectory = Trajectory(
        times=dt * np.arange(n_steps + 1),
        points=points,
        energies=np.array([energy(h, point) for point in points])
    )

    log.info(
        f"Integrated to t = {trajectory.final_time:.6g} in {n_steps} steps; " \
        f"energy drift {trajectory.energy_drift:.3e}")
    return trajectory


def flow_map(
    h: HamiltonianSpec,
    x0: PhasePoint,
    t_final: float,
    dt: float,
    order: int = config.integrator.order
) -> PhasePoint:
    """The time-t_final flow applied to x0, without keeping the samples."""
    check_space(h, x0.space)
    states = _integrate_states(h, x0, step_count(t_final, dt), dt, order)
    return PhasePoint(x0.space, states[-1])


def _flow_derivative(
    h: HamiltonianSpec,
    x0: PhasePoint,
    direction: np.ndarray,
    t_final: float,
    dt: float,
    step: float,
    order: int
) -> np.ndarray:
    """
    Derivative of the flow map along a direction, by central differences
    refined once by Richardson extrapolation: (4 D(step/2) - D(step)) / 3.
    """
    def _central(eps: float) -> np.ndarray:
        ahead = flow_map(h, PhasePoint(x0.space, x0.coords + eps * direction), t_final, dt, order)
        behind = flow_map(h, PhasePoint(x0.space, x0.coords - eps * direction), t_final, dt, order)
        return (ahead.coords - behind.coords) / (2 * eps)

    return (4.0 * _central(step / 2) - _central(step)) / 3.0


def flow_symplectic_check(
    h: HamiltonianSpec,
    x0: PhasePoint,
    u: TangentVector,
    v: TangentVector,
    t_final: float,
    dt: float,
    step: float = config.finite_differences.flow_step,
    order: int = config.integrator.order,
    degenerate_threshold: float = config.tolerances.degenerate_area
) -> float:
    """
    Carries u and v along the flow by differentiating the flow map and
    returns omega(u_t, v_t) / omega(u, v). A Hamiltonian flow gives 1.

    Raises:
        SpaceKindException: Raised if u or v isn't based at x0
        DegenerateAreaException: Raised if |omega(u, v)| is at or below
        degenerate_threshold
    """
    for tangent in (u, v):
        if tangent.base.space != x0.space \
                or not np.array_equal(tangent.base.coords, x0.coords):
            raise SpaceKindException("Tangent vector is not based at the initial point")

    area_before = symplectic_form(u, v)
    if abs(area_before) <= degenerate_threshold:
        raise DegenerateAreaException(area_before, degenerate_threshold)

    image = flow_map(h, x0, t_final, dt, order)
    u_t = TangentVector(image, _flow_derivative(h, x0, u.components, t_final, dt, step, order))
    v_t = TangentVector(image, _flow_derivative(h, x0, v.components, t_final, dt, step, order))

    ratio = symplectic_form(u_t, v_t) / area_before
    log.debug(f"Flow area ratio over t = {t_final}: {ratio!r}")
    return ratio


__all__ = [
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
    "flow_symplectic_check"
]
