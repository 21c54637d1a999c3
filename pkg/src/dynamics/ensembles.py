"""
Weighted particle ensembles on a hybrid phase space.

Each member follows its own Hamiltonian trajectory (a characteristic of
the Liouville equation) and carries its weight along unchanged. The
quantum density matrix is the weighted sum of the members' normalized
projectors.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

import config
from ..exceptions import SpaceKindException
from ..phase_space import \
    PhasePoint, \
    HermitianOperator, \
    SpaceKind, \
    classical, \
    quantum, \
    quantum_amplitudes, \
    product_embed, \
    to_canonical, \
    assert_normalized_amplitudes, \
    quantum_gradient, \
    unit_symplectic_matrix
from .hamiltonians import MeanFieldHybrid, check_space, effective_operator
from .integrators import Trajectory, flow_field, integrate, integrate_field, step_count

log = logging.getLogger(__name__)


class EmptyEnsembleException(Exception):
    """Represents an instance where an ensemble was built without members."""
    def __init__(self) -> None:
        super().__init__("An ensemble needs at least one member.")


class EnsembleWeightsException(Exception):
    """
    Represents an instance where ensemble weights were negative or didn't
    sum to one.
    """
    def __init__(self, weights: Sequence[float], tolerance: float) -> None:
        message = \
            f"Ensemble weights {list(weights)!r} must be non-negative and " \
            f"sum to 1 within {tolerance!r} (sum is {float(np.sum(weights))!r})."
        super().__init__(message)


class TraceException(Exception):
    """
    Represents an instance where a density matrix handed to purity()
    doesn't have unit trace.
    """
    def __init__(self, trace: float, tolerance: float) -> None:
        message = \
            f"Density matrix trace {trace!r} deviates from 1 " \
            f"by more than {tolerance!r}."
        super().__init__(message)


class EnsembleMemberException(Exception):
    """
    Represents an instance where integrating one ensemble member failed.
    The original failure is chained as __cause__.
    """
    def __init__(self, index: int, reason: Exception) -> None:
        message = f"Ensemble member {index} failed: {reason}"
        self.index = index
        super().__init__(message)


class EnsembleMember(NamedTuple):
    weight: float
    point: PhasePoint


class HybridEnsemble(NamedTuple):
    """A weighted set of points on one hybrid space. Build with make_ensemble."""
    members: Tuple[EnsembleMember, ...]

    @property
    def weights(self) -> np.ndarray:
        return np.array([member.weight for member in self.members])

    @property
    def space(self):
        return self.members[0].point.space


class Driver(Enum):
    """Which of two quantum states steers the shared classical trajectory."""
    A = "a"
    B = "b"


def make_ensemble(
    members: Iterable[EnsembleMember],
    tolerance: float = config.tolerances.weights
) -> HybridEnsemble:
    """
    Builds a HybridEnsemble, enforcing its invariants.

    Raises:
        EmptyEnsembleException: Raised for no members
        EnsembleWeightsException: Raised for negative weights or a sum
        away from 1 by more than tolerance
        SpaceKindException: Raised if members aren't hybrid points on one space
    """
    members = tuple(EnsembleMember(float(w), point) for w, point in members)
    if not members:
        raise EmptyEnsembleException()

    weights = [member.weight for member in members]
    if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > tolerance:
        raise EnsembleWeightsException(weights, tolerance)

    space = members[0].point.space
    if space.kind is not SpaceKind.HYBRID:
        raise SpaceKindException(
            f"Ensemble members must be hybrid points, got {space.kind.value}")
    if any(member.point.space != space for member in members):
        raise SpaceKindException("Ensemble members live on different spaces")

    return HybridEnsemble(members)


def delta_ensemble(point: PhasePoint) -> HybridEnsemble:
    """A single member of weight one."""
    return make_ensemble([(1.0, point)])


def two_point_ensemble(
    psi,
    positions=config.ensemble.two_point_positions,
    weights=config.ensemble.two_point_weights
) -> HybridEnsemble:
    """
    One classical degree of freedom sitting at each of the given (q, p)
    positions with its weight, all sharing the quantum state psi.
    """
    psi = assert_normalized_amplitudes(psi, "ensemble quantum state")
    quantum_point = to_canonical(psi, quantum(psi.size))
    members = [
        (w, product_embed(PhasePoint(classical(1), np.array(position, dtype=float)), quantum_point))
        for w, position in zip(weights, positions)
    ]
    return make_ensemble(members)


def _run_members(h: MeanFieldHybrid, e0: HybridEnsemble, t: float, dt: float, jobs: int) -> List[Trajectory]:
    def _run(indexed: Tuple[int, EnsembleMember]) -> Trajectory:
        index, member = indexed
        try:
            return integrate(h, member.point, t, dt)
        except Exception as e:
            log.error(f"Ensemble member {index} failed: {e}")
            raise EnsembleMemberException(index, e) from e

    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(_run, enumerate(e0.members)))


def ensemble_trajectories(
    h: MeanFieldHybrid,
    e0: HybridEnsemble,
    t: float,
    dt: float,
    jobs: int = 1
) -> List[Trajectory]:
    """
    Integrates every member of an ensemble, on up to `jobs` threads.
    Trajectories come back in member order.

    Raises:
        EnsembleMemberException: Raised for the first member whose
        integration fails
    """
    check_space(h, e0.space)
    log.info(f"Evolving {len(e0.members)} ensemble members to t = {t}")
    return _run_members(h, e0, t, dt, jobs)


def evolve_ensemble(
    h: MeanFieldHybrid,
    e0: HybridEnsemble,
    t: float,
    dt: float,
    jobs: int = 1
) -> HybridEnsemble:
    """Moves every member along its own trajectory; weights are unchanged."""
    return final_ensemble(e0, ensemble_trajectories(h, e0, t, dt, jobs))


def final_ensemble(e0: HybridEnsemble, trajectories: Sequence[Trajectory]) -> HybridEnsemble:
    """The members of e0 moved to the ends of their trajectories."""
    return HybridEnsemble(tuple(
        EnsembleMember(member.weight, trajectory.final_point)
        for member, trajectory in zip(e0.members, trajectories)
    ))


def _density_from(weights: Sequence[float], points: Sequence[PhasePoint]) -> HermitianOperator:
    rho = None
    for weight, point in zip(weights, points):
        psi = quantum_amplitudes(point)
        psi = psi / np.linalg.norm(psi)
        projector = weight * np.outer(psi, psi.conj())
        rho = projector if rho is None else rho + projector
    return HermitianOperator(rho)


def density_matrix(e: HybridEnsemble) -> HermitianOperator:
    """
    Returns sum_k w_k |psi_k><psi_k| over the members' normalized quantum states.

    Raises:
        EmptyEnsembleException: Raised for an ensemble without members
    """
    if not e.members:
        raise EmptyEnsembleException()
    return _density_from(e.weights, [member.point for member in e.members])


def purity(rho: HermitianOperator, tolerance: float = config.tolerances.trace) -> float:
    """
    Returns tr(rho^2) for a unit-trace density matrix.

    Raises:
        TraceException: Raised if |tr(rho) - 1| exceeds tolerance
    """
    trace = float(np.trace(rho.entries).real)
    if abs(trace - 1.0) > tolerance:
        raise TraceException(trace, tolerance)
    # tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(rho.entries) ** 2))


def purity_series(trajectories: Sequence[Trajectory], weights: Sequence[float]) -> np.ndarray:
    """Purity of the ensemble's density matrix at every common sample time."""
    n_samples = len(trajectories[0].points)
    return np.array([
        purity(_density_from(weights, [trajectory.points[k] for trajectory in trajectories]))
        for k in range(n_samples)
    ])


def _overlaps(states_a: np.ndarray, states_b: np.ndarray) -> np.ndarray:
    """|<a|b>| row by row, each row normalized first."""
    states_a = states_a / np.linalg.norm(states_a, axis=1, keepdims=True)
    states_b = states_b / np.linalg.norm(states_b, axis=1, keepdims=True)
    return np.abs(np.sum(states_a.conj() * states_b, axis=1))


def _to_amplitudes(coords: np.ndarray, n: int, hbar: float) -> np.ndarray:
    """Amplitudes of a stack of quantum coordinate rows (x_1..x_n, y_1..y_n)."""
    return np.sqrt(hbar / 2.0) * (coords[:, :n] + 1j * coords[:, n:])


def _checked_pair(h: MeanFieldHybrid, c0: PhasePoint, psi_a, psi_b):
    psi_a = assert_normalized_amplitudes(psi_a, "state a")
    psi_b = assert_normalized_amplitudes(psi_b, "state b")
    if c0.space.kind is not SpaceKind.CLASSICAL:
        raise SpaceKindException(
            f"Classical start must be a classical point, got {c0.space.kind.value}")
    space = quantum(psi_a.size)
    return to_canonical(psi_a, space), to_canonical(psi_b, space)


def coevolve_overlap(
    h: MeanFieldHybrid,
    psi_a,
    psi_b,
    c0: PhasePoint,
    t: float,
    dt: float,
    driver: Driver = Driver.A
) -> np.ndarray:
    """
    Evolves the hybrid pair (c0, driver state) self-consistently and
    carries the other state along with the same effective operator
    H_q + V(q(t), p(t)); returns |<psi_a(t)|psi_b(t)>| at every step.

    Both quantum states are integrated inside one augmented system, so
    each midpoint step applies the same unitary to both and the overlap
    is kept to rounding error.
    """
    point_a, point_b = _checked_pair(h, c0, psi_a, psi_b)
    driving, passive = (point_a, point_b) if driver is Driver.A else (point_b, point_a)
    start = product_embed(c0, driving)
    check_space(h, start.space)

    hybrid_field = flow_field(h, start)
    split = start.space.total_real_dim
    n_classical = start.space.n_classical
    n_quantum = start.space.n_quantum
    hbar = start.space.hbar
    passive_tensor = unit_symplectic_matrix(n_quantum) / hbar

    def _field(x: np.ndarray) -> np.ndarray:
        q, p = x[:n_classical], x[n_classical:2 * n_classical]
        psi = _to_amplitudes(x[None, split:], n_quantum, hbar)[0]
        operator = effective_operator(h, q, p)
        passive_field = passive_tensor @ quantum_gradient(
            operator.entries @ psi, passive.space)
        return np.concatenate([hybrid_field(x[:split]), passive_field])

    states = integrate_field(
        _field,
        np.concatenate([start.coords, passive.coords]),
        step_count(t, dt),
        dt)

    driven = _to_amplitudes(states[:, start.space.quantum_offset:split], n_quantum, hbar)
    carried = _to_amplitudes(states[:, split:], n_quantum, hbar)
    overlaps = _overlaps(driven, carried)
    log.info(f"Shared-driver overlap spread {np.ptp(overlaps):.3e} over {overlaps.size} samples")
    return overlaps


def separate_run_overlap(
    h: MeanFieldHybrid,
    psi_a,
    psi_b,
    c0: PhasePoint,
    t: float,
    dt: float
) -> np.ndarray:
    """
    Evolves (c0, psi_a) and (c0, psi_b) as two independent hybrid runs,
    each steering its own classical trajectory, and returns the overlap
    of their quantum states at every step.
    """
    point_a, point_b = _checked_pair(h, c0, psi_a, psi_b)
    runs = [integrate(h, product_embed(c0, point), t, dt) for point in (point_a, point_b)]
    states = [
        np.array([quantum_amplitudes(point) for point in run.points])
        for run in runs
    ]
    return _overlaps(states[0], states[1])


__all__ = [
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
    "separate_run_overlap"
]
