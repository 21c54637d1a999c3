"""
Independent reference results used to check the integrator and the
bracket: matrix exponentials for linear flows, the commutator form of
the bracket of two quadratic observables, and random Hermitian operators.
"""
import numpy as np
from scipy.linalg import expm

from ..phase_space import \
    PhasePoint, \
    HermitianOperator, \
    expectation, \
    observable, \
    poisson_bracket, \
    quantum_amplitudes, \
    replace_quantum


def unitary_oracle(op: HermitianOperator, psi0, t: float, hbar: float = 1.0) -> np.ndarray:
    """Returns exp(-i H t / hbar) psi0."""
    psi0 = np.asarray(psi0, dtype=complex).reshape(-1)
    return expm(-1j * t / hbar * op.entries) @ psi0


def oracle_point(op: HermitianOperator, x0: PhasePoint, t: float) -> PhasePoint:
    """
    x0 with its quantum sector propagated by exp(-i H t). The Poisson tensor
    carries 1/hbar while the coordinates carry sqrt(2/hbar), so the flow of
    <H> is exp(-i H t) on amplitudes for every hbar of the space.
    """
    return replace_quantum(x0, unitary_oracle(op, quantum_amplitudes(x0), t))


def commutator_expectation(a: HermitianOperator, b: HermitianOperator, point: PhasePoint) -> float:
    """Returns <psi| -i [A, B] |psi>, the commutator side of the bracket identity."""
    generator = HermitianOperator(-1j * a.commutator(b))
    return expectation(generator, point)


def bracket_commutator_residual(a: HermitianOperator, b: HermitianOperator, point: PhasePoint) -> float:
    """|{<A>, <B>} - <-i[A, B]>| at a point."""
    bracket = poisson_bracket(observable(a), observable(b), point)
    return abs(bracket - commutator_expectation(a, b, point))


def random_hermitian(rng: np.random.Generator, dim: int, scale: float = 1.0) -> HermitianOperator:
    """(G + G^H) / 2 for a matrix G of complex standard Gaussians."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianOperator(scale * 0.5 * (g + g.conj().T))


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    """A normalized complex Gaussian vector, i.e. a Haar-uniform state."""
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return psi / np.linalg.norm(psi)


__all__ = [
    "unitary_oracle",
    "oracle_point",
    "commutator_expectation",
    "bracket_commutator_residual",
    "random_hermitian",
    "random_state"
]
