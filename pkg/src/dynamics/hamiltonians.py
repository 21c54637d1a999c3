"""
Contains the Hamilton functions the dynamics module can integrate:

  * QuadraticOperator: H(X) = <psi_X|H|psi_X>, the linear Schrodinger flow
  * ExpectationPolynomial: polynomials in expectation values, i.e. the
    nonlinear but phase-invariant flows of nonlinear Hamiltonian quantum
    mechanics
  * MeanFieldHybrid: H_c(q, p) + <H_q> + <V(q, p)>, a classical system
    coupled to a quantum one in mean-field form

Every variant has an analytic gradient. MeanFieldHybrid falls back to
central differences when it isn't given the derivatives of H_c or V.
"""
from typing import Callable, List, NamedTuple, Optional, Tuple, Union

import numpy as np

from ..exceptions import DimensionMismatchException, SpaceKindException
from ..phase_space import \
    PhaseSpaceDescriptor, \
    PhasePoint, \
    TangentVector, \
    HermitianOperator, \
    ScalarField, \
    SpaceKind, \
    expectation, \
    quantum_amplitudes, \
    quantum_gradient, \
    poisson_tensor, \
    finite_difference_gradient


class QuadraticOperator(NamedTuple):
    operator: HermitianOperator


class PolynomialTerm(NamedTuple):
    """One term c * prod_m <A_m>^(e_m) of an ExpectationPolynomial."""
    coefficient: float
    factors: Tuple[HermitianOperator, ...]
    exponents: Tuple[int, ...]


class ExpectationPolynomial(NamedTuple):
    terms: Tuple[PolynomialTerm, ...]


# (q, p) -> value, and (q, p) -> (dH/dq, dH/dp)
ClassicalEnergy = Callable[[np.ndarray, np.ndarray], float]
ClassicalGradient = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]

# (q, p) -> V(q, p), and (q, p) -> ([dV/dq_i], [dV/dp_i])
Interaction = Callable[[np.ndarray, np.ndarray], HermitianOperator]
InteractionPartials = Callable[
    [np.ndarray, np.ndarray],
    Tuple[List[HermitianOperator], List[HermitianOperator]]]


class MeanFieldHybrid(NamedTuple):
    """
    H(q, p, x, y) = H_c(q, p) + <psi|H_q|psi> + <psi|V(q, p)|psi>

    n_classical is the number of classical degrees of freedom.
    """
    n_classical: int
    classical_energy: ClassicalEnergy
    quantum_operator: HermitianOperator
    interaction: Interaction
    classical_gradient: Optional[ClassicalGradient] = None
    interaction_partials: Optional[InteractionPartials] = None


HamiltonianSpec = Union[QuadraticOperator, ExpectationPolynomial, MeanFieldHybrid]


def make_term(coefficient: float, factors, exponents) -> PolynomialTerm:
    """
    Builds a PolynomialTerm, checking one positive integer exponent per factor.
    """
    factors = tuple(factors)
    exponents = tuple(int(e) for e in exponents)
    if len(factors) != len(exponents):
        raise DimensionMismatchException(
            "exponent list", len(factors), len(exponents))
    if any(e < 1 for e in exponents):
        raise ValueError(f"Exponents must be positive integers, got {exponents}")
    return PolynomialTerm(float(coefficient), factors, exponents)


def quantum_dim(h: HamiltonianSpec) -> int:
    """Complex dimension of the quantum sector a Hamiltonian acts on."""
    if isinstance(h, QuadraticOperator):
        return h.operator.dim
    if isinstance(h, ExpectationPolynomial):
        dims = {op.dim for term in h.terms for op in term.factors}
        if len(dims) != 1:
            raise DimensionMismatchException(
                "polynomial factors (distinct dimensions)", 1, len(dims))
        return dims.pop()
    return h.quantum_operator.dim


def check_space(h: HamiltonianSpec, space: PhaseSpaceDescriptor) -> None:
    """
    Confirms a Hamiltonian can act on points of the given space.

    Raises:
        SpaceKindException: Raised for a quantum Hamiltonian on a
        non-quantum space, or a mean-field one on a non-hybrid space
        DimensionMismatchException: Raised if the sector sizes differ
    """
    expected_kind = SpaceKind.HYBRID \
        if isinstance(h, MeanFieldHybrid) \
        else SpaceKind.QUANTUM
    if space.kind is not expected_kind:
        raise SpaceKindException(
            f"{type(h).__name__} needs a {expected_kind.value} space, " \
            f"got {space.kind.value}")

    if space.n_quantum != quantum_dim(h):
        raise DimensionMismatchException(
            "quantum sector", quantum_dim(h), space.n_quantum)
    if isinstance(h, MeanFieldHybrid) and space.n_classical != h.n_classical:
        raise DimensionMismatchException(
            "classical sector", h.n_classical, space.n_classical)


def _classical_split(point: PhasePoint) -> Tuple[np.ndarray, np.ndarray]:
    n = point.space.n_classical
    return point.classical_coords[:n], point.classical_coords[n:]


def effective_operator(h: MeanFieldHybrid, q: np.ndarray, p: np.ndarray) -> HermitianOperator:
    """H_q + V(q, p): the operator the quantum sector sees at (q, p)."""
    return h.quantum_operator + h.interaction(q, p)


def _term_value(term: PolynomialTerm, values: List[float]) -> float:
    return term.coefficient * float(np.prod(
        [v ** e for v, e in zip(values, term.exponents)]))


def energy(h: HamiltonianSpec, point: PhasePoint) -> float:
    """Evaluates H at a point."""
    check_space(h, point.space)

    if isinstance(h, QuadraticOperator):
        return expectation(h.operator, point)

    if isinstance(h, ExpectationPolynomial):
        total = 0.0
        for term in h.terms:
            values = [expectation(op, point) for op in term.factors]
            total += _term_value(term, values)
        return total

    q, p = _classical_split(point)
    return float(h.classical_energy(q, p)) \
        + expectation(effective_operator(h, q, p), point)


def _polynomial_complex_gradient(h: ExpectationPolynomial, psi: np.ndarray) -> np.ndarray:
    """dH/d(conj psi) by the chain rule through each expectation value."""
    grad = np.zeros(psi.size, dtype=complex)
    for term in h.terms:
        values = [float(np.vdot(psi, op.entries @ psi).real) for op in term.factors]
        for m, (op, exponent) in enumerate(zip(term.factors, term.exponents)):
            others = np.prod([
                v ** e
                for k, (v, e) in enumerate(zip(values, term.exponents))
                if k != m
            ])
            weight = term.coefficient * exponent * values[m] ** (exponent - 1) * others
            grad += weight * (op.entries @ psi)
    return grad


def gradient(h: HamiltonianSpec, point: PhasePoint, check: bool = True) -> np.ndarray:
    """
    Returns the real gradient of H over the point's canonical coordinates.
    Pass check=False when the space is already known to fit h.

    The quantum part comes from G = dH/d(conj psi), which is H_eff psi for
    every variant, with H_eff the operator the expectation values are
    differentiated into.
    """
    if check:
        check_space(h, point.space)
    space = point.space
    psi = quantum_amplitudes(point)

    if isinstance(h, QuadraticOperator):
        return quantum_gradient(h.operator.entries @ psi, space)

    if isinstance(h, ExpectationPolynomial):
        return quantum_gradient(_polynomial_complex_gradient(h, psi), space)

    if h.classical_gradient is None or h.interaction_partials is None:
        return finite_difference_gradient(lambda x: energy(h, x), point)

    q, p = _classical_split(point)
    dq, dp = h.classical_gradient(q, p)
    dv_dq, dv_dp = h.interaction_partials(q, p)
    classical_grad = np.concatenate([
        np.asarray(dq, dtype=float) + [expectation(op, point) for op in dv_dq],
        np.asarray(dp, dtype=float) + [expectation(op, point) for op in dv_dp]
    ])
    quantum_grad = quantum_gradient(
        effective_operator(h, q, p).entries @ psi, space)
    return np.concatenate([classical_grad, quantum_grad])


def hamiltonian_vector_field(h: HamiltonianSpec, point: PhasePoint) -> TangentVector:
    """
    Returns the Hamiltonian vector field P grad(H) at a point, with P the
    Poisson tensor of the point's space. On quantum spaces this is the
    real form of d(psi)/dt = -i H_eff psi.

    Raises:
        SpaceKindException: Raised if the point's space doesn't fit H
        DimensionMismatchException: Raised if the sector sizes don't fit H
    """
    return TangentVector(
        point,
        poisson_tensor(point.space) @ gradient(h, point))


def as_scalar_field(h: HamiltonianSpec) -> ScalarField:
    """H as a ScalarField, e.g. for Poisson brackets {A, H}."""
    return ScalarField(
        lambda point: energy(h, point),
        lambda point: gradient(h, point))


__all__ = [
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
    "as_scalar_field"
]
