"""
Contains the global phase (gauge) attached to a cloning image and the
rules which fix the final state of a cloning machine.

Both are smooth real-differentiable functions of the object amplitudes
(alpha, beta). Their derivatives are expressed with respect to the four
real parameters (Re alpha, Im alpha, Re beta, Im beta), in that order.
"""
from enum import Enum
from typing import Callable, NamedTuple, Optional

import numpy as np

import config


class GaugeVariant(Enum):
    ZERO = "zero"
    CONSTANT = "constant"
    SMOOTH = "smooth"


class GaugeSpec(NamedTuple):
    """
    The phase theta(alpha, beta) multiplying the image of a cloning map.

    Smooth gauges carry the field and its four real partial derivatives.
    """
    variant: GaugeVariant
    theta: float = 0.0
    field: Optional[Callable[[complex, complex], float]] = None
    partials: Optional[Callable[[complex, complex], np.ndarray]] = None

    def value(self, alpha: complex, beta: complex) -> float:
        if self.variant is GaugeVariant.SMOOTH:
            return float(self.field(alpha, beta))
        return self.theta

    def gradient(self, alpha: complex, beta: complex) -> np.ndarray:
        if self.variant is GaugeVariant.SMOOTH:
            return np.asarray(self.partials(alpha, beta), dtype=float)
        return np.zeros(4)


def zero_gauge() -> GaugeSpec:
    return GaugeSpec(GaugeVariant.ZERO)


def constant_gauge(theta: float) -> GaugeSpec:
    return GaugeSpec(GaugeVariant.CONSTANT, theta=float(theta))


def smooth_gauge(
    field: Callable[[complex, complex], float],
    partials: Callable[[complex, complex], np.ndarray]
) -> GaugeSpec:
    """
    Builds a smooth gauge. The partials must be the derivatives of field with
    respect to (Re alpha, Im alpha, Re beta, Im beta); see gauge_partials_error.
    """
    return GaugeSpec(GaugeVariant.SMOOTH, field=field, partials=partials)


def linear_gauge(c1: float) -> GaugeSpec:
    """The smooth gauge theta = c1 * Re(alpha)."""
    return smooth_gauge(
        lambda alpha, beta: c1 * alpha.real,
        lambda alpha, beta: np.array([c1, 0.0, 0.0, 0.0])
    )


def gauge_partials_error(
    gauge: GaugeSpec,
    alpha: complex,
    beta: complex,
    step: float = config.finite_differences.step
) -> float:
    """
    Largest deviation between a gauge's declared partials and central
    differences of its field at (alpha, beta).
    """
    params = np.array([alpha.real, alpha.imag, beta.real, beta.imag])

    def _theta(values: np.ndarray) -> float:
        return gauge.value(
            complex(values[0], values[1]),
            complex(values[2], values[3]))

    numerical = np.zeros(4)
    for i in range(4):
        shift = np.zeros(4)
        shift[i] = step
        numerical[i] = (_theta(params + shift) - _theta(params - shift)) / (2 * step)

    return float(np.max(np.abs(numerical - gauge.gradient(alpha, beta))))


class MachineRule(NamedTuple):
    """
    The final state of a cloning machine as a function of the object state.

    state returns the machine's two complex coordinates; partials returns
    a (4, 2) complex array holding their derivatives with respect to
    (Re alpha, Im alpha, Re beta, Im beta).
    """
    name: str
    state: Callable[[complex, complex], np.ndarray]
    partials: Callable[[complex, complex], np.ndarray]


# Final machine state (conj(alpha), conj(beta))
CONJUGATE_MACHINE = MachineRule(
    name="conjugate",
    state=lambda alpha, beta: np.array([np.conj(alpha), np.conj(beta)]),
    partials=lambda alpha, beta: np.array([
        [1.0, 0.0],
        [-1j, 0.0],
        [0.0, 1.0],
        [0.0, -1j]
    ], dtype=complex)
)

# Final machine state fixed at (1, 0), independent of the object
FIXED_MACHINE = MachineRule(
    name="fixed",
    state=lambda alpha, beta: np.array([1.0, 0.0], dtype=complex),
    partials=lambda alpha, beta: np.zeros((4, 2), dtype=complex)
)

# Final machine state (Im alpha + i Re alpha, Im beta + i Re beta), i.e. i*conj(.)
SWAPPED_MACHINE = MachineRule(
    name="swapped",
    state=lambda alpha, beta: np.array([
        alpha.imag + 1j * alpha.real,
        beta.imag + 1j * beta.real
    ]),
    partials=lambda alpha, beta: np.array([
        [1j, 0.0],
        [1.0, 0.0],
        [0.0, 1j],
        [0.0, 1.0]
    ], dtype=complex)
)
