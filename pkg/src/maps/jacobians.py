"""
Pushes tangent vectors forward through a map, either with the map's
analytic Jacobian or with central differences of its forward map, and
compares the two.
"""
import logging
from enum import Enum

import numpy as np

import config
from ..exceptions import \
    DimensionMismatchException, \
    SpaceKindException, \
    NonFiniteValueException
from ..phase_space import PhasePoint, TangentVector
from .definitions import MapDefinition

log = logging.getLogger(__name__)


class Method(Enum):
    """How a pushforward is computed."""
    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "fd"


class MissingJacobianException(Exception):
    """
    Represents an instance where an analytic pushforward was requested
    for a map that doesn't carry an analytic Jacobian.
    """
    def __init__(self, map_name: str) -> None:
        message = \
            f"Map '{map_name}' has no analytic Jacobian; " \
            "use the finite difference method instead."
        super().__init__(message)


def _shifted(point: PhasePoint, direction: np.ndarray, step: float) -> PhasePoint:
    return PhasePoint(point.space, point.coords + step * direction)


def _checked_finite(values: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise NonFiniteValueException(f"{what} contains non-finite entries")
    return values


def directional_difference(
    map_: MapDefinition,
    point: PhasePoint,
    direction: np.ndarray,
    step: float = config.finite_differences.step
) -> np.ndarray:
    """(f(X + h v) - f(X - h v)) / 2h in codomain coordinates."""
    forward = map_.forward(_shifted(point, direction, step)).coords
    backward = map_.forward(_shifted(point, direction, -step)).coords
    return _checked_finite(
        (forward - backward) / (2 * step),
        f"Finite difference of '{map_.name}'")


def finite_difference_jacobian(
    map_: MapDefinition,
    point: PhasePoint,
    step: float = config.finite_differences.step
) -> np.ndarray:
    """Central difference Jacobian of a map, one domain coordinate at a time."""
    eye = np.eye(map_.domain.total_real_dim)
    return np.column_stack([
        directional_difference(map_, point, eye[i], step)
        for i in range(map_.domain.total_real_dim)
    ])


def analytic_jacobian(map_: MapDefinition, point: PhasePoint) -> np.ndarray:
    """
    Evaluates a map's analytic Jacobian.

    Raises:
        MissingJacobianException: Raised if the map has none
        DimensionMismatchException: Raised if the Jacobian has the wrong shape
    """
    if map_.analytic_jacobian is None:
        raise MissingJacobianException(map_.name)

    jacobian = np.asarray(map_.analytic_jacobian(point), dtype=float)
    expected = (map_.codomain.total_real_dim, map_.domain.total_real_dim)
    if jacobian.shape != expected:
        raise DimensionMismatchException(
            f"Jacobian of '{map_.name}' (rows x columns)",
            expected[0] * expected[1],
            jacobian.size)
    return _checked_finite(jacobian, f"Analytic Jacobian of '{map_.name}'")


def pushforward(
    map_: MapDefinition,
    point: PhasePoint,
    tangent: TangentVector,
    method: Method = Method.ANALYTIC,
    step: float = config.finite_differences.step
) -> TangentVector:
    """
    Returns the image of a tangent vector under the tangent map of map_ at point.

    Args:
        map_ (MapDefinition): The map to push through
        point (PhasePoint): A point of the map's domain
        tangent (TangentVector): A tangent vector based at point
        method (Method, optional): Analytic Jacobian or central differences
        along the tangent. Defaults to Method.ANALYTIC.
        step (float, optional): Difference step for Method.FINITE_DIFFERENCE

    Raises:
        SpaceKindException: Raised if point isn't on the domain or the
        tangent isn't based at point
        MissingJacobianException: Raised for Method.ANALYTIC on a map
        without an analytic Jacobian
        NonFiniteValueException: Raised if the result isn't finite

    Returns:
        TangentVector: The pushed vector, based at map_.forward(point)
    """
    if point.space != map_.domain:
        raise SpaceKindException(
            f"Point is not on the domain of '{map_.name}'")
    if tangent.base.space != point.space \
            or not np.array_equal(tangent.base.coords, point.coords):
        raise SpaceKindException("Tangent vector is not based at the given point")

    image = map_.forward(point)
    if method is Method.ANALYTIC:
        components = analytic_jacobian(map_, point) @ tangent.components
    else:
        components = directional_difference(
            map_, point, tangent.components, step)

    return TangentVector(image, components)


def jacobian_disagreement(
    map_: MapDefinition,
    point: PhasePoint,
    step: float = config.finite_differences.step
) -> float:
    """Max-norm difference between the analytic and finite difference Jacobians."""
    difference = analytic_jacobian(map_, point) \
        - finite_difference_jacobian(map_, point, step)
    disagreement = float(np.max(np.abs(difference)))
    log.debug(f"Jacobian disagreement for '{map_.name}': {disagreement:.3e}")
    return disagreement


def perturbed(map_: MapDefinition, offset: float) -> MapDefinition:
    """
    Returns a copy of map_ whose analytic Jacobian has offset added to
    every entry. Used to confirm that the Jacobian gate catches errors.
    """
    if map_.analytic_jacobian is None:
        raise MissingJacobianException(map_.name)
    jacobian = map_.analytic_jacobian
    return map_._replace(
        analytic_jacobian=lambda point: jacobian(point) + offset)


__all__ = [
    "Method",
    "MissingJacobianException",
    "directional_difference",
    "finite_difference_jacobian",
    "analytic_jacobian",
    "pushforward",
    "jacobian_disagreement",
    "perturbed"
]
