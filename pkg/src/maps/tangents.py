"""
Builds tangent vectors at the initial point of a map from the three real
parameters (g1, g2, g3) of a one-qubit tangent direction.
"""
from typing import NamedTuple

import numpy as np

from ..phase_space import TangentVector
from .definitions import MapDefinition, initial_point, checked_object


class TangentParams(NamedTuple):
    """
    Parameters of the object tangent direction

        d(alpha) = i g1 alpha + g3 beta
        d(beta)  = -g3 alpha + i g2 beta

    which always stays on the unit sphere of the object state.
    """
    g1: float
    g2: float
    g3: float


class ZeroTangentException(Exception):
    """
    Represents an instance where a parameter triple gives the zero tangent
    vector at the requested object state, so it can't be normalized.
    This happens for the zero triple, and for any triple with
    g3^2 = g1 g2 at some states.
    """
    def __init__(self, params: TangentParams, norm: float) -> None:
        message = \
            f"Tangent parameters {tuple(params)!r} give a zero tangent " \
            f"vector (norm {norm!r})."
        super().__init__(message)


# Below this metric norm a tangent is treated as zero
_ZERO_NORM = 1e-14


def object_tangent(alpha: complex, beta: complex, params: TangentParams) -> tuple:
    """Returns (d alpha, d beta) for the given parameters."""
    g1, g2, g3 = params
    return (
        1j * g1 * alpha + g3 * beta,
        -g3 * alpha + 1j * g2 * beta
    )


def tangent_from_params(
    map_: MapDefinition,
    obj,
    params: TangentParams,
    normalize: bool = True
) -> TangentVector:
    """
    Builds the tangent vector at initial_point(map_, obj) whose object
    components follow the parametrized direction and whose other
    components vanish.

    Args:
        map_ (MapDefinition): A map with an initial submanifold
        obj: The normalized object state (alpha, beta)
        params (TangentParams): The direction parameters
        normalize (bool, optional): Rescale to unit metric norm. Defaults to True.

    Raises:
        NotNormalizedException: Raised if the object isn't normalized
        ZeroTangentException: Raised if the direction vanishes

    Returns:
        TangentVector: The tangent at the map's initial point
    """
    alpha, beta = checked_object(obj)
    base = initial_point(map_, obj)
    d_alpha, d_beta = object_tangent(alpha, beta, params)

    scale = np.sqrt(2.0 / map_.domain.hbar)
    components = np.zeros(map_.domain.total_real_dim)
    columns = map_.object_columns
    components[columns[0]] = scale * d_alpha.real
    components[columns[1]] = scale * d_alpha.imag
    components[columns[2]] = scale * d_beta.real
    components[columns[3]] = scale * d_beta.imag

    # The metric is Euclidean up to hbar on every sector we build tangents in
    norm = float(np.sqrt(map_.domain.hbar * (components @ components)))
    if norm < _ZERO_NORM:
        raise ZeroTangentException(params, norm)

    tangent = TangentVector(base, components)
    if normalize:
        tangent = tangent * (1.0 / norm)
    return tangent


def radial_overlap(tangent: TangentVector) -> float:
    """
    Returns sum(x g_x + y g_y) over the quantum sector of the base point,
    i.e. the component of a tangent along the normalization sphere's normal.
    """
    space = tangent.base.space
    offset = space.quantum_offset
    return float(tangent.base.coords[offset:] @ tangent.components[offset:])


__all__ = [
    "TangentParams",
    "ZeroTangentException",
    "object_tangent",
    "tangent_from_params",
    "radial_overlap"
]
