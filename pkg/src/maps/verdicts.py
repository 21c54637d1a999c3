"""
The symplectic area ratio engine: compares omega(g, h) at the initial
point of a map with omega of the pushed-forward pair at the image, over
single instances or seeded random sweeps.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

import config
from ..exceptions import DegenerateAreaException
from ..phase_space import symplectic_form
from .definitions import MapDefinition, initial_point, checked_object
from .jacobians import Method, pushforward
from .tangents import TangentParams, ZeroTangentException, tangent_from_params

log = logging.getLogger(__name__)

# Ratio each bundled map must show on every instance; None marks a control
EXPECTED_RATIOS = {
    "self-replication": 2.0,
    "quantum-cloning": 1.0,
    "quantum-cloning-fixed-machine": None,
    "hybrid-cloning": 1.0
}


class RejectionSamplingException(Exception):
    """
    Represents an instance where rejection sampling gave up without
    finding an acceptable draw, usually because the acceptance threshold
    is (close to) unreachable.
    """
    def __init__(self, what: str, draws: int) -> None:
        message = \
            f"Rejection sampling of {what} found no acceptable draw " \
            f"in {draws} attempts."
        super().__init__(message)


class RatioVerdict(NamedTuple):
    """The outcome of one area ratio evaluation."""
    map_name: str
    object_state: Tuple[complex, complex]
    params_g: TangentParams
    params_h: TangentParams
    area_before: float
    area_after: float
    ratio: float
    method: Method

    def to_record(self) -> dict:
        """Flattens the verdict into JSON-friendly scalars."""
        alpha, beta = self.object_state
        return {
            "map": self.map_name,
            "alpha_re": alpha.real,
            "alpha_im": alpha.imag,
            "beta_re": beta.real,
            "beta_im": beta.imag,
            "g": list(self.params_g),
            "h": list(self.params_h),
            "area_before": self.area_before,
            "area_after": self.area_after,
            "ratio": self.ratio,
            "method": self.method.value
        }


class SweepSummary(NamedTuple):
    count: int
    minimum: float
    maximum: float
    mean: float


class SweepResult(NamedTuple):
    verdicts: List[RatioVerdict]
    summary: SweepSummary


def area_factor(alpha: complex, beta: complex) -> float:
    """Re(conj(alpha) beta) = alpha_re beta_re + alpha_im beta_im."""
    return alpha.real * beta.real + alpha.imag * beta.imag


def closed_form_area(obj, pg: TangentParams, ph: TangentParams) -> float:
    """
    The skew product of two unnormalized parametrized tangents,

        omega(g, h) = 2 (g3 (h1 - h2) + (g2 - g1) h3) (alpha_re beta_re + alpha_im beta_im)

    The factor 2 comes from the canonical coordinate scale at hbar = 1.
    """
    alpha, beta = checked_object(obj)
    return 2.0 \
        * (pg.g3 * (ph.g1 - ph.g2) + (pg.g2 - pg.g1) * ph.g3) \
        * area_factor(alpha, beta)


def area_ratio(
    map_: MapDefinition,
    obj,
    pg: TangentParams,
    ph: TangentParams,
    method: Method = Method.ANALYTIC,
    degenerate_threshold: float = config.tolerances.degenerate_area
) -> RatioVerdict:
    """
    Computes omega(g, h) at the initial point, pushes g and h forward and
    returns both areas with their ratio.

    Raises:
        DegenerateAreaException: Raised if |omega(g, h)| is at or below
        degenerate_threshold; the caller should resample
        ZeroTangentException: Raised if either parameter triple gives a
        zero tangent at this state
    """
    alpha, beta = checked_object(obj)
    point = initial_point(map_, (alpha, beta))
    g = tangent_from_params(map_, (alpha, beta), pg)
    h = tangent_from_params(map_, (alpha, beta), ph)

    area_before = symplectic_form(g, h)
    if abs(area_before) <= degenerate_threshold:
        raise DegenerateAreaException(area_before, degenerate_threshold)

    area_after = symplectic_form(
        pushforward(map_, point, g, method),
        pushforward(map_, point, h, method))

    return RatioVerdict(
        map_name=map_.name,
        object_state=(alpha, beta),
        params_g=pg,
        params_h=ph,
        area_before=area_before,
        area_after=area_after,
        ratio=area_after / area_before,
        method=method
    )


def haar_qubit_states(rng: np.random.Generator, size: int) -> np.ndarray:
    """
    Draws Haar-uniform qubit states as a (size, 2) complex array, by
    normalizing four independent standard Gaussians per state.
    """
    gaussians = rng.standard_normal((size, 4))
    gaussians /= np.linalg.norm(gaussians, axis=1, keepdims=True)
    return gaussians[:, [0, 2]] + 1j * gaussians[:, [1, 3]]


def sample_object_state(
    seed=None,
    min_area_factor: float = config.sampling.min_area_factor,
    max_draws: int = config.sampling.max_draws,
    batch_size: int = config.sampling.batch_size
) -> Tuple[complex, complex]:
    """
    Draws a Haar-uniform object state, rejecting states whose area factor
    |Re(conj(alpha) beta)| is below min_area_factor.

    Args:
        seed: An int seed or a numpy Generator to draw from
        min_area_factor (float, optional): Rejection threshold; the factor
        never exceeds 1/2

    Raises:
        ValueError: Raised for a negative threshold
        RejectionSamplingException: Raised after max_draws rejected draws

    Returns:
        Tuple[complex, complex]: The accepted state (alpha, beta)
    """
    if min_area_factor < 0:
        raise ValueError(
            f"min_area_factor must be non-negative, got {min_area_factor}")

    rng = np.random.default_rng(seed)
    drawn = 0
    while drawn < max_draws:
        size = min(batch_size, max_draws - drawn)
        states = haar_qubit_states(rng, size)
        factors = np.abs(area_factor(states[:, 0], states[:, 1]))
        accepted = np.flatnonzero(factors >= min_area_factor)
        if accepted.size:
            alpha, beta = states[accepted[0]]
            return complex(alpha), complex(beta)
        drawn += size

    raise RejectionSamplingException("object states", drawn)


def sample_tangent_params(seed=None) -> TangentParams:
    """
    Draws tangent parameters uniformly from the unit 3-sphere and keeps
    the first three coordinates.
    """
    rng = np.random.default_rng(seed)
    draw = rng.standard_normal(4)
    draw /= np.linalg.norm(draw)
    return TangentParams(*(float(x) for x in draw[:3]))


class _Instance(NamedTuple):
    obj: Tuple[complex, complex]
    pg: TangentParams
    ph: TangentParams


def _draw_instance(
    map_: MapDefinition,
    rng: np.random.Generator,
    min_area_factor: float,
    min_tangent_area: float,
    max_tangent_draws: int
) -> _Instance:
    """Draws a state, then tangent pairs until their area clears min_tangent_area."""
    obj = sample_object_state(rng, min_area_factor)
    for _ in range(max_tangent_draws):
        pg = sample_tangent_params(rng)
        ph = sample_tangent_params(rng)
        try:
            area = symplectic_form(
                tangent_from_params(map_, obj, pg),
                tangent_from_params(map_, obj, ph))
        except ZeroTangentException:
            continue
        if abs(area) >= min_tangent_area:
            return _Instance(obj, pg, ph)

    raise RejectionSamplingException("tangent pairs", max_tangent_draws)


def summarize(verdicts: List[RatioVerdict]) -> SweepSummary:
    """Summary statistics of the ratios, accumulated in instance order."""
    ratios = np.array([verdict.ratio for verdict in verdicts])
    return SweepSummary(
        count=len(verdicts),
        minimum=float(ratios.min()),
        maximum=float(ratios.max()),
        mean=float(ratios.mean())
    )


def sweep_ratios(
    map_: MapDefinition,
    n: int,
    seed=None,
    method: Method = Method.ANALYTIC,
    jobs: int = 1,
    min_area_factor: float = config.sampling.min_area_factor,
    min_tangent_area: float = config.sampling.min_tangent_area,
    max_tangent_draws: int = config.sampling.max_tangent_draws,
    expected: Optional[float] = None
) -> SweepResult:
    """
    Evaluates area ratios on n seeded random instances.

    Instances are drawn sequentially from one generator, so the sample is
    the same whatever the job count; verdicts are then computed on up to
    `jobs` threads and returned in instance order.

    Args:
        map_ (MapDefinition): The map under test
        n (int): Number of instances, at least 1
        seed: An int seed or a numpy Generator
        method (Method, optional): Pushforward method. Defaults to Method.ANALYTIC.
        jobs (int, optional): Worker thread count. Defaults to 1.
        expected (float, optional): Ratio to log deviations against

    Raises:
        ValueError: Raised if n < 1 or jobs < 1
        RejectionSamplingException: Raised if states or tangent pairs
        can't be sampled

    Returns:
        SweepResult: The verdicts and their summary statistics
    """
    if n < 1:
        raise ValueError(f"Sweep needs at least one instance, got {n}")
    if jobs < 1:
        raise ValueError(f"Job count must be at least 1, got {jobs}")

    rng = np.random.default_rng(seed)
    instances = [
        _draw_instance(map_, rng, min_area_factor, min_tangent_area, max_tangent_draws)
        for _ in range(n)
    ]
    log.info(f"Sweeping {n} instances of '{map_.name}' ({method.value}, {jobs} jobs)")

    def _evaluate(instance: _Instance) -> RatioVerdict:
        return area_ratio(map_, instance.obj, instance.pg, instance.ph, method)

    with ThreadPoolExecutor(max_workers=jobs) as executor:
        verdicts = list(executor.map(_evaluate, instances))

    summary = summarize(verdicts)
    log.info(
        f"'{map_.name}' ratios: min {summary.minimum:.12g}, "
        f"max {summary.maximum:.12g}, mean {summary.mean:.12g}")
    if expected is not None:
        worst = max(abs(verdict.ratio - expected) for verdict in verdicts)
        log.debug(f"Largest deviation from {expected}: {worst:.3e}")

    return SweepResult(verdicts, summary)


__all__ = [
    "EXPECTED_RATIOS",
    "RejectionSamplingException",
    "RatioVerdict",
    "SweepSummary",
    "SweepResult",
    "area_factor",
    "closed_form_area",
    "area_ratio",
    "haar_qubit_states",
    "sample_object_state",
    "sample_tangent_params",
    "summarize",
    "sweep_ratios"
]
