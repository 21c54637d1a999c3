import numpy as np
import pytest

from hypothesis import strategies as st

from src.phase_space import \
    HermitianOperator, \
    classical, \
    quantum, \
    to_canonical, \
    product_embed, \
    PhasePoint
from test.test_data import TEST_SEED, PLUS_STATE


def _normalized(values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    half = values.size // 2
    amplitudes = values[:half] + 1j * values[half:]
    return amplitudes / np.linalg.norm(amplitudes)


def states(dim: int = 2):
    """Hypothesis strategy for normalized complex vectors of a given dimension."""
    components = st.floats(min_value=-1, max_value=1, allow_nan=False, allow_infinity=False)
    return st.lists(components, min_size=2 * dim, max_size=2 * dim) \
        .filter(lambda v: np.linalg.norm(v) > 0.1) \
        .map(_normalized)


def hermitian_operators(dim: int = 2):
    """Hypothesis strategy for Hermitian operators with entries in [-2, 2]."""
    entries = st.floats(min_value=-2, max_value=2, allow_nan=False, allow_infinity=False)

    def _build(values) -> HermitianOperator:
        values = np.asarray(values).reshape(2, dim, dim)
        g = values[0] + 1j * values[1]
        return HermitianOperator(0.5 * (g + g.conj().T))

    return st.lists(entries, min_size=2 * dim * dim, max_size=2 * dim * dim).map(_build)


@pytest.fixture(
    scope="function", # Fresh generator per test so tests don't share draws
    name="rng"
)
def rng():
    """A seeded numpy Generator."""
    yield np.random.default_rng(TEST_SEED)


@pytest.fixture(name="plus_point")
def plus_point():
    """The qubit state (1, 1)/sqrt(2) in canonical coordinates."""
    yield to_canonical(PLUS_STATE, quantum(2))


@pytest.fixture(name="hybrid_point")
def hybrid_point():
    """One classical degree of freedom at (q, p) = (1, 0) with the qubit in (1, 0)."""
    yield product_embed(
        PhasePoint(classical(1), np.array([1.0, 0.0])),
        to_canonical([1.0, 0.0], quantum(2)))
