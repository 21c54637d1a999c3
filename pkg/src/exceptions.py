"""Contains exceptions shared between the phase space, maps and dynamics modules"""


class DimensionMismatchException(Exception):
    """
    Represents an instance where an array, operator or point was given
    with a size that doesn't fit the phase space it was used with.
    """
    def __init__(
        self,
        what: str,
        expected: int,
        got: int
    ) -> None:
        message = \
            f"Dimension mismatch for {what}: " \
            f"expected {expected}, got {got}."
        super().__init__(message)


class SpaceKindException(Exception):
    """
    Represents an instance where an operation was asked to act on a
    phase space of the wrong kind (e.g. a classical space where only
    quantum spaces make sense), or on two points from different spaces.
    """
    def __init__(self, *args: object) -> None:
        super().__init__(*args)


class NotNormalizedException(Exception):
    """
    Represents an instance where a state which must have unit norm
    (an object qubit, a machine state, a quantum point) does not.
    """
    def __init__(
        self,
        what: str,
        norm_squared: float,
        expected: float = 1.0
    ) -> None:
        message = \
            f"The {what} is not normalized: squared norm is " \
            f"{norm_squared!r}, expected {expected!r}."
        super().__init__(message)


class NotHermitianException(Exception):
    """
    Represents an instance where an operator was expected to equal its
    own conjugate transpose but differs from it beyond tolerance.
    """
    def __init__(self, deviation: float, tolerance: float) -> None:
        message = \
            f"Operator is not Hermitian: max |A - A^H| = {deviation!r} " \
            f"exceeds tolerance {tolerance!r}."
        super().__init__(message)


class NonFiniteValueException(Exception):
    """
    Represents an instance where a gradient, difference quotient or
    integrated state contained NaN or infinite entries.
    """
    def __init__(self, *args: object) -> None:
        super().__init__(*args)


class DegenerateAreaException(Exception):
    """
    Represents an instance where the symplectic area spanned by a pair of
    tangent vectors is too small for an area ratio to mean anything.
    The caller is expected to resample the state or the tangent pair.
    """
    def __init__(self, area: float, threshold: float) -> None:
        message = \
            f"Degenerate symplectic area {area!r} " \
            f"(threshold {threshold!r}); resample the instance."
        self.area = area
        super().__init__(message)
