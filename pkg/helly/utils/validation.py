"""Error types and validation utilities shared by the helly modules."""
from fractions import Fraction
from typing import Sequence


class MalformedInputError(ValueError):
    """Raised when an input violates the structural contract of an operation."""
    pass


class HypothesisViolationError(ValueError):
    """Raised when a theorem's hypothesis does not hold for the given input."""
    pass


class SpecError(ValueError):
    """Raised when a construction spec would produce a negative cardinality."""
    pass


class ScaleLimitError(RuntimeError):
    """Raised when a brute-force routine is asked to exceed its documented limit."""
    pass


class GenerationError(RuntimeError):
    """Raised when seeded rejection sampling runs out of retries."""
    pass


class ConsistencyError(RuntimeError):
    """Raised when an internal exactness check fails (e.g. a witness is not a solution)."""
    pass


class ConfigError(ValueError):
    """Raised when a HELLY_* environment variable holds an invalid value."""
    pass


class InstanceParseError(MalformedInputError):
    """Raised when an instance file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def validate_dimension(dim: int) -> None:
    """
    Validate that an ambient dimension is a positive integer.

    Args:
        dim: The dimension d of R^d

    Raises:
        MalformedInputError: If dim is not a positive integer

    Examples:
        >>> validate_dimension(2)

        >>> validate_dimension(0)
        Traceback (most recent call last):
        ...
        helly.utils.validation.MalformedInputError: Dimension must be a positive integer, got 0
    """
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise MalformedInputError(f"Dimension must be a positive integer, got {dim}")


def validate_coefficient_lengths(rows: Sequence[Sequence[Fraction]], dim: int) -> None:
    """
    Validate that every coefficient row has exactly ``dim`` entries.

    Args:
        rows: Coefficient vectors of a constraint system
        dim: The expected ambient dimension

    Raises:
        MalformedInputError: On the first row of the wrong length

    Examples:
        >>> validate_coefficient_lengths([(1, 0), (0, 1)], 2)

        >>> validate_coefficient_lengths([(1, 0), (1,)], 2)
        Traceback (most recent call last):
        ...
        helly.utils.validation.MalformedInputError: Constraint 1 has 1 coefficients, expected 2
    """
    validate_dimension(dim)
    for position, row in enumerate(rows):
        if len(row) != dim:
            raise MalformedInputError(
                f"Constraint {position} has {len(row)} coefficients, expected {dim}"
            )


def validate_alpha(alpha: Fraction) -> None:
    """
    Validate that a colorful/monochromatic fraction lies in (0, 1].

    Examples:
        >>> validate_alpha(Fraction(1, 2))

        >>> validate_alpha(Fraction(0))
        Traceback (most recent call last):
        ...
        helly.utils.validation.MalformedInputError: alpha must lie in (0, 1], got 0
    """
    if not 0 < alpha <= 1:
        raise MalformedInputError(f"alpha must lie in (0, 1], got {alpha}")


def validate_beta(beta: Fraction) -> None:
    """
    Validate that a subfamily fraction lies in [0, 1].

    Examples:
        >>> validate_beta(Fraction(0))

        >>> validate_beta(Fraction(3, 2))
        Traceback (most recent call last):
        ...
        helly.utils.validation.MalformedInputError: beta must lie in [0, 1], got 3/2
    """
    if not 0 <= beta <= 1:
        raise MalformedInputError(f"beta must lie in [0, 1], got {beta}")


def validate_scale(name: str, size: int, limit: int) -> None:
    """
    Validate that a brute-force routine stays within its documented limit.

    Args:
        name: Human readable routine name used in the error message
        size: The instance size
        limit: The largest supported size

    Raises:
        ScaleLimitError: If size exceeds limit

    Examples:
        >>> validate_scale("independence number", 12, 20)

        >>> validate_scale("independence number", 21, 20)
        Traceback (most recent call last):
        ...
        helly.utils.validation.ScaleLimitError: independence number supports at most 20, got 21
    """
    if size > limit:
        raise ScaleLimitError(f"{name} supports at most {limit}, got {size}")
