"""Utility functions for helly."""
from helly.utils.validation import (
    ConfigError,
    ConsistencyError,
    GenerationError,
    HypothesisViolationError,
    InstanceParseError,
    MalformedInputError,
    ScaleLimitError,
    SpecError,
    validate_alpha,
    validate_beta,
    validate_coefficient_lengths,
    validate_dimension,
    validate_scale,
)
from helly.utils.rational import (
    exact_root,
    format_scalar,
    integer_nth_root,
    matrix_rank,
    parse_scalar,
    root_enclosure,
)

__all__ = [
    "ConfigError",
    "ConsistencyError",
    "GenerationError",
    "HypothesisViolationError",
    "InstanceParseError",
    "MalformedInputError",
    "ScaleLimitError",
    "SpecError",
    "validate_alpha",
    "validate_beta",
    "validate_coefficient_lengths",
    "validate_dimension",
    "validate_scale",
    "exact_root",
    "format_scalar",
    "integer_nth_root",
    "matrix_rank",
    "parse_scalar",
    "root_enclosure",
]
