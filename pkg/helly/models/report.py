"""Bounds, construction specs and verification reports."""
import math
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from helly.models.family import Extraction, IntersectionProfile, SubfamilyResult
from helly.models.geometry import Scalar


class Verdict(str, Enum):
    """Overall outcome of a verification."""
    PASS = "PASS"
    FAIL = "FAIL"


class BoundValue(BaseModel):
    """
    A bound on beta as a function of alpha and d.

    ``exact`` is set when every root involved is rational; otherwise the value
    is known to lie in the rational interval [lower, upper].
    """
    alpha: Scalar = Field(..., description="Intersecting fraction")
    d: int = Field(..., ge=1, description="Dimension")
    expression: str = Field(..., description="Closed form with exact rational operands")
    exact: Optional[Scalar] = Field(None, description="Exact value when rational")
    lower: Scalar = Field(..., description="Lower end of the enclosure")
    upper: Scalar = Field(..., description="Upper end of the enclosure")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class ConstructionSpec(BaseModel):
    """Parameters of the extremal constructions."""
    d: int = Field(..., ge=1, description="Dimension")
    n: int = Field(..., ge=1, description="Class (or family) size")
    beta: Scalar = Field(..., description="Target fraction in (0, 1]")
    seed: int = Field(0, description="Seed of the hyperplane sampler")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_beta(self) -> "ConstructionSpec":
        if not 0 < self.beta <= 1:
            raise ValueError(f"beta must lie in (0, 1], got {self.beta}")
        return self

    @property
    def floor_beta_n(self) -> int:
        return math.floor(self.beta * self.n)


class ConstructionCheck(BaseModel):
    """Comparison of an instance with the closed forms of its construction."""
    kind: str = Field(..., description="mono or colorful")
    spec: ConstructionSpec
    predicted_count: int = Field(..., description="Closed-form intersecting tuple count")
    observed_count: int = Field(..., description="Enumerated intersecting tuple count")
    count_matches: bool
    expected_class_max: int = Field(..., description="Predicted maximum intersecting subfamily size")
    class_max_matches: Optional[bool] = Field(None, description="None when exact maxima were skipped")
    upper_bound_holds: Optional[bool] = Field(
        None, description="beta_observed <= 1-(1-alpha)^(1/(d+1))"
    )
    gap_within: Optional[bool] = Field(
        None, description="beta_observed - (1-(1-alpha)^(1/(d+1))) <= (d+1)/n"
    )


class Report(BaseModel):
    """Outcome of the colorful verification pipeline."""
    invocation: Optional[Dict[str, Any]] = Field(None, description="Echoed configuration")
    d: int
    sizes: Tuple[int, ...]
    profile: IntersectionProfile
    extraction: Extraction
    extraction_bound_holds: bool = Field(..., description="size >= n_i*(1-(d+1)(1-alpha)^(1/(d+1)))")
    exact: bool = Field(..., description="True if exact maxima were computed for every class")
    class_maxima: Optional[Tuple[SubfamilyResult, ...]] = None
    extraction_within_exact: Optional[bool] = None
    beta_observed: Scalar
    beta_class_index: int
    lower_bound: Optional[BoundValue] = Field(None, description="None when alpha = 0")
    lower_bound_holds: bool
    vacuous: bool = Field(False, description="alpha = 0, the theorem asserts nothing")
    upper_bound: Optional[BoundValue] = None
    construction: Optional[ConstructionCheck] = None
    verdict: Verdict

    model_config = ConfigDict(arbitrary_types_allowed=True)


class FractionalReport(BaseModel):
    """Outcome of the monochromatic (fractional Helly) verification."""
    invocation: Optional[Dict[str, Any]] = None
    d: int
    n: int
    profile: IntersectionProfile
    exact: bool
    maximum: Optional[SubfamilyResult] = None
    beta_observed: Optional[Scalar] = None
    linear_bound_holds: Optional[bool] = Field(None, description="beta_observed >= alpha/(d+1)")
    sharp_bound: Optional[BoundValue] = Field(None, description="1-(1-alpha)^(1/(d+1))")
    sharp_bound_holds: Optional[bool] = None
    construction: Optional[ConstructionCheck] = None
    verdict: Verdict

    model_config = ConfigDict(arbitrary_types_allowed=True)


class Sidecar(BaseModel):
    """Provenance written next to every generated instance file."""
    kind: str = Field(..., description="mono, colorful, random or colorful-helly")
    spec: Optional[ConstructionSpec] = Field(None, description="Construction parameters, if any")
    predicted_count: Optional[int] = Field(None, description="Closed-form intersecting tuple count")
    invocation: Optional[Dict[str, Any]] = Field(None, description="Echoed configuration")


class SweepRow(BaseModel):
    """One line of sweep output."""
    d: int
    n: int
    beta: Optional[Scalar] = Field(None, description="Construction beta; None for random instances")
    seed: int
    alpha: Scalar
    beta_observed: Scalar
    lower_bound: Optional[Scalar] = None
    lower_bound_hi: Optional[Scalar] = None
    upper_bound: Optional[Scalar] = None
    upper_bound_hi: Optional[Scalar] = None
    exact: bool
    verdict: Verdict

    model_config = ConfigDict(arbitrary_types_allowed=True)


class Analysis(BaseModel):
    """Counts, hypergraphs and extraction of an instance, without exact maximization."""
    invocation: Optional[Dict[str, Any]] = None
    d: int
    sizes: Tuple[int, ...]
    colorful: bool
    profile: IntersectionProfile
    extraction: Optional[Extraction] = Field(None, description="Colorful instances only")
    colorful_helly_class: Optional[int] = Field(None, description="First class that intersects as a whole")
    matching_product: Optional[int] = Field(None, description="Product of the matching sizes")
    matching_product_holds: Optional[bool] = Field(
        None, description="Non-intersecting colorful tuples >= product of matching sizes"
    )

    model_config = ConfigDict(arbitrary_types_allowed=True)
