"""Color classes, intersection profiles and subfamily results."""
from fractions import Fraction
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from helly.models.geometry import ConvexSet, Point, Scalar
from helly.models.hypergraph import Hypergraph, Matching


class ColorClasses(BaseModel):
    """The d+1 color classes F_1, ..., F_{d+1} of convex sets in R^d."""
    d: int = Field(..., ge=1, description="Ambient dimension")
    classes: Tuple[Tuple[ConvexSet, ...], ...] = Field(..., description="Exactly d+1 nonempty classes")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_classes(self) -> "ColorClasses":
        if len(self.classes) != self.d + 1:
            raise ValueError(f"Expected {self.d + 1} color classes, got {len(self.classes)}")
        for index, members in enumerate(self.classes):
            if not members:
                raise ValueError(f"Color class {index} is empty")
            for member in members:
                if member.dim != self.d:
                    raise ValueError(
                        f"Color class {index} contains a set of dimension {member.dim}, "
                        f"expected {self.d}"
                    )
        return self

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(members) for members in self.classes)


class IntersectionProfile(BaseModel):
    """How many tuples intersect, out of how many."""
    intersecting_count: int = Field(..., ge=0, description="Number of intersecting tuples")
    total_count: int = Field(..., ge=0, description="Number of tuples enumerated")
    alpha: Scalar = Field(..., description="intersecting_count / total_count")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_counts(self) -> "IntersectionProfile":
        if self.intersecting_count > self.total_count:
            raise ValueError("intersecting_count cannot exceed total_count")
        if self.total_count and self.alpha != Fraction(self.intersecting_count, self.total_count):
            raise ValueError("alpha must equal intersecting_count / total_count")
        return self

    @property
    def nonintersecting_count(self) -> int:
        return self.total_count - self.intersecting_count


class SubfamilyResult(BaseModel):
    """An intersecting subfamily of one color class together with a common point."""
    class_index: int = Field(..., ge=0, description="Index i of the color class")
    members: Tuple[int, ...] = Field(default=(), description="Member indices within the class")
    size: int = Field(..., ge=0, description="Number of members")
    class_size: int = Field(..., ge=0, description="n_i")
    witness: Optional[Point] = Field(None, description="Common point of all members")
    beta_observed: Scalar = Field(..., description="size / n_i")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_size(self) -> "SubfamilyResult":
        if self.size != len(self.members):
            raise ValueError("size must equal the number of members")
        expected = Fraction(self.size, self.class_size) if self.class_size else Fraction(0)
        if self.beta_observed != expected:
            raise ValueError("beta_observed must equal size / class_size")
        if self.size and self.witness is None:
            raise ValueError("a nonempty subfamily needs a witness")
        return self


class Extraction(BaseModel):
    """Full record of the matching-based extraction."""
    hypergraphs: Tuple[Hypergraph, ...] = Field(..., description="H_i of non-intersecting (d+1)-tuples")
    matchings: Tuple[Matching, ...] = Field(..., description="Greedy maximal matching per H_i")
    ratios: Tuple[Scalar, ...] = Field(..., description="|M_i| / n_i per class")
    uncovered: Tuple[Tuple[int, ...], ...] = Field(..., description="Vertices missed by each M_i")
    candidates: Tuple[SubfamilyResult, ...] = Field(..., description="Verified intersecting candidate per class")
    chosen: SubfamilyResult = Field(..., description="Candidate of the selected class i*")
    shrunk: bool = Field(False, description="True if the chosen uncovered set had to be shrunk")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class Instance(BaseModel):
    """Contents of an instance file: one family, or d+1 color classes."""
    dim: int = Field(..., ge=1, description="Ambient dimension")
    classes: Tuple[Tuple[ConvexSet, ...], ...] = Field(..., description="Sets grouped by class")
    labels: Tuple[Tuple[str, ...], ...] = Field(..., description="Set ids, parallel to classes")
    colorful: bool = Field(False, description="True if the file declared color classes")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_shape(self) -> "Instance":
        if len(self.labels) != len(self.classes) or any(
            len(names) != len(members) for names, members in zip(self.labels, self.classes)
        ):
            raise ValueError("labels must mirror classes")
        if not self.colorful and len(self.classes) != 1:
            raise ValueError("a monochromatic instance holds exactly one family")
        for members in self.classes:
            for member in members:
                if member.dim != self.dim:
                    raise ValueError(f"set of dimension {member.dim} in a dim {self.dim} instance")
        return self

    @property
    def family(self) -> Tuple[ConvexSet, ...]:
        return tuple(member for members in self.classes for member in members)

    def to_color_classes(self) -> ColorClasses:
        return ColorClasses(d=self.dim, classes=self.classes)
