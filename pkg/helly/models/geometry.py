"""Convex sets as exact linear-constraint systems."""
from enum import Enum
from fractions import Fraction
from typing import Annotated, Optional, Sequence, Tuple

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    model_validator,
)

from helly.utils.rational import format_scalar, parse_scalar

# Exact rational; accepts int, Fraction or "p/q" and always serializes as "p/q".
Scalar = Annotated[
    Fraction,
    BeforeValidator(parse_scalar),
    PlainSerializer(format_scalar, return_type=str),
]

Point = Tuple[Scalar, ...]


class Relation(str, Enum):
    """Relation of a linear constraint."""
    LE = "<="
    EQ = "="


class Status(str, Enum):
    """Outcome of a feasibility decision."""
    NONEMPTY = "NONEMPTY"
    EMPTY = "EMPTY"


class LinearConstraint(BaseModel):
    """A single constraint ``a . x REL b`` over R^d."""
    coefficients: Tuple[Scalar, ...] = Field(..., min_length=1, description="Coefficient vector a")
    rhs: Scalar = Field(..., description="Right-hand side b")
    relation: Relation = Field(Relation.LE, description="Either <= or =")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def is_degenerate(self) -> bool:
        """True when every coefficient is zero."""
        return all(a == 0 for a in self.coefficients)

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        value = sum((a * x for a, x in zip(self.coefficients, point)), Fraction(0))
        if self.relation is Relation.EQ:
            return value == self.rhs
        return value <= self.rhs


class ConvexSet(BaseModel):
    """
    A convex subset of R^d in H-representation.

    An empty constraint tuple denotes the whole space R^d.
    """
    dim: int = Field(..., ge=1, description="Ambient dimension d")
    constraints: Tuple[LinearConstraint, ...] = Field(
        default=(), description="Linear equalities/inequalities; empty means R^d"
    )

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_dimensions(self) -> "ConvexSet":
        for position, constraint in enumerate(self.constraints):
            if constraint.dim != self.dim:
                raise ValueError(
                    f"Constraint {position} has {constraint.dim} coefficients, "
                    f"expected {self.dim}"
                )
        return self

    @property
    def is_whole_space(self) -> bool:
        return not self.constraints

    @property
    def is_hyperplane(self) -> bool:
        return (
            len(self.constraints) == 1
            and self.constraints[0].relation is Relation.EQ
            and not self.constraints[0].is_degenerate()
        )

    def contains(self, point: Sequence[Fraction]) -> bool:
        """Exact membership test."""
        if len(point) != self.dim:
            return False
        return all(constraint.satisfied_by(point) for constraint in self.constraints)


class FeasibilityResult(BaseModel):
    """Result of deciding whether a constraint system has a solution."""
    status: Status = Field(..., description="NONEMPTY or EMPTY")
    witness: Optional[Point] = Field(None, description="Exact solution, present iff NONEMPTY")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _witness_iff_nonempty(self) -> "FeasibilityResult":
        if (self.status is Status.NONEMPTY) != (self.witness is not None):
            raise ValueError("witness must be present exactly when status is NONEMPTY")
        return self

    @property
    def is_nonempty(self) -> bool:
        return self.status is Status.NONEMPTY
