"""Models package."""
from helly.models.geometry import (
    ConvexSet,
    FeasibilityResult,
    LinearConstraint,
    Point,
    Relation,
    Scalar,
    Status,
)
from helly.models.hypergraph import Edge, Hypergraph, Matching
from helly.models.family import (
    ColorClasses,
    Extraction,
    Instance,
    IntersectionProfile,
    SubfamilyResult,
)
from helly.models.report import (
    Analysis,
    BoundValue,
    ConstructionCheck,
    ConstructionSpec,
    FractionalReport,
    Report,
    Sidecar,
    SweepRow,
    Verdict,
)

__all__ = [
    "Analysis",
    "ConvexSet",
    "FeasibilityResult",
    "LinearConstraint",
    "Point",
    "Relation",
    "Scalar",
    "Status",
    "Edge",
    "Hypergraph",
    "Matching",
    "ColorClasses",
    "Extraction",
    "Instance",
    "IntersectionProfile",
    "SubfamilyResult",
    "BoundValue",
    "ConstructionCheck",
    "ConstructionSpec",
    "FractionalReport",
    "Report",
    "Sidecar",
    "SweepRow",
    "Verdict",
]
