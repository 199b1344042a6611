"""Exact colorful fractional Helly experiments on linear-constraint convex sets."""
__version__ = "1.0.0"

from helly.geometry_kernel import feasible, intersect_sets, is_general_position
from helly.helly_core import (
    count_intersecting_colorful,
    count_intersecting_monochromatic,
    extract_intersecting_subfamily,
    max_intersecting_subfamily_exact,
    verify_fractional,
    verify_theorem,
)

__all__ = [
    "__version__",
    "feasible",
    "intersect_sets",
    "is_general_position",
    "count_intersecting_colorful",
    "count_intersecting_monochromatic",
    "extract_intersecting_subfamily",
    "max_intersecting_subfamily_exact",
    "verify_fractional",
    "verify_theorem",
]
