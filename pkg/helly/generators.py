"""
Seeded instance generators.

Every generator takes an integer seed and draws from its own
``random.Random(seed)``, so the same arguments always give the same instance.
"""
import logging
import math
import random
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from helly.config import settings
from helly.geometry_kernel import (
    is_general_position,
    make_box,
    make_halfspace,
    make_hyperplane,
    make_whole_space,
)
from helly.models.family import ColorClasses
from helly.models.geometry import ConvexSet, LinearConstraint, Relation
from helly.models.hypergraph import Hypergraph
from helly.models.report import ConstructionSpec
from helly.utils.rational import matrix_rank, parse_scalar
from helly.utils.validation import GenerationError, MalformedInputError, SpecError

logger = logging.getLogger(__name__)

# Random members live on the integer grid [0, GRID]^d.
GRID = 6
SMALL_COEFF = 3


class RandomModel(str, Enum):
    """Set models for random color classes."""
    AXIS_BOXES = "axis-boxes"
    HALFSPACE_SYSTEMS = "halfspace-systems"
    MIXED = "mixed-with-hyperplanes"


class SystemVariant(str, Enum):
    """Shapes of random constraint systems for the oracle comparison."""
    GENERIC = "generic"
    EQUALITY_HEAVY = "equality-heavy"
    DEGENERATE = "degenerate"


def construction_spec(d: int, n: int, beta: object, seed: int = 0) -> ConstructionSpec:
    """
    Validate construction parameters.

    Raises:
        SpecError: If d < 1, n < 1 or beta is outside (0, 1]
    """
    try:
        return ConstructionSpec(d=d, n=n, beta=parse_scalar(beta), seed=seed)
    except (ValidationError, MalformedInputError) as exc:
        raise SpecError(f"Invalid construction parameters: {exc}") from exc


def _floor_beta_n(spec: ConstructionSpec, minimum: int, kind: str) -> int:
    k = spec.floor_beta_n
    if k < minimum:
        raise SpecError(
            f"The {kind} construction needs floor(beta*n) >= {minimum}, "
            f"got floor({spec.beta}*{spec.n}) = {k}"
        )
    return k


def predicted_mono_count(n: int, beta: object, d: int) -> int:
    """C(n, d+1) - C(n - floor(beta n) + d + 1, d + 1)."""
    spec = construction_spec(d, n, beta)
    k = _floor_beta_n(spec, d + 1, "monochromatic")
    return math.comb(n, d + 1) - math.comb(n - (k - (d + 1)), d + 1)


def predicted_colorful_count(n: int, beta: object, d: int) -> int:
    """n^(d+1) - (n - floor(beta n) + d)^(d+1)."""
    spec = construction_spec(d, n, beta)
    k = _floor_beta_n(spec, d, "colorful")
    return n ** (d + 1) - (n - k + d) ** (d + 1)


def _primitive(values: List[int]) -> List[int]:
    """Divide out the gcd and make the first nonzero entry positive."""
    divisor = reduce(math.gcd, values, 0) or 1
    values = [v // divisor for v in values]
    leading = next(v for v in values if v != 0)
    return [-v for v in values] if leading < 0 else values


def _extends_general_position(rows: Sequence[Tuple[int, ...]], candidate: Tuple[int, ...], d: int) -> bool:
    """Check only the subsets that contain the new hyperplane."""
    size = min(len(rows) + 1, d)
    for subset in combinations(rows, size - 1):
        if matrix_rank([row[:d] for row in subset] + [candidate[:d]]) < size:
            return False
    for subset in combinations(rows, d):
        if matrix_rank(list(subset) + [candidate]) < d + 1:
            return False
    return True


def gen_general_position_hyperplanes(
    m: int,
    d: int,
    seed: int,
    coeff_bound: Optional[int] = None,
    max_retries: Optional[int] = None,
) -> Tuple[ConvexSet, ...]:
    """
    Draw m hyperplanes in general position in R^d.

    Integer coefficients and right-hand sides come from [-B, B]; each draw is
    kept only if it preserves general position with the ones already kept.

    Raises:
        GenerationError: If a hyperplane cannot be placed within max_retries draws
    """
    bound = settings.coeff_bound if coeff_bound is None else coeff_bound
    retries = settings.max_retries if max_retries is None else max_retries
    rng = random.Random(seed)
    rows: List[Tuple[int, ...]] = []
    for index in range(m):
        for _ in range(retries):
            values = [rng.randint(-bound, bound) for _ in range(d + 1)]
            if all(v == 0 for v in values[:d]):
                continue
            candidate = tuple(_primitive(values))
            if candidate not in rows and _extends_general_position(rows, candidate, d):
                rows.append(candidate)
                break
        else:
            raise GenerationError(
                f"Could not place hyperplane {index} of {m} in general position "
                f"after {retries} draws (d={d}, seed={seed})"
            )

    hyperplanes = tuple(make_hyperplane(row[:d], row[d]) for row in rows)
    if not is_general_position(hyperplanes):
        raise GenerationError(f"Hyperplanes for seed {seed} failed the general position check")
    logger.debug("Placed %d hyperplanes in general position in R^%d", m, d)
    return hyperplanes


def gen_example_monochromatic(d: int, n: int, beta: object, seed: int = 0) -> Tuple[ConvexSet, ...]:
    """
    floor(beta n) - (d+1) copies of R^d followed by n - floor(beta n) + d + 1
    hyperplanes in general position.

    Raises:
        SpecError: If floor(beta n) < d + 1
    """
    spec = construction_spec(d, n, beta, seed)
    k = _floor_beta_n(spec, d + 1, "monochromatic")
    copies = k - (d + 1)
    hyperplanes = gen_general_position_hyperplanes(n - copies, d, seed)
    logger.info("Monochromatic construction: %d copies of R^%d, %d hyperplanes", copies, d, n - copies)
    return tuple(make_whole_space(d) for _ in range(copies)) + hyperplanes


def gen_construction_colorful(d: int, n: int, beta: object, seed: int = 0) -> ColorClasses:
    """
    d+1 classes of floor(beta n) - d copies of R^d and n - floor(beta n) + d
    hyperplanes each, with all hyperplanes of all classes jointly in general
    position.

    Raises:
        SpecError: If floor(beta n) < d
    """
    spec = construction_spec(d, n, beta, seed)
    k = _floor_beta_n(spec, d, "colorful")
    copies = k - d
    per_class = n - copies
    hyperplanes = gen_general_position_hyperplanes((d + 1) * per_class, d, seed)
    classes = tuple(
        tuple(make_whole_space(d) for _ in range(copies))
        + hyperplanes[index * per_class:(index + 1) * per_class]
        for index in range(d + 1)
    )
    logger.info(
        "Colorful construction: %d classes of %d copies of R^%d and %d hyperplanes",
        d + 1,
        copies,
        d,
        per_class,
    )
    return ColorClasses(d=d, classes=classes)


# Random instances

def _grid_point(rng: random.Random, d: int) -> List[int]:
    return [rng.randint(0, GRID) for _ in range(d)]


def _small_normal(rng: random.Random, d: int) -> List[int]:
    while True:
        normal = [rng.randint(-SMALL_COEFF, SMALL_COEFF) for _ in range(d)]
        if any(normal):
            return normal


def _random_box(rng: random.Random, d: int, anchor: Optional[List[int]] = None) -> ConvexSet:
    if anchor is None:
        lower = _grid_point(rng, d)
        upper = [rng.randint(lo, GRID) for lo in lower]
    else:
        lower = [rng.randint(0, a) for a in anchor]
        upper = [rng.randint(a, GRID) for a in anchor]
    return make_box(lower, upper)


def _anchored_system(rng: random.Random, d: int, anchor: Optional[List[int]] = None) -> ConvexSet:
    """Halfspaces a.x <= a.p + s through a grid point p, so p is always inside."""
    point = _grid_point(rng, d) if anchor is None else anchor
    constraints = []
    for _ in range(rng.randint(1, d + 1)):
        normal = _small_normal(rng, d)
        slack = rng.randint(0, 2)
        constraints.append(make_halfspace(normal, sum(a * x for a, x in zip(normal, point)) + slack))
    return ConvexSet(dim=d, constraints=tuple(constraints))


def _random_hyperplane(rng: random.Random, d: int, anchor: Optional[List[int]] = None) -> ConvexSet:
    normal = _small_normal(rng, d)
    if anchor is None:
        return make_hyperplane(normal, rng.randint(-GRID, GRID))
    return make_hyperplane(normal, sum(a * x for a, x in zip(normal, anchor)))


def _random_member(rng: random.Random, d: int, model: RandomModel) -> ConvexSet:
    if model is RandomModel.AXIS_BOXES:
        return _random_box(rng, d)
    if model is RandomModel.HALFSPACE_SYSTEMS:
        return _anchored_system(rng, d)
    roll = rng.random()
    if roll < 1 / 6:
        return make_whole_space(d)
    if roll < 1 / 2:
        return _random_hyperplane(rng, d)
    if roll < 3 / 4:
        return _random_box(rng, d)
    return _anchored_system(rng, d)


def _check_sizes(d: int, sizes: Sequence[int]) -> None:
    if len(sizes) != d + 1:
        raise MalformedInputError(f"Expected {d + 1} class sizes, got {len(sizes)}")
    if any(size < 1 for size in sizes):
        raise MalformedInputError(f"Class sizes must be positive, got {tuple(sizes)}")


def gen_random_classes(
    d: int, sizes: Sequence[int], model: RandomModel = RandomModel.MIXED, seed: int = 0
) -> ColorClasses:
    """Random color classes of nonempty convex sets on a small grid."""
    _check_sizes(d, sizes)
    model = RandomModel(model)
    rng = random.Random(seed)
    classes = tuple(
        tuple(_random_member(rng, d, model) for _ in range(size)) for size in sizes
    )
    return ColorClasses(d=d, classes=classes)


def gen_colorful_helly_instance(d: int, sizes: Sequence[int], seed: int = 0) -> ColorClasses:
    """Color classes whose members all contain one seeded anchor point."""
    _check_sizes(d, sizes)
    rng = random.Random(seed)
    anchor = _grid_point(rng, d)
    makers = (_random_box, _anchored_system, _random_hyperplane)
    classes = tuple(
        tuple(rng.choice(makers)(rng, d, anchor) for _ in range(size)) for size in sizes
    )
    return ColorClasses(d=d, classes=classes)


def _container_member(rng: random.Random, d: int) -> ConvexSet:
    """A box, halfspace or R^d containing the whole grid [0, GRID]^d."""
    roll = rng.randrange(3)
    if roll == 0:
        return make_whole_space(d)
    if roll == 1:
        lower = [-rng.randint(0, 2) for _ in range(d)]
        upper = [GRID + rng.randint(0, 2) for _ in range(d)]
        return make_box(lower, upper)
    normal = _small_normal(rng, d)
    # The maximum of a.x over the grid is attained at a corner.
    corner_max = GRID * sum(max(a, 0) for a in normal)
    return ConvexSet(dim=d, constraints=(make_halfspace(normal, corner_max + rng.randint(0, 2)),))


def gen_colorful_helly_split_instance(
    d: int, sizes: Sequence[int], seed: int = 0, container: Optional[int] = None
) -> ColorClasses:
    """
    Color classes with alpha = 1 where only one class need intersect.

    Each class other than ``container`` gets its own axis and holds the
    hyperplanes x_axis = c for distinct grid values c, so two of its members
    never meet. Members of the container class all contain [0, GRID]^d, and a
    colorful tuple meets at the grid point fixed by its d hyperplanes.

    Args:
        d: Dimension
        sizes: d+1 class sizes; classes other than the container hold at most GRID+1 sets
        seed: Seed for the container index, the grid values and the container members
        container: Index of the container class, drawn from the seed when None
    """
    _check_sizes(d, sizes)
    rng = random.Random(seed)
    if container is None:
        container = rng.randrange(d + 1)
    if not 0 <= container <= d:
        raise MalformedInputError(f"Container class must be in 0..{d}, got {container}")
    if any(size > GRID + 1 for i, size in enumerate(sizes) if i != container):
        raise MalformedInputError(f"Hyperplane classes hold at most {GRID + 1} sets, got {tuple(sizes)}")

    axes = iter(range(d))
    classes = []
    for index, size in enumerate(sizes):
        if index == container:
            classes.append(tuple(_container_member(rng, d) for _ in range(size)))
            continue
        axis = next(axes)
        normal = [1 if i == axis else 0 for i in range(d)]
        values = rng.sample(range(GRID + 1), size)
        classes.append(tuple(make_hyperplane(normal, c) for c in values))
    logger.debug("Split alpha = 1 instance: container class %d, sizes %s", container, tuple(sizes))
    return ColorClasses(d=d, classes=tuple(classes))


def gen_random_system(
    d: int, seed: int = 0, variant: SystemVariant = SystemVariant.GENERIC
) -> List[LinearConstraint]:
    """Random small systems, feasible or not, for comparing feasibility oracles."""
    variant = SystemVariant(variant)
    rng = random.Random(seed)
    constraints: List[LinearConstraint] = []
    for _ in range(rng.randint(0, 2 * d + 2)):
        coefficients = [rng.randint(-SMALL_COEFF, SMALL_COEFF) for _ in range(d)]
        rhs = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        relation = Relation.LE
        if variant is SystemVariant.EQUALITY_HEAVY and rng.random() < 1 / 2:
            relation = Relation.EQ
        constraints.append(
            LinearConstraint(coefficients=tuple(coefficients), rhs=rhs, relation=relation)
        )
    if variant is SystemVariant.DEGENERATE:
        constraints.append(
            LinearConstraint(
                coefficients=(0,) * d,
                rhs=rng.randint(-1, 1),
                relation=rng.choice([Relation.LE, Relation.EQ]),
            )
        )
        if constraints[:-1]:
            constraints.append(rng.choice(constraints[:-1]))
    return constraints


def gen_random_hypergraph(n: int, r: int, seed: int = 0, density: float = 0.5) -> Hypergraph:
    """Each r-subset of range(n) becomes an edge independently with probability ``density``."""
    rng = random.Random(seed)
    edges = tuple(edge for edge in combinations(range(n), r) if rng.random() < density)
    return Hypergraph(n=n, r=r, edges=edges)
