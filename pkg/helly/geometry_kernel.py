"""
Exact feasibility kernel for convex sets given as linear-constraint systems.

The production path is a phase-I simplex over ``fractions.Fraction`` with
Bland's rule; Fourier-Motzkin elimination is kept as an independent oracle.
"""
import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from helly.models.geometry import (
    ConvexSet,
    FeasibilityResult,
    LinearConstraint,
    Relation,
    Status,
)
from helly.utils.rational import matrix_rank, parse_scalar
from helly.utils.validation import (
    ConsistencyError,
    MalformedInputError,
    validate_coefficient_lengths,
    validate_dimension,
)

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def make_whole_space(d: int) -> ConvexSet:
    """Return R^d, i.e. the set with no constraints."""
    validate_dimension(d)
    return ConvexSet(dim=d)


def make_hyperplane(coeffs: Sequence[object], rhs: object) -> ConvexSet:
    """
    Return the hyperplane ``coeffs . x = rhs``.

    Raises:
        MalformedInputError: If every coefficient is zero
    """
    coefficients = tuple(parse_scalar(a) for a in coeffs)
    validate_dimension(len(coefficients))
    if all(a == 0 for a in coefficients):
        raise MalformedInputError("A hyperplane needs a nonzero coefficient vector")
    constraint = LinearConstraint(
        coefficients=coefficients, rhs=parse_scalar(rhs), relation=Relation.EQ
    )
    return ConvexSet(dim=len(coefficients), constraints=(constraint,))


def make_halfspace(coeffs: Sequence[object], rhs: object) -> LinearConstraint:
    """Return the constraint ``coeffs . x <= rhs``."""
    return LinearConstraint(
        coefficients=tuple(parse_scalar(a) for a in coeffs),
        rhs=parse_scalar(rhs),
        relation=Relation.LE,
    )


def make_box(lower: Sequence[object], upper: Sequence[object]) -> ConvexSet:
    """Axis-parallel box ``lower <= x <= upper`` (an interval when d = 1)."""
    if len(lower) != len(upper):
        raise MalformedInputError("Box corners must have the same dimension")
    d = len(lower)
    validate_dimension(d)
    constraints = []
    for axis in range(d):
        unit = [0] * d
        unit[axis] = 1
        constraints.append(make_halfspace(unit, upper[axis]))
        unit[axis] = -1
        constraints.append(make_halfspace(unit, -parse_scalar(lower[axis])))
    return ConvexSet(dim=d, constraints=tuple(constraints))


def _pivot(tableau: List[List[Fraction]], cost: List[Fraction], row: int, column: int) -> None:
    pivot_row = tableau[row]
    value = pivot_row[column]
    if value != ONE:
        pivot_row[:] = [entry / value for entry in pivot_row]
    for index, other in enumerate(tableau):
        if index != row and other[column] != 0:
            factor = other[column]
            other[:] = [a - factor * b for a, b in zip(other, pivot_row)]
    if cost[column] != 0:
        factor = cost[column]
        cost[:] = [a - factor * b for a, b in zip(cost, pivot_row)]


def _phase_one(constraints: Sequence[LinearConstraint], dim: int) -> Optional[Tuple[Fraction, ...]]:
    """
    Minimize the sum of artificial variables; return a solution or None.

    Columns: x+ (dim), x- (dim), one slack per inequality, one artificial per row.
    """
    rows = len(constraints)
    slacks = sum(1 for c in constraints if c.relation is Relation.LE)
    structural = 2 * dim + slacks
    width = structural + rows

    tableau: List[List[Fraction]] = []
    slack_column = 2 * dim
    for index, constraint in enumerate(constraints):
        row = [ZERO] * (width + 1)
        for k, a in enumerate(constraint.coefficients):
            row[k] = a
            row[dim + k] = -a
        if constraint.relation is Relation.LE:
            row[slack_column] = ONE
            slack_column += 1
        row[width] = constraint.rhs
        if row[width] < 0:
            row = [-entry for entry in row]
        row[structural + index] = ONE
        tableau.append(row)

    basis = [structural + index for index in range(rows)]
    cost = [ZERO] * (width + 1)
    for row in tableau:
        for column in range(structural):
            cost[column] -= row[column]
        cost[width] -= row[width]

    while True:
        # Bland's rule: lowest-index improving column, lowest-index leaving variable.
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best_ratio = ZERO
        for index, row in enumerate(tableau):
            if row[entering] > 0:
                ratio = row[width] / row[entering]
                if (
                    leaving is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[index] < basis[leaving])
                ):
                    leaving, best_ratio = index, ratio
        if leaving is None:
            raise ConsistencyError("Phase-I objective is bounded below; no leaving row found")
        _pivot(tableau, cost, leaving, entering)
        basis[leaving] = entering

    if cost[width] != 0:
        return None

    values = [ZERO] * width
    for index, column in enumerate(basis):
        values[column] = tableau[index][width]
    return tuple(values[k] - values[dim + k] for k in range(dim))


def feasible(constraints: Sequence[LinearConstraint], dim: int) -> FeasibilityResult:
    """
    Decide exactly whether a linear system has a solution.

    Args:
        constraints: Equalities/inequalities, each with ``dim`` coefficients
        dim: Ambient dimension

    Returns:
        NONEMPTY with an exact rational witness, or EMPTY

    Raises:
        MalformedInputError: If coefficient lengths disagree with ``dim``
    """
    validate_coefficient_lengths([c.coefficients for c in constraints], dim)
    if not constraints:
        return FeasibilityResult(status=Status.NONEMPTY, witness=(ZERO,) * dim)

    witness = _phase_one(constraints, dim)
    if witness is None:
        return FeasibilityResult(status=Status.EMPTY)
    if not all(c.satisfied_by(witness) for c in constraints):
        raise ConsistencyError("Simplex witness does not satisfy the system")
    return FeasibilityResult(status=Status.NONEMPTY, witness=witness)


def intersect_sets(sets: Sequence[ConvexSet]) -> FeasibilityResult:
    """
    Decide whether the given sets have a common point.

    Raises:
        MalformedInputError: On an empty sequence or mixed dimensions
    """
    if not sets:
        raise MalformedInputError("The intersection of zero sets is undefined")
    dim = sets[0].dim
    if any(member.dim != dim for member in sets):
        raise MalformedInputError("All sets must share the same dimension")
    constraints = [c for member in sets for c in member.constraints]
    return feasible(constraints, dim)


def _normalize(row: Tuple[Fraction, ...], rhs: Fraction) -> Tuple[Tuple[Fraction, ...], Fraction]:
    leading = next((abs(a) for a in row if a != 0), None)
    if leading is None or leading == 1:
        return row, rhs
    return tuple(a / leading for a in row), rhs / leading


def fourier_motzkin_feasible(constraints: Sequence[LinearConstraint], dim: int) -> bool:
    """
    Independent feasibility oracle by Fourier-Motzkin elimination.

    Equalities are first used to substitute variables away; the remaining
    inequalities are projected one variable at a time. Only practical at
    test scale.
    """
    validate_coefficient_lengths([c.coefficients for c in constraints], dim)
    equalities = [(list(c.coefficients), c.rhs) for c in constraints if c.relation is Relation.EQ]
    inequalities = [(list(c.coefficients), c.rhs) for c in constraints if c.relation is Relation.LE]

    for k in range(dim):
        pivot = next((eq for eq in equalities if eq[0][k] != 0), None)
        if pivot is None:
            continue
        equalities.remove(pivot)
        p_row, p_rhs = pivot
        for system in (equalities, inequalities):
            for position, (row, rhs) in enumerate(system):
                if row[k] != 0:
                    factor = row[k] / p_row[k]
                    system[position] = (
                        [a - factor * b for a, b in zip(row, p_row)],
                        rhs - factor * p_rhs,
                    )
    if any(rhs != 0 for _, rhs in equalities):
        return False

    current: Dict[Tuple[Fraction, ...], Fraction] = {}
    for row, rhs in inequalities:
        key, value = _normalize(tuple(row), rhs)
        if key not in current or value < current[key]:
            current[key] = value

    for k in range(dim):
        positive = [(row, rhs) for row, rhs in current.items() if row[k] > 0]
        negative = [(row, rhs) for row, rhs in current.items() if row[k] < 0]
        projected: Dict[Tuple[Fraction, ...], Fraction] = {
            row: rhs for row, rhs in current.items() if row[k] == 0
        }
        for p_row, p_rhs in positive:
            for n_row, n_rhs in negative:
                scale_p, scale_n = -n_row[k], p_row[k]
                combined = tuple(scale_p * a + scale_n * b for a, b in zip(p_row, n_row))
                key, value = _normalize(combined, scale_p * p_rhs + scale_n * n_rhs)
                if key not in projected or value < projected[key]:
                    projected[key] = value
        zero_row = (ZERO,) * dim
        if zero_row in projected and projected[zero_row] < 0:
            return False
        current = projected
        logger.debug("Eliminated x%d: %d inequalities remain", k, len(current))

    return all(rhs >= 0 for rhs in current.values())


def is_general_position(hyperplanes: Sequence[ConvexSet]) -> bool:
    """
    Check that hyperplanes in R^d are in general position.

    Every d of them must have linearly independent normals (so they meet in
    exactly one point) and no d+1 of them may share a point. With fewer than d
    hyperplanes the normals of all of them must be independent.

    Raises:
        MalformedInputError: If an input is not a single nondegenerate equality
    """
    if not hyperplanes:
        return True
    d = hyperplanes[0].dim
    for member in hyperplanes:
        if not member.is_hyperplane:
            raise MalformedInputError("is_general_position accepts hyperplanes only")
        if member.dim != d:
            raise MalformedInputError("All hyperplanes must share the same dimension")

    normals = [member.constraints[0].coefficients for member in hyperplanes]
    augmented = [normal + (member.constraints[0].rhs,) for normal, member in zip(normals, hyperplanes)]

    size = min(len(hyperplanes), d)
    for subset in combinations(range(len(hyperplanes)), size):
        if matrix_rank([normals[i] for i in subset]) < size:
            return False
    # Normals of any d+1 already span R^d, so a common point exists iff [A|b] is singular.
    for subset in combinations(range(len(hyperplanes)), d + 1):
        if matrix_rank([augmented[i] for i in subset]) < d + 1:
            return False
    return True


def helly_consistent(family: Sequence[ConvexSet]) -> bool:
    """
    True when the family intersects exactly when all its (d+1)-tuples do.

    Families with at most d+1 members are trivially consistent.
    """
    if not family:
        return True
    d = family[0].dim
    if len(family) <= d + 1:
        return True
    whole = intersect_sets(family).is_nonempty
    tuples = all(
        intersect_sets([family[i] for i in subset]).is_nonempty
        for subset in combinations(range(len(family)), d + 1)
    )
    return whole == tuples
