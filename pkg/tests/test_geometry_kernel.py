"""Tests for the exact feasibility kernel."""
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helly.generators import (
    RandomModel,
    SystemVariant,
    gen_general_position_hyperplanes,
    gen_random_classes,
    gen_random_system,
)
from helly.geometry_kernel import (
    feasible,
    fourier_motzkin_feasible,
    helly_consistent,
    intersect_sets,
    is_general_position,
    make_box,
    make_halfspace,
    make_hyperplane,
    make_whole_space,
)
from helly.models import ConvexSet, LinearConstraint, Relation, Status
from helly.utils.validation import MalformedInputError


def le(coefficients, rhs) -> LinearConstraint:
    return LinearConstraint(coefficients=tuple(coefficients), rhs=rhs)


def eq(coefficients, rhs) -> LinearConstraint:
    return LinearConstraint(coefficients=tuple(coefficients), rhs=rhs, relation=Relation.EQ)


class TestConstructors:
    """Tests for the set constructors."""

    def test_whole_space(self):
        """Test that R^3 has no constraints."""
        assert make_whole_space(3).constraints == ()

    def test_hyperplane(self):
        """Test that (1, 0) . x = 4 becomes a single equality in R^2."""
        plane = make_hyperplane((1, 0), 4)
        assert plane.dim == 2
        assert plane.is_hyperplane
        assert plane.constraints[0].rhs == 4

    def test_degenerate_hyperplane_rejected(self):
        """Test that a zero normal is rejected."""
        with pytest.raises(MalformedInputError):
            make_hyperplane((0, 0), 1)

    def test_halfspace_and_box(self):
        """Test that a box is the intersection of 2d halfspaces."""
        assert make_halfspace((1, -1), "1/2").relation is Relation.LE
        box = make_box((0, 1), (2, 3))
        assert len(box.constraints) == 4
        assert box.contains((Fraction(1), Fraction(3)))
        assert not box.contains((Fraction(3), Fraction(2)))

    def test_box_corner_mismatch(self):
        """Test that box corners must share a dimension."""
        with pytest.raises(MalformedInputError):
            make_box((0,), (1, 1))


class TestFeasible:
    """Tests for the simplex feasibility decision."""

    def test_disjoint_rays(self):
        """Test that x <= 1 and x >= 2 is empty."""
        result = feasible([le((1,), 1), le((-1,), -2)], 1)
        assert result.status is Status.EMPTY
        assert result.witness is None

    def test_empty_system_is_whole_space(self):
        """Test that no constraints yield the origin."""
        result = feasible([], 2)
        assert result.status is Status.NONEMPTY
        assert result.witness == (Fraction(0), Fraction(0))

    def test_unique_solution(self):
        """Test that x + y = 1, x - y = 0 has witness (1/2, 1/2)."""
        result = feasible([eq((1, 1), 1), eq((1, -1), 0)], 2)
        assert result.witness == (Fraction(1, 2), Fraction(1, 2))

    def test_negative_coordinates(self):
        """Test that witnesses may be negative (free variables)."""
        result = feasible([le((1, 0), -3), le((0, -1), 5)], 2)
        assert result.is_nonempty
        assert result.witness[0] <= -3
        assert result.witness[1] >= -5

    def test_degenerate_rows(self):
        """Test that 0 <= -1 is empty and 0 = 0 is harmless."""
        assert not feasible([le((0, 0), -1)], 2).is_nonempty
        assert feasible([eq((0, 0), 0), le((1, 1), 2)], 2).is_nonempty

    def test_wrong_coefficient_length(self):
        """Test that rows of the wrong length are rejected."""
        with pytest.raises(MalformedInputError):
            feasible([le((1,), 1)], 2)

    @settings(max_examples=200, deadline=None)
    @given(
        d=st.integers(min_value=1, max_value=3),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        variant=st.sampled_from(list(SystemVariant)),
    )
    def test_agrees_with_fourier_motzkin(self, d, seed, variant):
        """Test that simplex and elimination agree and witnesses are exact."""
        system = gen_random_system(d, seed, variant)
        result = feasible(system, d)
        assert result.is_nonempty == fourier_motzkin_feasible(system, d)
        if result.is_nonempty:
            assert all(c.satisfied_by(result.witness) for c in system)

    @settings(max_examples=100, deadline=None)
    @given(
        d=st.integers(min_value=1, max_value=3),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        variant=st.sampled_from(list(SystemVariant)),
    )
    def test_adding_constraints_keeps_empty(self, d, seed, variant):
        """Test that once a prefix of a system is empty every longer prefix is empty too."""
        system = gen_random_system(d, seed, variant)
        statuses = [feasible(system[:k], d).status for k in range(len(system) + 1)]
        assert statuses[0] is Status.NONEMPTY
        if Status.EMPTY in statuses:
            first = statuses.index(Status.EMPTY)
            assert all(status is Status.EMPTY for status in statuses[first:])


class TestFourierMotzkin:
    """Tests for the elimination oracle on its own."""

    def test_equality_substitution(self):
        """Test that inconsistent equalities are detected."""
        assert not fourier_motzkin_feasible([eq((1, 1), 1), eq((2, 2), 3)], 2)
        assert fourier_motzkin_feasible([eq((1, 1), 1), eq((2, 2), 2)], 2)

    def test_triangle(self):
        """Test a bounded triangle and an empty cut of it."""
        triangle = [le((-1, 0), 0), le((0, -1), 0), le((1, 1), 1)]
        assert fourier_motzkin_feasible(triangle, 2)
        assert not fourier_motzkin_feasible(triangle + [le((-1, -1), -2)], 2)


class TestIntersectSets:
    """Tests for intersect_sets."""

    def test_overlapping_intervals(self):
        """Test that [0, 2] and [1, 3] meet."""
        assert intersect_sets([make_box((0,), (2,)), make_box((1,), (3,))]).is_nonempty

    def test_whole_line_and_point(self):
        """Test that R and x = 5 meet exactly at 5."""
        result = intersect_sets([make_whole_space(1), make_hyperplane((1,), 5)])
        assert result.witness == (Fraction(5),)

    def test_three_generic_lines(self):
        """Test that three lines in general position have no common point."""
        lines = gen_general_position_hyperplanes(3, 2, seed=0)
        assert intersect_sets(lines).status is Status.EMPTY
        for pair in combinations(lines, 2):
            assert intersect_sets(pair).is_nonempty

    def test_empty_input_rejected(self):
        """Test that zero sets cannot be intersected."""
        with pytest.raises(MalformedInputError):
            intersect_sets([])

    def test_mixed_dimensions_rejected(self):
        """Test that all sets must share a dimension."""
        with pytest.raises(MalformedInputError):
            intersect_sets([make_whole_space(1), make_whole_space(2)])


class TestGeneralPosition:
    """Tests for is_general_position."""

    def test_distinct_points(self):
        """Test that distinct points on a line are in general position."""
        points = [make_hyperplane((1,), v) for v in (1, 2, 3)]
        assert is_general_position(points)

    def test_repeated_point(self):
        """Test that a repeated point is not."""
        assert not is_general_position([make_hyperplane((1,), 1), make_hyperplane((2,), 2)])

    def test_concurrent_lines(self):
        """Test that three lines through the origin are not."""
        lines = [make_hyperplane((1, 0), 0), make_hyperplane((0, 1), 0), make_hyperplane((1, 1), 0)]
        assert not is_general_position(lines)

    def test_parallel_lines(self):
        """Test that two parallel lines are not."""
        assert not is_general_position([make_hyperplane((1, 1), 0), make_hyperplane((2, 2), 1)])

    def test_rejects_non_hyperplanes(self):
        """Test that only hyperplanes are accepted."""
        with pytest.raises(MalformedInputError):
            is_general_position([make_box((0,), (1,))])

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_d_generic_hyperplanes_meet_in_a_point(self, d):
        """Test that any d generated hyperplanes meet and d+1 do not."""
        planes = gen_general_position_hyperplanes(d + 1, d, seed=d)
        assert intersect_sets(planes[:d]).is_nonempty
        assert not intersect_sets(planes).is_nonempty


class TestHellyConsistency:
    """Tests for the Helly equivalence on random families."""

    @pytest.mark.parametrize("model", list(RandomModel))
    @pytest.mark.parametrize("d", [1, 2])
    def test_random_families(self, d, model):
        """Test that a family intersects iff all its (d+1)-tuples do."""
        for seed in range(10):
            classes = gen_random_classes(d, [6] * (d + 1), model, seed)
            for members in classes.classes:
                assert helly_consistent(members)

    def test_small_family_is_trivially_consistent(self):
        """Test that families of at most d+1 sets are consistent."""
        assert helly_consistent([make_box((0,), (1,)), make_box((2,), (3,))])
        assert helly_consistent([])

    def test_whole_space_family(self):
        """Test that copies of R^d intersect."""
        family = [ConvexSet(dim=2) for _ in range(5)]
        assert intersect_sets(family).witness == (Fraction(0), Fraction(0))
        assert helly_consistent(family)
