"""Tests for hypergraph matchings and independent sets."""
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helly.generators import gen_random_hypergraph
from helly.hypergraph import (
    greedy_maximal_matching,
    independence_number_exact,
    is_independent,
    is_maximal,
    matching_number_exact,
    uncovered_vertices,
)
from helly.models import Hypergraph, Matching
from helly.utils.validation import MalformedInputError, ScaleLimitError

TRIANGLE = Hypergraph(n=3, r=2, edges=[(0, 1), (0, 2), (1, 2)])
TWO_TRIPLES = Hypergraph(n=6, r=3, edges=[(0, 1, 2), (3, 4, 5)])
COMPLETE_3_ON_7 = Hypergraph(n=7, r=3, edges=list(combinations(range(7), 3)))


class TestGreedyMatching:
    """Tests for greedy_maximal_matching."""

    def test_triangle(self):
        """Test that one edge of a triangle blocks the others."""
        matching = greedy_maximal_matching(TRIANGLE)
        assert matching.size == 1
        assert matching.edges == ((0, 1),)

    def test_edgeless(self):
        """Test that an edgeless hypergraph has the empty matching."""
        matching = greedy_maximal_matching(Hypergraph(n=4, r=2))
        assert matching.size == 0

    def test_disjoint_triples(self):
        """Test that disjoint edges are all taken."""
        assert greedy_maximal_matching(TWO_TRIPLES).size == 2

    def test_custom_order(self):
        """Test that the scan order decides which edge is kept."""
        matching = greedy_maximal_matching(TRIANGLE, order=[(1, 2), (0, 1), (0, 2)])
        assert matching.edges == ((1, 2),)

    def test_order_must_be_permutation(self):
        """Test that an order missing an edge is rejected."""
        with pytest.raises(MalformedInputError):
            greedy_maximal_matching(TRIANGLE, order=[(0, 1), (1, 2)])


class TestExactNumbers:
    """Tests for the exact matching and independence numbers."""

    def test_triangle(self):
        """Test nu = alpha = 1 on a triangle."""
        assert matching_number_exact(TRIANGLE) == 1
        assert independence_number_exact(TRIANGLE) == 1

    def test_edgeless(self):
        """Test nu = 0 and alpha = n without edges."""
        edgeless = Hypergraph(n=5, r=3)
        assert matching_number_exact(edgeless) == 0
        assert independence_number_exact(edgeless) == 5

    def test_complete_3_uniform_on_7(self):
        """Test nu = 2 and alpha = 2 on all 35 triples of 7 vertices."""
        assert len(COMPLETE_3_ON_7.edges) == 35
        assert matching_number_exact(COMPLETE_3_ON_7) == 2
        assert independence_number_exact(COMPLETE_3_ON_7) == 2

    def test_greedy_can_be_suboptimal(self):
        """Test that greedy may stop below nu on a path."""
        path = Hypergraph(n=4, r=2, edges=[(0, 1), (1, 2), (2, 3)])
        assert greedy_maximal_matching(path, order=[(1, 2), (0, 1), (2, 3)]).size == 1
        assert matching_number_exact(path) == 2

    def test_scale_limits(self):
        """Test the documented brute-force limits."""
        with pytest.raises(ScaleLimitError):
            independence_number_exact(Hypergraph(n=21, r=2))
        with pytest.raises(ScaleLimitError):
            matching_number_exact(Hypergraph(n=25, r=2))


class TestUncovered:
    """Tests for uncovered_vertices and maximality."""

    def test_triangle(self):
        """Test that M = {01} leaves {2}, which is independent."""
        matching = Matching(edges=[(0, 1)])
        free = uncovered_vertices(TRIANGLE, matching)
        assert free == frozenset({2})
        assert is_independent(TRIANGLE, free)

    def test_edgeless(self):
        """Test that the empty matching leaves every vertex."""
        assert uncovered_vertices(Hypergraph(n=3, r=2), Matching()) == frozenset({0, 1, 2})

    def test_maximality_required_for_independence(self):
        """Test that a non-maximal matching can leave an edge uncovered."""
        partial = Matching(edges=[(0, 1, 2)])
        free = uncovered_vertices(TWO_TRIPLES, partial)
        assert free == frozenset({3, 4, 5})
        assert not is_maximal(TWO_TRIPLES, partial)
        assert not is_independent(TWO_TRIPLES, free)
        full = Matching(edges=[(0, 1, 2), (3, 4, 5)])
        assert uncovered_vertices(TWO_TRIPLES, full) == frozenset()

    def test_foreign_edge_rejected(self):
        """Test that a matching edge must belong to the hypergraph."""
        with pytest.raises(MalformedInputError):
            uncovered_vertices(TRIANGLE, Matching(edges=[(0, 3)]))


class TestMatchingInequalities:
    """Property tests relating maximal matchings, nu and alpha."""

    @settings(max_examples=60, deadline=None)
    @given(
        n=st.integers(min_value=0, max_value=10),
        r=st.integers(min_value=2, max_value=3),
        seed=st.integers(min_value=0, max_value=10**6),
        density=st.sampled_from([0.1, 0.3, 0.6, 0.9]),
    )
    def test_maximal_matching_bounds(self, n, r, seed, density):
        """Test alpha >= n - r|M| and |M| <= nu <= r|M| for greedy M."""
        hypergraph = gen_random_hypergraph(n, r, seed, density)
        matching = greedy_maximal_matching(hypergraph)
        assert is_maximal(hypergraph, matching)
        free = uncovered_vertices(hypergraph, matching)
        assert is_independent(hypergraph, free)
        nu = matching_number_exact(hypergraph)
        alpha = independence_number_exact(hypergraph)
        assert alpha >= n - r * matching.size
        assert matching.size <= nu <= r * matching.size
