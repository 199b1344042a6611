"""Tests for counting, extraction, exact maximization and bounds."""
from fractions import Fraction

import pytest

from helly.generators import (
    RandomModel,
    construction_spec,
    gen_colorful_helly_instance,
    gen_colorful_helly_split_instance,
    gen_construction_colorful,
    gen_example_monochromatic,
    gen_general_position_hyperplanes,
    gen_random_classes,
)
from helly.geometry_kernel import intersect_sets, make_box, make_hyperplane, make_whole_space
from helly.helly_core import (
    beta_lower_bound_holds,
    beta_upper_bound_holds,
    build_nonintersecting_hypergraphs,
    colorful_helly_class,
    count_intersecting_colorful,
    count_intersecting_monochromatic,
    extract_intersecting_subfamily,
    extraction_bound_holds,
    fractional_bound_holds,
    fractional_bound_value,
    gap_within,
    linear_bound_holds,
    lower_bound_value,
    matching_witness_tuples,
    max_intersecting_subfamily_exact,
    run_extraction,
    upper_bound_value,
    verify_fractional,
    verify_theorem,
)
from helly.hypergraph import is_maximal
from helly.models import ColorClasses, Verdict
from helly.utils.validation import HypothesisViolationError, MalformedInputError, ScaleLimitError


def interval(lo, hi):
    return make_box((lo,), (hi,))


def point(value):
    return make_hyperplane((1,), value)


def interval2(lo, hi):
    return make_box((lo, lo), (hi, hi))


class TestMonochromaticCount:
    """Tests for count_intersecting_monochromatic."""

    def test_pairwise_overlapping_intervals(self):
        """Test that three overlapping intervals give 3/3."""
        profile = count_intersecting_monochromatic([interval(0, 2), interval(1, 3), interval(1, 2)], 1)
        assert (profile.intersecting_count, profile.total_count, profile.alpha) == (3, 3, 1)

    def test_disjoint_intervals(self):
        """Test that three disjoint intervals give 0/3."""
        profile = count_intersecting_monochromatic([interval(0, 1), interval(2, 3), interval(4, 5)], 1)
        assert profile.intersecting_count == 0
        assert profile.alpha == 0

    def test_monochromatic_construction_count(self):
        """Test the d=2, n=10, beta=1/2 construction has 64 intersecting triples."""
        family = gen_example_monochromatic(2, 10, "1/2", seed=0)
        profile = count_intersecting_monochromatic(family, 2)
        assert profile.intersecting_count == 64
        assert profile.total_count == 120

    def test_too_few_sets(self):
        """Test that fewer than d+1 sets violate the hypothesis."""
        with pytest.raises(HypothesisViolationError):
            count_intersecting_monochromatic([interval(0, 1), interval(0, 1)], 2)

    def test_wrong_dimension(self):
        """Test that members must live in R^d."""
        with pytest.raises(MalformedInputError):
            count_intersecting_monochromatic([interval(0, 1), interval(0, 1), make_whole_space(2)], 1)


class TestColorfulCount:
    """Tests for count_intersecting_colorful."""

    def test_identical_singletons(self):
        """Test that two copies of [0, 1] give 1/1."""
        classes = ColorClasses(d=1, classes=((interval(0, 1),), (interval(0, 1),)))
        profile = count_intersecting_colorful(classes)
        assert (profile.intersecting_count, profile.total_count) == (1, 1)

    def test_disjoint_singletons(self):
        """Test that [0, 1] and [2, 3] give 0/1."""
        classes = ColorClasses(d=1, classes=((interval(0, 1),), (interval(2, 3),)))
        assert count_intersecting_colorful(classes).alpha == 0

    def test_colorful_construction_count(self):
        """Test the d=1, n=4, beta=1/2 construction has 4^2 - 3^2 = 7 intersecting pairs."""
        classes = gen_construction_colorful(1, 4, "1/2", seed=0)
        profile = count_intersecting_colorful(classes)
        assert profile.intersecting_count == 7
        assert profile.total_count == 16

    def test_parallel_matches_serial(self):
        """Test that a worker pool gives the same profile as a serial scan."""
        classes = gen_random_classes(2, [7, 7, 7], RandomModel.MIXED, seed=3)
        assert count_intersecting_colorful(classes, jobs=2) == count_intersecting_colorful(classes, jobs=1)


class TestNonintersectingHypergraphs:
    """Tests for build_nonintersecting_hypergraphs."""

    def test_whole_space_class_is_edgeless(self):
        """Test that copies of R^d never form an edge."""
        classes = ColorClasses(d=1, classes=((make_whole_space(1),) * 3, (make_whole_space(1),) * 2))
        hypergraphs = build_nonintersecting_hypergraphs(classes)
        assert all(h.edges == () for h in hypergraphs)

    def test_distinct_points_form_all_pairs(self):
        """Test that three distinct points give all three pairs."""
        classes = ColorClasses(d=1, classes=((point(1), point(2), point(3)), (point(1),)))
        hypergraphs = build_nonintersecting_hypergraphs(classes)
        assert hypergraphs[0].edges == ((0, 1), (0, 2), (1, 2))
        assert hypergraphs[1].edges == ()

    def test_generic_lines_form_all_triples(self):
        """Test that four generic lines give all four triples."""
        lines = gen_general_position_hyperplanes(4, 2, seed=5)
        classes = ColorClasses(d=2, classes=(lines, (make_whole_space(2),), (make_whole_space(2),)))
        assert len(build_nonintersecting_hypergraphs(classes)[0].edges) == 4


class TestExtraction:
    """Tests for the matching-based extraction."""

    def test_all_colorful_tuples_intersect(self):
        """Test that an alpha = 1 instance yields a whole intersecting class."""
        classes = gen_colorful_helly_instance(2, [4, 5, 3], seed=11)
        assert count_intersecting_colorful(classes).alpha == 1
        result = extract_intersecting_subfamily(classes)
        assert result.size == classes.sizes[result.class_index]
        assert result.beta_observed == 1

    def test_construction_meets_bound(self):
        """Test the extraction bound on the d=1, n=6, beta=1/2 construction."""
        classes = gen_construction_colorful(1, 6, "1/2", seed=2)
        alpha = count_intersecting_colorful(classes).alpha
        extraction = run_extraction(classes)
        chosen = extraction.chosen
        assert extraction_bound_holds(chosen.size, chosen.class_size, alpha, 1)
        members = classes.classes[chosen.class_index]
        assert all(members[i].contains(chosen.witness) for i in chosen.members)
        for hypergraph, matching in zip(extraction.hypergraphs, extraction.matchings):
            assert is_maximal(hypergraph, matching)

    def test_whole_space_classes(self):
        """Test that copies of R^d give a full class with the origin as witness."""
        classes = ColorClasses(d=2, classes=((make_whole_space(2),) * 2,) * 3)
        result = extract_intersecting_subfamily(classes)
        assert result.class_index == 0
        assert result.members == (0, 1)
        assert result.witness == (Fraction(0), Fraction(0))

    def test_small_uncovered_set_is_shrunk(self):
        """Test that an uncovered set of at most d members is shrunk until it intersects."""
        classes = ColorClasses(
            d=2,
            classes=(
                (interval2(0, 1), interval2(5, 6)),
                (interval2(0, 1), interval2(5, 6)),
                (interval2(0, 1), interval2(5, 6)),
            ),
        )
        extraction = run_extraction(classes)
        assert extraction.shrunk
        assert extraction.chosen.size == 1
        assert extraction.chosen.beta_observed == Fraction(1, 2)

    def test_matching_witness_tuples(self):
        """Test one distinct non-intersecting colorful tuple per edge combination."""
        classes = gen_construction_colorful(1, 6, "1/2", seed=4)
        extraction = run_extraction(classes)
        witnesses = matching_witness_tuples(classes, extraction.matchings)
        expected = 1
        for matching in extraction.matchings:
            expected *= matching.size
        assert len(witnesses) == expected == len(set(witnesses))
        for colorful in witnesses:
            sets = [classes.classes[i][v] for i, v in enumerate(colorful)]
            assert not intersect_sets(sets).is_nonempty
        assert count_intersecting_colorful(classes).nonintersecting_count >= expected


class TestColorfulHelly:
    """Tests for the colorful Helly harness."""

    @pytest.mark.parametrize("d", [1, 2])
    def test_some_class_intersects(self, d):
        """Test that an alpha = 1 instance has a fully intersecting class."""
        for seed in range(5):
            classes = gen_colorful_helly_instance(d, [3] * (d + 1), seed)
            index = colorful_helly_class(classes)
            assert index is not None
            assert intersect_sets(classes.classes[index]).is_nonempty

    @pytest.mark.parametrize("d,container", [(1, 0), (1, 1), (2, 1), (2, 2)])
    def test_only_container_intersects(self, d, container):
        """Test that the harness finds the one intersecting class when the others are disjoint hyperplanes."""
        classes = gen_colorful_helly_split_instance(d, [3] * (d + 1), seed=4, container=container)
        assert count_intersecting_colorful(classes).alpha == 1
        assert colorful_helly_class(classes) == container

    def test_extraction_takes_container(self):
        """Test that the extraction keeps every member of the container class."""
        classes = gen_colorful_helly_split_instance(1, [4, 5], seed=2, container=1)
        chosen = run_extraction(classes).chosen
        assert (chosen.class_index, chosen.size, chosen.class_size) == (1, 5, 5)
        assert chosen.beta_observed == 1

    def test_no_class_intersects(self):
        """Test that None is returned when no class intersects as a whole."""
        classes = ColorClasses(
            d=1, classes=((interval(0, 1), interval(2, 3)), (interval(0, 1), interval(2, 3)))
        )
        assert colorful_helly_class(classes) is None


class TestExactMaximum:
    """Tests for max_intersecting_subfamily_exact."""

    def test_intervals(self):
        """Test that [0, 2] and [1, 3] form the maximum, not [5, 6]."""
        result = max_intersecting_subfamily_exact([interval(0, 2), interval(1, 3), interval(5, 6)])
        assert result.members == (0, 1)
        assert result.size == 2
        assert result.beta_observed == Fraction(2, 3)

    def test_whole_space_copies(self):
        """Test that k copies of R^d all intersect."""
        result = max_intersecting_subfamily_exact([make_whole_space(3)] * 4)
        assert result.size == 4

    @pytest.mark.parametrize("d,n", [(2, 6), (2, 10)])
    def test_construction_class_maximum(self, d, n):
        """Test that every construction class has maximum floor(beta n)."""
        classes = gen_construction_colorful(d, n, "1/2", seed=1)
        for index, members in enumerate(classes.classes):
            result = max_intersecting_subfamily_exact(members, class_index=index)
            assert result.size == n // 2
            assert all(members[i].contains(result.witness) for i in result.members)

    def test_empty_members_are_skipped(self):
        """Test that empty sets never enter the maximum."""
        empty = make_box((1,), (0,))
        result = max_intersecting_subfamily_exact([empty, interval(0, 1)])
        assert result.members == (1,)

    def test_all_empty(self):
        """Test that a family of empty sets has maximum zero and no witness."""
        empty = make_box((1,), (0,))
        result = max_intersecting_subfamily_exact([empty, empty])
        assert result.size == 0
        assert result.witness is None

    def test_scale_limit(self):
        """Test that families beyond max_n are refused."""
        with pytest.raises(ScaleLimitError):
            max_intersecting_subfamily_exact([make_whole_space(1)] * 6, max_n=5)

    @pytest.mark.parametrize("model", list(RandomModel))
    def test_beats_extraction(self, model):
        """Test that the exact maximum is at least the extracted candidate."""
        for seed in range(5):
            classes = gen_random_classes(1, [6, 6], model, seed)
            extraction = run_extraction(classes)
            for candidate, members in zip(extraction.candidates, classes.classes):
                best = max_intersecting_subfamily_exact(members, class_index=candidate.class_index)
                assert best.size >= candidate.size


class TestBounds:
    """Tests for exact bound values and comparisons."""

    def test_alpha_one(self):
        """Test that alpha = 1 forces beta = 1."""
        assert lower_bound_value(Fraction(1), 2).exact == 1
        assert beta_lower_bound_holds(Fraction(1), Fraction(1), 2)
        assert not beta_lower_bound_holds(Fraction(99, 100), Fraction(1), 1)

    def test_first_term_dominates(self):
        """Test d=1, alpha=3/4 gives bound 3/8."""
        bound = lower_bound_value(Fraction(3, 4), 1)
        assert bound.exact == Fraction(3, 8)
        assert bound.lower == bound.upper == Fraction(3, 8)

    def test_second_term_dominates(self):
        """Test d=1, alpha=35/36 gives bound 2/3."""
        assert lower_bound_value(Fraction(35, 36), 1).exact == Fraction(2, 3)
        assert beta_lower_bound_holds(Fraction(2, 3), Fraction(35, 36), 1)
        assert not beta_lower_bound_holds(Fraction(13, 20), Fraction(35, 36), 1)

    def test_irrational_root_below_first_term(self):
        """Test that the value stays exact when the irrational term is dominated."""
        bound = lower_bound_value(Fraction(1, 2), 1)
        assert bound.exact == Fraction(1, 4)

    def test_irrational_upper_bound(self):
        """Test that 1 - sqrt(1/2) is reported as a tight enclosure."""
        bound = upper_bound_value(Fraction(1, 2), 1)
        assert bound.exact is None
        assert bound.upper - bound.lower == Fraction(1, 10**12)
        assert (1 - bound.upper) ** 2 < Fraction(1, 2) < (1 - bound.lower) ** 2
        assert fractional_bound_value(Fraction(1, 2), 1) == bound

    def test_construction_values(self):
        """Test the d=1, n=8, beta=1/2 quantities."""
        alpha = Fraction(39, 64)
        assert lower_bound_value(alpha, 1).exact == Fraction(39, 128)
        assert upper_bound_value(alpha, 1).exact == Fraction(3, 8)
        assert beta_lower_bound_holds(Fraction(1, 2), alpha, 1)
        assert not beta_lower_bound_holds(Fraction(1, 4), alpha, 1)
        assert beta_upper_bound_holds(Fraction(3, 8), alpha, 1)
        assert not beta_upper_bound_holds(Fraction(1, 2), alpha, 1)
        assert gap_within(Fraction(1, 2), alpha, 1, 8)
        assert not gap_within(Fraction(1), alpha, 1, 100)

    def test_fractional_bounds(self):
        """Test the sharp and linear monochromatic bounds."""
        alpha = Fraction(39, 64)
        assert fractional_bound_holds(Fraction(3, 8), alpha, 1)
        assert not fractional_bound_holds(Fraction(1, 4), alpha, 1)
        assert linear_bound_holds(Fraction(39, 128), alpha, 1)
        assert not linear_bound_holds(Fraction(1, 4), alpha, 1)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_lower_bound_monotone_in_alpha(self, d):
        """Test that any beta clearing the bound at alpha also clears it at every smaller alpha."""
        alphas = [Fraction(k, 24) for k in range(1, 25)]
        betas = [Fraction(k, 30) for k in range(31)]
        for beta in betas:
            held = [beta_lower_bound_holds(beta, alpha, d) for alpha in alphas]
            assert held == sorted(held, reverse=True)

    def test_invalid_alpha(self):
        """Test that alpha = 0 is outside the bound's domain."""
        with pytest.raises(MalformedInputError):
            beta_lower_bound_holds(Fraction(1, 2), Fraction(0), 1)


class TestVerifyTheorem:
    """Tests for the end-to-end colorful verification."""

    def test_whole_space_classes_pass(self):
        """Test that copies of R^d give alpha = 1, beta = 1 and PASS."""
        classes = ColorClasses(d=2, classes=((make_whole_space(2),) * 3,) * 3)
        report = verify_theorem(classes)
        assert report.profile.alpha == 1
        assert report.beta_observed == 1
        assert report.verdict is Verdict.PASS
        assert report.model_dump(mode="json")["beta_observed"] == "1/1"

    def test_construction_report(self):
        """Test the d=1, n=8, beta=1/2 construction end to end."""
        spec = construction_spec(1, 8, "1/2", seed=0)
        classes = gen_construction_colorful(1, 8, "1/2", seed=0)
        report = verify_theorem(classes, construction=spec)
        assert report.profile.alpha == Fraction(39, 64)
        assert report.beta_observed == Fraction(1, 2)
        assert report.lower_bound.exact == Fraction(39, 128)
        assert report.exact
        assert report.extraction_within_exact
        check = report.construction
        assert check.count_matches and check.observed_count == 39
        assert check.class_max_matches
        assert check.upper_bound_holds is False
        assert check.gap_within
        assert report.verdict is Verdict.PASS

    def test_alpha_zero_is_vacuous(self):
        """Test that alpha = 0 passes vacuously without a bound."""
        classes = ColorClasses(d=1, classes=((interval(0, 1),), (interval(2, 3),)))
        report = verify_theorem(classes)
        assert report.vacuous
        assert report.lower_bound is None
        assert report.verdict is Verdict.PASS

    def test_out_of_scale_uses_extraction(self):
        """Test that beta comes from the extraction when classes are too large."""
        classes = gen_construction_colorful(1, 8, "1/2", seed=0)
        report = verify_theorem(classes, max_exact_n=3)
        assert not report.exact
        assert report.class_maxima is None
        assert report.beta_observed == report.extraction.chosen.beta_observed
        assert report.verdict is Verdict.PASS

    @pytest.mark.parametrize("model", list(RandomModel))
    def test_random_instances_pass(self, model):
        """Test the lower bound on a handful of random instances."""
        for seed in range(4):
            classes = gen_random_classes(1, [5, 6], model, seed)
            report = verify_theorem(classes)
            assert report.verdict is Verdict.PASS, report.model_dump_json()


class TestVerifyFractional:
    """Tests for the monochromatic verification."""

    def test_line_construction(self):
        """Test d=1, n=6, beta=1/2: 5 of 15 pairs intersect, maximum 2."""
        spec = construction_spec(1, 6, "1/2", seed=0)
        family = gen_example_monochromatic(1, 6, "1/2", seed=0)
        report = verify_fractional(family, construction=spec)
        assert report.profile.alpha == Fraction(1, 3)
        assert report.maximum.size == 2
        assert report.linear_bound_holds
        assert report.sharp_bound_holds
        assert report.construction.count_matches
        assert report.construction.class_max_matches
        assert report.verdict is Verdict.PASS

    def test_plane_construction(self):
        """Test d=2, n=10, beta=1/2: alpha = 8/15 and maximum 4."""
        family = gen_example_monochromatic(2, 10, "1/2", seed=0)
        report = verify_fractional(family)
        assert report.profile.alpha == Fraction(8, 15)
        assert report.maximum.size == 4
        assert report.verdict is Verdict.PASS

    def test_empty_family(self):
        """Test that an empty family is rejected."""
        with pytest.raises(MalformedInputError):
            verify_fractional([])
