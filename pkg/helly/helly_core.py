"""
Colorful fractional Helly machinery.

Counts intersecting colorful and monochromatic tuples, builds the hypergraphs
of non-intersecting tuples inside each color class, extracts a large
intersecting subfamily from maximal matchings, maximizes intersecting
subfamilies exactly at small scale, and decides every bound by exact rational
power comparison.
"""
import logging
import multiprocessing
from fractions import Fraction
from itertools import combinations, islice, product
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from helly.config import settings
from helly.generators import predicted_colorful_count, predicted_mono_count
from helly.geometry_kernel import feasible, intersect_sets
from helly.hypergraph import greedy_maximal_matching, uncovered_vertices
from helly.models.family import (
    ColorClasses,
    Extraction,
    IntersectionProfile,
    SubfamilyResult,
)
from helly.models.geometry import ConvexSet, LinearConstraint, Point
from helly.models.hypergraph import Hypergraph, Matching
from helly.models.report import (
    BoundValue,
    ConstructionCheck,
    ConstructionSpec,
    FractionalReport,
    Report,
    Verdict,
)
from helly.utils.rational import root_enclosure
from helly.utils.validation import (
    ConsistencyError,
    HypothesisViolationError,
    MalformedInputError,
    validate_alpha,
    validate_beta,
    validate_scale,
)

logger = logging.getLogger(__name__)

# Denominator of the rational enclosures reported for irrational bounds.
BOUND_RESOLUTION = 10**12
# Below this many tuples the worker pool costs more than it saves.
PARALLEL_THRESHOLD = 256
# Excluded members re-checked against Helly's theorem after branch-and-bound.
HELLY_SPOT_CHECKS = 3
HELLY_SPOT_CHECK_TUPLES = 500


# Tuple evaluation

def _tuple_intersects(sets: Tuple[ConvexSet, ...]) -> bool:
    return intersect_sets(sets).is_nonempty


def evaluate_tuples(tuples: Sequence[Tuple[ConvexSet, ...]], jobs: int = 1) -> List[bool]:
    """
    Decide every tuple, optionally in a worker pool.

    ``Pool.map`` preserves input order, so results never depend on scheduling.
    """
    if jobs <= 1 or len(tuples) < PARALLEL_THRESHOLD:
        return [_tuple_intersects(sets) for sets in tuples]
    chunksize = max(1, len(tuples) // (4 * jobs))
    with multiprocessing.Pool(processes=jobs) as pool:
        return pool.map(_tuple_intersects, tuples, chunksize=chunksize)


def _profile(flags: Sequence[bool]) -> IntersectionProfile:
    count = sum(1 for flag in flags if flag)
    total = len(flags)
    alpha = Fraction(count, total) if total else Fraction(0)
    return IntersectionProfile(intersecting_count=count, total_count=total, alpha=alpha)


def count_intersecting_monochromatic(
    family: Sequence[ConvexSet], d: int, jobs: int = 1
) -> IntersectionProfile:
    """
    Count intersecting (d+1)-tuples of a family, in lexicographic order.

    Raises:
        HypothesisViolationError: If the family has fewer than d+1 members
        MalformedInputError: If a member does not live in R^d
    """
    if len(family) < d + 1:
        raise HypothesisViolationError(
            f"The fractional Helly theorem needs at least d+1 = {d + 1} sets, got {len(family)}"
        )
    if any(member.dim != d for member in family):
        raise MalformedInputError(f"Every member must live in R^{d}")
    tuples = [
        tuple(family[i] for i in combo) for combo in combinations(range(len(family)), d + 1)
    ]
    profile = _profile(evaluate_tuples(tuples, jobs))
    logger.info(
        "Monochromatic: %d of %d tuples intersect",
        profile.intersecting_count,
        profile.total_count,
    )
    return profile


def count_intersecting_colorful(classes: ColorClasses, jobs: int = 1) -> IntersectionProfile:
    """Count intersecting colorful tuples, enumerated in mixed-radix order."""
    tuples = list(product(*classes.classes))
    profile = _profile(evaluate_tuples(tuples, jobs))
    logger.info(
        "Colorful: %d of %d tuples intersect (alpha = %s)",
        profile.intersecting_count,
        profile.total_count,
        profile.alpha,
    )
    return profile


def build_nonintersecting_hypergraphs(classes: ColorClasses, jobs: int = 1) -> Tuple[Hypergraph, ...]:
    """H_i: the (d+1)-uniform hypergraph of non-intersecting (d+1)-tuples of class i."""
    r = classes.d + 1
    hypergraphs = []
    for members in classes.classes:
        combos = list(combinations(range(len(members)), r))
        flags = evaluate_tuples([tuple(members[i] for i in combo) for combo in combos], jobs)
        edges = tuple(combo for combo, flag in zip(combos, flags) if not flag)
        hypergraphs.append(Hypergraph(n=len(members), r=r, edges=edges))
    return tuple(hypergraphs)


def colorful_helly_class(classes: ColorClasses) -> Optional[int]:
    """Index of the first color class whose whole family intersects, if any."""
    for index, members in enumerate(classes.classes):
        if intersect_sets(members).is_nonempty:
            return index
    return None


def matching_witness_tuples(
    classes: ColorClasses, matchings: Sequence[Matching]
) -> List[Tuple[int, ...]]:
    """
    One non-intersecting colorful tuple per combination of matching edges.

    Each edge of M_i is a non-intersecting (d+1)-tuple of class i, so by the
    colorful Helly theorem some colorful tuple drawn from the chosen edges is
    non-intersecting. Matching edges are disjoint, so the returned tuples are
    pairwise distinct and their number is the product of the matching sizes.
    """
    if len(matchings) != len(classes.classes):
        raise MalformedInputError("Expected one matching per color class")
    witnesses = []
    for chosen_edges in product(*(matching.edges for matching in matchings)):
        for colorful in product(*chosen_edges):
            sets = [classes.classes[i][v] for i, v in enumerate(colorful)]
            if not intersect_sets(sets).is_nonempty:
                witnesses.append(colorful)
                break
        else:
            raise ConsistencyError(
                f"Every colorful tuple drawn from edges {chosen_edges} intersects"
            )
    return witnesses


# Subfamilies

def _subfamily(
    class_index: int, members: Sequence[int], class_size: int, witness: Optional[Point]
) -> SubfamilyResult:
    members = tuple(sorted(members))
    return SubfamilyResult(
        class_index=class_index,
        members=members,
        size=len(members),
        class_size=class_size,
        witness=witness if members else None,
        beta_observed=Fraction(len(members), class_size) if class_size else Fraction(0),
    )


def _verified_candidate(
    class_index: int, members: Sequence[ConvexSet], free: Sequence[int], d: int
) -> Tuple[SubfamilyResult, bool]:
    """The uncovered set with an LP witness, shrunk only when it has at most d members."""
    n = len(members)
    if not free:
        return _subfamily(class_index, (), n, None), False
    result = intersect_sets([members[i] for i in free])
    if result.is_nonempty:
        return _subfamily(class_index, free, n, result.witness), False
    if len(free) > d:
        # Independent in H_i with at least d+1 members: Helly forces a common point.
        raise ConsistencyError(
            f"Uncovered set {tuple(free)} of class {class_index} is independent but not intersecting"
        )
    for size in range(len(free) - 1, 0, -1):
        for subset in combinations(free, size):
            result = intersect_sets([members[i] for i in subset])
            if result.is_nonempty:
                return _subfamily(class_index, subset, n, result.witness), True
    return _subfamily(class_index, (), n, None), True


def run_extraction(
    classes: ColorClasses,
    hypergraphs: Optional[Sequence[Hypergraph]] = None,
    jobs: int = 1,
) -> Extraction:
    """
    Constructive form of the lower-bound argument.

    1. build H_i, 2. take greedy maximal matchings M_i, 3. take the uncovered
    vertices of each M_i as a candidate, 4. keep the class whose verified
    candidate has the largest size / n_i (smallest index on ties). When every
    uncovered set intersects, as it must once it has d+1 members, this is the
    class minimizing |M_i| / n_i.
    """
    d = classes.d
    if hypergraphs is None:
        hypergraphs = build_nonintersecting_hypergraphs(classes, jobs)
    matchings = tuple(greedy_maximal_matching(h) for h in hypergraphs)
    ratios = tuple(Fraction(m.size, n) for m, n in zip(matchings, classes.sizes))
    uncovered = tuple(
        tuple(sorted(uncovered_vertices(h, m))) for h, m in zip(hypergraphs, matchings)
    )

    candidates = []
    shrunk_flags = []
    for index, (members, free) in enumerate(zip(classes.classes, uncovered)):
        candidate, shrunk = _verified_candidate(index, members, free, d)
        candidates.append(candidate)
        shrunk_flags.append(shrunk)

    chosen = max(
        range(len(candidates)), key=lambda i: (candidates[i].beta_observed, -i)
    )
    logger.info(
        "Extraction picked class %d: %d of %d members (|M| = %d)",
        chosen,
        candidates[chosen].size,
        classes.sizes[chosen],
        matchings[chosen].size,
    )
    return Extraction(
        hypergraphs=tuple(hypergraphs),
        matchings=matchings,
        ratios=ratios,
        uncovered=uncovered,
        candidates=tuple(candidates),
        chosen=candidates[chosen],
        shrunk=shrunk_flags[chosen],
    )


def extract_intersecting_subfamily(classes: ColorClasses, jobs: int = 1) -> SubfamilyResult:
    """Intersecting subfamily of some class, found through maximal matchings."""
    return run_extraction(classes, jobs=jobs).chosen


def _helly_spot_check(
    family: Sequence[ConvexSet], members: Sequence[int], excluded: Sequence[int], d: int
) -> None:
    """
    An excluded member must break the best subfamily through some (d+1)-tuple.

    Helly's theorem turns "best + j is empty" into "some d members of best
    together with j are empty".
    """
    if len(members) < d:
        return
    if sum(1 for _ in islice(combinations(members, d), HELLY_SPOT_CHECK_TUPLES + 1)) > HELLY_SPOT_CHECK_TUPLES:
        return
    for j in excluded[:HELLY_SPOT_CHECKS]:
        if intersect_sets([family[i] for i in members] + [family[j]]).is_nonempty:
            raise ConsistencyError(f"Member {j} extends the maximum intersecting subfamily")
        if not any(
            not intersect_sets([family[i] for i in subset] + [family[j]]).is_nonempty
            for subset in combinations(members, d)
        ):
            raise ConsistencyError(
                f"Member {j} meets every {d}-subset of the maximum but not all of it"
            )


def max_intersecting_subfamily_exact(
    family: Sequence[ConvexSet],
    class_index: int = 0,
    max_n: Optional[int] = None,
) -> SubfamilyResult:
    """
    Maximum intersecting subfamily by branch-and-bound.

    Whole-space members are always included. Pairwise-disjoint members are
    never combined, a branch is cut once it cannot beat the incumbent, and the
    current witness is reused whenever it already lies in the next member.

    Raises:
        ScaleLimitError: If the family is larger than ``max_n`` (default from settings)
    """
    limit = settings.max_exact_n if max_n is None else max_n
    validate_scale("exact maximum intersecting subfamily", len(family), limit)
    n = len(family)
    if n == 0:
        return _subfamily(class_index, (), 0, None)
    d = family[0].dim

    whole = [i for i, member in enumerate(family) if member.is_whole_space]
    candidates = [
        i for i, member in enumerate(family)
        if not member.is_whole_space and intersect_sets([member]).is_nonempty
    ]
    conflicts: Dict[int, Set[int]] = {i: set() for i in candidates}
    for i, j in combinations(candidates, 2):
        if not intersect_sets([family[i], family[j]]).is_nonempty:
            conflicts[i].add(j)
            conflicts[j].add(i)
    candidates.sort(key=lambda i: (len(conflicts[i]), i))

    origin: Point = (Fraction(0),) * d
    best_members: List[int] = []
    best_witness: Point = origin

    def search(
        position: int, chosen: List[int], constraints: List[LinearConstraint], witness: Point
    ) -> None:
        nonlocal best_members, best_witness
        if len(chosen) > len(best_members):
            best_members, best_witness = list(chosen), witness
        if len(chosen) + len(candidates) - position <= len(best_members):
            return
        index = candidates[position]
        member = family[index]
        if conflicts[index].isdisjoint(chosen):
            extended: Optional[Point] = None
            if member.contains(witness):
                extended = witness
            else:
                result = feasible(constraints + list(member.constraints), d)
                if result.is_nonempty:
                    extended = result.witness
            if extended is not None:
                chosen.append(index)
                search(position + 1, chosen, constraints + list(member.constraints), extended)
                chosen.pop()
        search(position + 1, chosen, constraints, witness)

    search(0, [], [], origin)

    members = sorted(whole + best_members)
    member_set = set(members)
    excluded = [i for i in range(n) if i not in member_set]
    _helly_spot_check(family, members, excluded, d)
    logger.debug("Exact maximum for class %d: %d of %d", class_index, len(members), n)
    return _subfamily(class_index, members, n, best_witness if members else None)


# Bounds

def _check_arguments(beta: Fraction, alpha: Fraction, d: int) -> None:
    validate_alpha(alpha)
    validate_beta(beta)
    if d < 1:
        raise MalformedInputError(f"Dimension must be positive, got {d}")


def _second_term_holds(beta: Fraction, alpha: Fraction, d: int) -> bool:
    """beta >= 1-(d+1)(1-alpha)^(1/(d+1)), valid for any alpha, beta in [0, 1]."""
    return ((1 - beta) / (d + 1)) ** (d + 1) <= 1 - alpha


def beta_lower_bound_holds(beta_obs: Fraction, alpha: Fraction, d: int) -> bool:
    """
    Decide beta_obs >= max{alpha/(d+1), 1-(d+1)(1-alpha)^(1/(d+1))} exactly.

    The root term is compared through ((1-beta)/(d+1))^(d+1) <= 1-alpha.
    """
    _check_arguments(beta_obs, alpha, d)
    return beta_obs >= alpha / (d + 1) and _second_term_holds(beta_obs, alpha, d)


def beta_upper_bound_holds(beta: Fraction, alpha: Fraction, d: int) -> bool:
    """Decide beta <= 1-(1-alpha)^(1/(d+1)) via (1-beta)^(d+1) >= 1-alpha."""
    _check_arguments(beta, alpha, d)
    return (1 - beta) ** (d + 1) >= 1 - alpha


def fractional_bound_holds(beta: Fraction, alpha: Fraction, d: int) -> bool:
    """Decide beta >= 1-(1-alpha)^(1/(d+1)) via (1-beta)^(d+1) <= 1-alpha."""
    _check_arguments(beta, alpha, d)
    return (1 - beta) ** (d + 1) <= 1 - alpha


def linear_bound_holds(beta: Fraction, alpha: Fraction, d: int) -> bool:
    """Decide beta >= alpha/(d+1)."""
    _check_arguments(beta, alpha, d)
    return beta >= alpha / (d + 1)


def extraction_bound_holds(size: int, class_size: int, alpha: Fraction, d: int) -> bool:
    """Decide size >= class_size * (1-(d+1)(1-alpha)^(1/(d+1)))."""
    if class_size == 0:
        return True
    return _second_term_holds(Fraction(size, class_size), alpha, d)


def gap_within(beta_obs: Fraction, alpha: Fraction, d: int, n: int) -> bool:
    """Decide beta_obs - (1-(1-alpha)^(1/(d+1))) <= (d+1)/n."""
    base = 1 - beta_obs + Fraction(d + 1, n)
    return base >= 0 and base ** (d + 1) >= 1 - alpha


def lower_bound_value(alpha: Fraction, d: int) -> BoundValue:
    """max{alpha/(d+1), 1-(d+1)(1-alpha)^(1/(d+1))}, clamped at 0."""
    k = d + 1
    first = alpha / k
    root_low, root_high = root_enclosure(1 - alpha, k, BOUND_RESOLUTION)
    lower = max(first, 1 - k * root_high, Fraction(0))
    upper = max(first, 1 - k * root_low, Fraction(0))
    return BoundValue(
        alpha=alpha,
        d=d,
        expression=f"max({alpha}/{k}, 1-{k}*({1 - alpha})^(1/{k}))",
        exact=lower if lower == upper else None,
        lower=lower,
        upper=upper,
    )


def upper_bound_value(alpha: Fraction, d: int) -> BoundValue:
    """1-(1-alpha)^(1/(d+1)); also the sharp monochromatic fractional Helly value."""
    k = d + 1
    root_low, root_high = root_enclosure(1 - alpha, k, BOUND_RESOLUTION)
    return BoundValue(
        alpha=alpha,
        d=d,
        expression=f"1-({1 - alpha})^(1/{k})",
        exact=1 - root_low if root_low == root_high else None,
        lower=1 - root_high,
        upper=1 - root_low,
    )


def fractional_bound_value(alpha: Fraction, d: int) -> BoundValue:
    """Sharp fractional Helly value 1-(1-alpha)^(1/(d+1)) for a single family."""
    return upper_bound_value(alpha, d)


# End-to-end verification

def verify_theorem(
    classes: ColorClasses,
    max_exact_n: Optional[int] = None,
    jobs: int = 1,
    construction: Optional[ConstructionSpec] = None,
    invocation: Optional[Dict[str, Any]] = None,
) -> Report:
    """
    Count, extract, maximize and check every bound for a colorful instance.

    Exact maxima are computed when every class has at most ``max_exact_n``
    members; otherwise beta_observed comes from the extraction, which is a
    lower bound for the true maximum.
    """
    limit = settings.max_exact_n if max_exact_n is None else max_exact_n
    d = classes.d
    profile = count_intersecting_colorful(classes, jobs)
    alpha = profile.alpha
    extraction = run_extraction(classes, jobs=jobs)
    chosen = extraction.chosen
    extraction_ok = extraction_bound_holds(chosen.size, chosen.class_size, alpha, d)

    exact = all(size <= limit for size in classes.sizes)
    class_maxima: Optional[Tuple[SubfamilyResult, ...]] = None
    within: Optional[bool] = None
    if exact:
        class_maxima = tuple(
            max_intersecting_subfamily_exact(members, class_index=index, max_n=limit)
            for index, members in enumerate(classes.classes)
        )
        best = max(
            range(len(class_maxima)), key=lambda i: (class_maxima[i].beta_observed, -i)
        )
        beta_observed = class_maxima[best].beta_observed
        within = chosen.size <= class_maxima[chosen.class_index].size
    else:
        logger.warning(
            "Class sizes %s exceed max_exact_n=%d; beta_observed comes from the extraction",
            classes.sizes,
            limit,
        )
        best = chosen.class_index
        beta_observed = chosen.beta_observed

    vacuous = alpha == 0
    if vacuous:
        lower_bound = None
        upper_bound = None
        lower_ok = True
    else:
        lower_bound = lower_bound_value(alpha, d)
        upper_bound = upper_bound_value(alpha, d)
        lower_ok = beta_lower_bound_holds(beta_observed, alpha, d)

    check = None
    if construction is not None:
        predicted = predicted_colorful_count(construction.n, construction.beta, construction.d)
        expected_max = construction.floor_beta_n
        check = ConstructionCheck(
            kind="colorful",
            spec=construction,
            predicted_count=predicted,
            observed_count=profile.intersecting_count,
            count_matches=predicted == profile.intersecting_count,
            expected_class_max=expected_max,
            class_max_matches=(
                all(result.size == expected_max for result in class_maxima)
                if class_maxima is not None
                else None
            ),
            upper_bound_holds=None if vacuous else beta_upper_bound_holds(beta_observed, alpha, d),
            gap_within=gap_within(beta_observed, alpha, d, construction.n),
        )

    passed = lower_ok and extraction_ok and within is not False
    if check is not None:
        passed = passed and check.count_matches and check.class_max_matches is not False
        passed = passed and bool(check.gap_within)

    return Report(
        invocation=invocation,
        d=d,
        sizes=classes.sizes,
        profile=profile,
        extraction=extraction,
        extraction_bound_holds=extraction_ok,
        exact=exact,
        class_maxima=class_maxima,
        extraction_within_exact=within,
        beta_observed=beta_observed,
        beta_class_index=best,
        lower_bound=lower_bound,
        lower_bound_holds=lower_ok,
        vacuous=vacuous,
        upper_bound=upper_bound,
        construction=check,
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )


def verify_fractional(
    family: Sequence[ConvexSet],
    max_exact_n: Optional[int] = None,
    jobs: int = 1,
    construction: Optional[ConstructionSpec] = None,
    invocation: Optional[Dict[str, Any]] = None,
) -> FractionalReport:
    """Monochromatic counterpart of verify_theorem (fractional Helly bounds)."""
    if not family:
        raise MalformedInputError("The family is empty")
    limit = settings.max_exact_n if max_exact_n is None else max_exact_n
    d = family[0].dim
    profile = count_intersecting_monochromatic(family, d, jobs)
    alpha = profile.alpha

    exact = len(family) <= limit
    maximum = None
    beta_observed = None
    linear_ok = None
    sharp = None
    sharp_ok = None
    if exact:
        maximum = max_intersecting_subfamily_exact(family, max_n=limit)
        beta_observed = maximum.beta_observed
        if alpha > 0:
            linear_ok = linear_bound_holds(beta_observed, alpha, d)
            sharp = fractional_bound_value(alpha, d)
            sharp_ok = fractional_bound_holds(beta_observed, alpha, d)

    check = None
    if construction is not None:
        predicted = predicted_mono_count(construction.n, construction.beta, construction.d)
        # floor(beta n)-(d+1) copies of R^d plus any d of the hyperplanes.
        expected_max = construction.floor_beta_n - 1
        check = ConstructionCheck(
            kind="mono",
            spec=construction,
            predicted_count=predicted,
            observed_count=profile.intersecting_count,
            count_matches=predicted == profile.intersecting_count,
            expected_class_max=expected_max,
            class_max_matches=None if maximum is None else maximum.size == expected_max,
        )

    passed = linear_ok is not False and sharp_ok is not False
    if check is not None:
        passed = passed and check.count_matches and check.class_max_matches is not False
    return FractionalReport(
        invocation=invocation,
        d=d,
        n=len(family),
        profile=profile,
        exact=exact,
        maximum=maximum,
        beta_observed=beta_observed,
        linear_bound_holds=linear_ok,
        sharp_bound=sharp,
        sharp_bound_holds=sharp_ok,
        construction=check,
        verdict=Verdict.PASS if passed else Verdict.FAIL,
    )
