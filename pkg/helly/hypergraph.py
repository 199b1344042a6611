"""Matchings and independent sets of uniform hypergraphs."""
import logging
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set

from helly.config import MAX_EXACT_INDEPENDENCE_N, MAX_EXACT_MATCHING_N
from helly.models.hypergraph import Edge, Hypergraph, Matching
from helly.utils.validation import MalformedInputError, validate_scale

logger = logging.getLogger(__name__)


def greedy_maximal_matching(
    hypergraph: Hypergraph, order: Optional[Sequence[Edge]] = None
) -> Matching:
    """
    Scan edges in ``order`` and keep every edge disjoint from those kept so far.

    The result is maximal: every edge of the hypergraph meets a chosen edge.

    Args:
        hypergraph: The hypergraph
        order: A permutation of the edges; lexicographic order when omitted

    Returns:
        A maximal matching, deterministic for a given order

    Raises:
        MalformedInputError: If ``order`` is not a permutation of the edges
    """
    if order is None:
        scan: Sequence[Edge] = hypergraph.edges
    else:
        scan = [tuple(sorted(edge)) for edge in order]
        if len(scan) != len(hypergraph.edges) or set(scan) != hypergraph.edge_set:
            raise MalformedInputError("order must be a permutation of the hypergraph's edges")

    used: Set[int] = set()
    chosen: List[Edge] = []
    for edge in scan:
        if used.isdisjoint(edge):
            chosen.append(edge)
            used.update(edge)
    return Matching(edges=tuple(chosen))


def matching_number_exact(hypergraph: Hypergraph) -> int:
    """
    Exact matching number by branching on the lowest undecided vertex.

    Raises:
        ScaleLimitError: Above MAX_EXACT_MATCHING_N vertices
    """
    validate_scale("exact matching number", hypergraph.n, MAX_EXACT_MATCHING_N)
    r = hypergraph.r
    incident: List[List[Edge]] = [[] for _ in range(hypergraph.n)]
    for edge in hypergraph.edges:
        incident[edge[0]].append(edge)

    best = 0

    def search(vertex: int, used: FrozenSet[int], size: int) -> None:
        nonlocal best
        while vertex < hypergraph.n and vertex in used:
            vertex += 1
        free = hypergraph.n - vertex - sum(1 for v in used if v >= vertex)
        if size + free // r <= best:
            return
        if vertex >= hypergraph.n:
            best = max(best, size)
            return
        # Edges are sorted, so an edge whose lowest vertex is ``vertex`` covers it.
        for edge in incident[vertex]:
            if used.isdisjoint(edge):
                search(vertex + 1, used | set(edge), size + 1)
        search(vertex + 1, used, size)

    search(0, frozenset(), 0)
    return best


def is_independent(hypergraph: Hypergraph, vertices: Iterable[int]) -> bool:
    """True when no edge lies entirely inside ``vertices``."""
    chosen = set(vertices)
    return not any(chosen.issuperset(edge) for edge in hypergraph.edges)


def independence_number_exact(hypergraph: Hypergraph) -> int:
    """
    Exact independence number by include/exclude branching with a size bound.

    Raises:
        ScaleLimitError: Above MAX_EXACT_INDEPENDENCE_N vertices
    """
    validate_scale("exact independence number", hypergraph.n, MAX_EXACT_INDEPENDENCE_N)
    # Edges indexed by their largest vertex: adding v can only complete those.
    closing: List[List[Edge]] = [[] for _ in range(hypergraph.n)]
    for edge in hypergraph.edges:
        closing[edge[-1]].append(edge)

    best = 0

    def search(vertex: int, chosen: Set[int]) -> None:
        nonlocal best
        if len(chosen) + hypergraph.n - vertex <= best:
            return
        if vertex == hypergraph.n:
            best = len(chosen)
            return
        if not any(chosen.issuperset(edge[:-1]) for edge in closing[vertex]):
            chosen.add(vertex)
            search(vertex + 1, chosen)
            chosen.discard(vertex)
        search(vertex + 1, chosen)

    search(0, set())
    return best


def uncovered_vertices(hypergraph: Hypergraph, matching: Matching) -> FrozenSet[int]:
    """
    Vertices covered by no edge of the matching.

    When the matching is maximal the result is an independent set.

    Raises:
        MalformedInputError: If an edge of the matching is not an edge of the hypergraph
    """
    edges = hypergraph.edge_set
    for edge in matching.edges:
        if edge not in edges:
            raise MalformedInputError(f"Matching edge {edge} is not an edge of the hypergraph")
    return frozenset(range(hypergraph.n)) - matching.covered


def is_maximal(hypergraph: Hypergraph, matching: Matching) -> bool:
    """True when no edge is disjoint from every matching edge."""
    covered = matching.covered
    return all(not covered.isdisjoint(edge) for edge in hypergraph.edges)
