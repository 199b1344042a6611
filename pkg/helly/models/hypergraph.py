"""Uniform hypergraph and matching models."""
from typing import FrozenSet, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

Edge = Tuple[int, ...]


class Hypergraph(BaseModel):
    """An r-uniform hypergraph on vertices 0..n-1."""
    n: int = Field(..., ge=0, description="Number of vertices")
    r: int = Field(..., ge=1, description="Uniformity (size of every edge)")
    edges: Tuple[Edge, ...] = Field(default=(), description="Edges in lexicographic order")

    model_config = ConfigDict(frozen=True)

    @field_validator("edges")
    @classmethod
    def _normalize_edges(cls, edges: Tuple[Edge, ...], info: ValidationInfo) -> Tuple[Edge, ...]:
        n = info.data.get("n")
        r = info.data.get("r")
        normalized = []
        for edge in edges:
            ordered = tuple(sorted(edge))
            if len(set(ordered)) != len(ordered):
                raise ValueError(f"Edge {edge} repeats a vertex")
            if r is not None and len(ordered) != r:
                raise ValueError(f"Edge {edge} has {len(ordered)} vertices, expected {r}")
            if n is not None and any(v < 0 or v >= n for v in ordered):
                raise ValueError(f"Edge {edge} uses a vertex outside 0..{n - 1}")
            normalized.append(ordered)
        if len(set(normalized)) != len(normalized):
            raise ValueError("Duplicate edges are not allowed")
        return tuple(sorted(normalized))

    @property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)


class Matching(BaseModel):
    """A set of pairwise disjoint edges."""
    edges: Tuple[Edge, ...] = Field(default=(), description="Chosen edges in selection order")

    model_config = ConfigDict(frozen=True)

    @field_validator("edges")
    @classmethod
    def _pairwise_disjoint(cls, edges: Tuple[Edge, ...]) -> Tuple[Edge, ...]:
        seen = set()
        for edge in edges:
            if seen.intersection(edge):
                raise ValueError(f"Edge {edge} shares a vertex with an earlier edge")
            seen.update(edge)
        return tuple(tuple(sorted(edge)) for edge in edges)

    @property
    def covered(self) -> FrozenSet[int]:
        return frozenset(v for edge in self.edges for v in edge)

    @property
    def size(self) -> int:
        return len(self.edges)
