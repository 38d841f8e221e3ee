"""
Shared value types for PolyForge.

A Polytope is the single interchange object: a dimension, a vertex count,
facets as vertex-index sets and an optional exact realization.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..utils.helpers import format_rational

Point = Tuple[Fraction, ...]


def to_point(coords: Iterable) -> Point:
    """Convert any sequence of numbers to an exact point."""
    return tuple(Fraction(c) for c in coords)


@dataclass(frozen=True)
class HalfSpace:
    """The closed halfspace normal . x <= offset."""
    normal: Tuple[Fraction, ...]
    offset: Fraction

    def value(self, point: Sequence[Fraction]) -> Fraction:
        """Signed slack normal . x - offset (positive means beyond)."""
        return sum((a * b for a, b in zip(self.normal, point)), Fraction(0)) - self.offset

    def contains(self, point: Sequence[Fraction]) -> bool:
        return self.value(point) <= 0

    def to_dict(self) -> dict:
        return {
            'normal': [format_rational(c) for c in self.normal],
            'offset': format_rational(self.offset),
        }


@dataclass(frozen=True)
class HullResult:
    """Output of convex_hull."""
    vertices: Tuple[Point, ...]
    facets: Tuple[Tuple[HalfSpace, FrozenSet[int]], ...]
    dim: int

    def to_polytope(self, name: str = "", provenance: str = "") -> 'Polytope':
        return Polytope.build(
            dim=self.dim,
            facets=[f for _, f in self.facets],
            vertices=self.vertices,
            name=name,
            provenance=provenance,
        )


@dataclass(frozen=True)
class FVector:
    """Face counts (f0, f1, ..., f_{d-1})."""
    values: Tuple[int, ...]

    @property
    def f0(self) -> int:
        return self.values[0] if self.values else 0

    @property
    def f1(self) -> int:
        return self.values[1] if len(self.values) > 1 else 0

    @property
    def dim(self) -> int:
        return len(self.values)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * f for i, f in enumerate(self.values))

    def satisfies_euler(self) -> bool:
        """Alternating sum equals 1 - (-1)^d."""
        return self.euler_characteristic() == 1 - (-1) ** self.dim

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class Polytope:
    """
    A d-polytope given by vertex-facet incidences.

    Facets are frozensets of 0-based vertex indices, kept sorted by their
    sorted index tuple. When a realization is present its vertices are in
    lexicographic order; the ambient dimension may exceed dim.
    """
    dim: int
    num_vertices: int
    facets: Tuple[FrozenSet[int], ...]
    vertices: Optional[Tuple[Point, ...]] = None
    name: str = field(default="", compare=False)
    provenance: str = field(default="", compare=False)

    @classmethod
    def build(
        cls,
        dim: int,
        facets: Iterable[Iterable[int]],
        num_vertices: Optional[int] = None,
        vertices: Optional[Iterable[Iterable]] = None,
        name: str = "",
        provenance: str = "",
    ) -> 'Polytope':
        """Normalize and construct; see build_mapped for the relabeling."""
        return cls.build_mapped(dim, facets, num_vertices, vertices, name, provenance)[0]

    @classmethod
    def build_mapped(
        cls,
        dim: int,
        facets: Iterable[Iterable[int]],
        num_vertices: Optional[int] = None,
        vertices: Optional[Iterable[Iterable]] = None,
        name: str = "",
        provenance: str = "",
    ) -> Tuple['Polytope', List[int]]:
        """
        Normalize and construct a polytope.

        Returns the polytope and the map old vertex index -> new index.
        Realized vertices are sorted lexicographically and facets remapped.
        """
        facet_list = [frozenset(f) for f in facets]
        points = None
        if vertices is not None:
            points = [to_point(v) for v in vertices]
            if num_vertices is None:
                num_vertices = len(points)
            elif num_vertices != len(points):
                raise ValueError(
                    f"num_vertices={num_vertices} but {len(points)} coordinates given")
        if num_vertices is None:
            num_vertices = max((max(f) for f in facet_list if f), default=-1) + 1

        mapping = list(range(num_vertices))
        if points is not None:
            order = sorted(range(num_vertices), key=lambda i: points[i])
            for new, old in enumerate(order):
                mapping[old] = new
            points = [points[old] for old in order]
            facet_list = [frozenset(mapping[i] for i in f) for f in facet_list]

        facet_list = sorted(set(facet_list), key=lambda f: tuple(sorted(f)))
        polytope = cls(
            dim=dim,
            num_vertices=num_vertices,
            facets=tuple(facet_list),
            vertices=tuple(points) if points is not None else None,
            name=name,
            provenance=provenance,
        )
        return polytope, mapping

    @property
    def is_realized(self) -> bool:
        return self.vertices is not None

    @property
    def ambient_dim(self) -> int:
        if self.vertices is None or not self.vertices:
            return self.dim
        return len(self.vertices[0])

    @property
    def num_facets(self) -> int:
        return len(self.facets)

    @property
    def label(self) -> str:
        """Best human-readable identifier."""
        return self.provenance or self.name or "anonymous"

    @cached_property
    def vertex_facets(self) -> Tuple[FrozenSet[int], ...]:
        """For every vertex the set of facet indices containing it."""
        table: List[set] = [set() for _ in range(self.num_vertices)]
        for j, facet in enumerate(self.facets):
            for v in facet:
                table[v].add(j)
        return tuple(frozenset(s) for s in table)

    @cached_property
    def facet_masks(self) -> Tuple[int, ...]:
        """Facets as vertex bitmasks."""
        return tuple(sum(1 << v for v in f) for f in self.facets)

    @cached_property
    def vertex_facet_masks(self) -> Tuple[int, ...]:
        """For every vertex, its facets as a facet bitmask."""
        return tuple(sum(1 << j for j in fs) for fs in self.vertex_facets)

    @property
    def all_vertices(self) -> FrozenSet[int]:
        return frozenset(range(self.num_vertices))

    def facet_index(self, vertex_set: Iterable[int]) -> int:
        """Index of the facet with exactly this vertex set."""
        target = frozenset(vertex_set)
        for j, facet in enumerate(self.facets):
            if facet == target:
                return j
        raise KeyError(f"No facet with vertices {sorted(target)}")

    def with_label(self, name: Optional[str] = None,
                   provenance: Optional[str] = None) -> 'Polytope':
        """Copy with a new name and/or provenance."""
        return replace(
            self,
            name=self.name if name is None else name,
            provenance=self.provenance if provenance is None else provenance,
        )

    def without_realization(self) -> 'Polytope':
        return replace(self, vertices=None)

    def coordinates(self, indices: Iterable[int]) -> List[Point]:
        if self.vertices is None:
            raise ValueError(f"{self.label} has no realization")
        return [self.vertices[i] for i in indices]

    def summary(self) -> Dict[str, object]:
        return {
            'name': self.name,
            'provenance': self.provenance,
            'dim': self.dim,
            'vertices': self.num_vertices,
            'facets': self.num_facets,
            'realized': self.is_realized,
        }
