"""
Canonical labelling of vertex-facet incidence structures.

The incidence structure is read as a bipartite graph whose vertex nodes are
0..f0-1 and whose facet nodes follow. Colour refinement is followed by
individualization and backtracking; the canonical code is the
lexicographically smallest relabelled incidence list over all leaves of the
search tree. Automorphisms found at matching leaves prune the tree.
"""

import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .models import Polytope

logger = logging.getLogger(__name__)

Code = Tuple[int, int, int, Tuple[Tuple[int, int], ...]]


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical incidence code; equal forms mean combinatorially equivalent polytopes."""
    dim: int
    num_vertices: int
    num_facets: int
    incidences: Tuple[Tuple[int, int], ...]

    @property
    def code(self) -> Code:
        return (self.dim, self.num_vertices, self.num_facets, self.incidences)

    def to_bytes(self) -> bytes:
        body = ",".join(f"{v}.{f}" for v, f in self.incidences)
        return f"{self.dim}:{self.num_vertices}:{self.num_facets}:{body}".encode('ascii')

    @cached_property
    def digest(self) -> str:
        return hashlib.sha1(self.to_bytes()).hexdigest()

    def to_polytope(self, name: str = "") -> Polytope:
        """Rebuild the (unrealized) polytope in canonical labelling."""
        facets: List[List[int]] = [[] for _ in range(self.num_facets)]
        for v, f in self.incidences:
            facets[f].append(v)
        return Polytope.build(dim=self.dim, facets=facets,
                              num_vertices=self.num_vertices, name=name)


class _Refiner:
    """Colour refinement and the search tree over one bipartite incidence graph."""

    def __init__(self, P: Polytope):
        self.dim = P.dim
        self.nv = P.num_vertices
        self.nf = P.num_facets
        self.size = self.nv + self.nf
        adj: List[List[int]] = [[] for _ in range(self.size)]
        for j, facet in enumerate(P.facets):
            for v in facet:
                adj[v].append(self.nv + j)
                adj[self.nv + j].append(v)
        self.adj = adj
        self.first_labels: Optional[List[int]] = None
        self.first_code: Optional[Code] = None
        self.first_path: List[int] = []
        self.best_labels: Optional[List[int]] = None
        self.best_code: Optional[Code] = None
        self.best_path: List[int] = []
        self.generators: List[List[int]] = []
        self.leaves = 0

    def refine(self, colours: Sequence[int]) -> List[int]:
        """Equitable refinement; colour order is preserved and colours come out dense."""
        current = list(colours)
        cells = len(set(current))
        while True:
            keys = [
                (current[x], tuple(sorted(current[y] for y in self.adj[x])))
                for x in range(self.size)
            ]
            ranking = {k: i for i, k in enumerate(sorted(set(keys)))}
            refined = [ranking[k] for k in keys]
            if len(ranking) == cells:
                return refined
            cells = len(ranking)
            current = refined

    def individualize(self, colours: Sequence[int], node: int) -> List[int]:
        c = colours[node]
        split = [2 * col + 1 for col in colours]
        split[node] = 2 * c
        return self.refine(split)

    @staticmethod
    def target_cell(colours: Sequence[int]) -> Optional[List[int]]:
        """Members of the first smallest non-singleton cell."""
        cells: Dict[int, List[int]] = {}
        for x, c in enumerate(colours):
            cells.setdefault(c, []).append(x)
        best = None
        for c in sorted(cells):
            members = cells[c]
            if len(members) > 1 and (best is None or len(members) < len(best)):
                best = members
        return best

    def leaf_code(self, labels: Sequence[int]) -> Code:
        pairs = []
        for v in range(self.nv):
            for node in self.adj[v]:
                pairs.append((labels[v], labels[node] - self.nv))
        pairs.sort()
        return (self.dim, self.nv, self.nf, tuple(pairs))

    def _automorphism(self, reference: Sequence[int], labels: Sequence[int]) -> List[int]:
        inverse = [0] * self.size
        for x, lab in enumerate(reference):
            inverse[lab] = x
        return [inverse[labels[x]] for x in range(self.size)]

    def _orbit_roots(self, cell: Sequence[int], fixed: Sequence[int]) -> Dict[int, int]:
        parent = {x: x for x in range(self.size)}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.generators:
            if any(gen[p] != p for p in fixed):
                continue
            for x in range(self.size):
                a, b = find(x), find(gen[x])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return {x: find(x) for x in cell}

    @staticmethod
    def _common_prefix(a: Sequence[int], b: Sequence[int]) -> int:
        n = 0
        for x, y in zip(a, b):
            if x != y:
                break
            n += 1
        return n

    def search(self, colours: List[int], path: List[int]) -> Optional[int]:
        """
        Depth-first search. Returns a level to jump back to, or None.
        """
        cell = self.target_cell(colours)
        if cell is None:
            return self._leaf(colours, path)

        explored: List[int] = []
        for node in cell:
            if explored:
                roots = self._orbit_roots(cell, path)
                if any(roots[node] == roots[e] for e in explored):
                    continue
            explored.append(node)
            jump = self.search(self.individualize(colours, node), path + [node])
            if jump is not None and jump < len(path):
                return jump
        return None

    def _leaf(self, labels: List[int], path: List[int]) -> Optional[int]:
        self.leaves += 1
        code = self.leaf_code(labels)
        if self.first_code is None:
            self.first_labels, self.first_code, self.first_path = labels, code, path
            self.best_labels, self.best_code, self.best_path = labels, code, path
            return None
        if code == self.first_code:
            self.generators.append(self._automorphism(self.first_labels, labels))
            return self._common_prefix(path, self.first_path)
        if code == self.best_code:
            self.generators.append(self._automorphism(self.best_labels, labels))
            return self._common_prefix(path, self.best_path)
        if code < self.best_code:
            self.best_labels, self.best_code, self.best_path = labels, code, path
        return None

    def run(self) -> None:
        start = self.refine([0] * self.nv + [1] * self.nf)
        self.search(start, [])


@lru_cache(maxsize=2048)
def _refined_search(P: Polytope) -> _Refiner:
    refiner = _Refiner(P)
    refiner.run()
    logger.debug("canonical search of %s: %d leaves, %d generators",
                 P.label, refiner.leaves, len(refiner.generators))
    return refiner


def canonical_form(P: Polytope) -> CanonicalForm:
    """Canonical form of the incidence structure of P (realization ignored)."""
    code = _refined_search(P.without_realization()).best_code
    dim, nv, nf, pairs = code
    return CanonicalForm(dim=dim, num_vertices=nv, num_facets=nf, incidences=pairs)


def canonical_labels(P: Polytope) -> List[int]:
    """Canonical label of every vertex of P."""
    return list(_refined_search(P.without_realization()).best_labels[:P.num_vertices])


def is_isomorphic(P: Polytope, Q: Polytope) -> bool:
    """Combinatorial equivalence; a cheap count check runs first."""
    if (P.dim, P.num_vertices, P.num_facets) != (Q.dim, Q.num_vertices, Q.num_facets):
        return False
    if sorted(len(f) for f in P.facets) != sorted(len(f) for f in Q.facets):
        return False
    return canonical_form(P) == canonical_form(Q)


def automorphism_generators(P: Polytope) -> List[Tuple[int, ...]]:
    """Vertex permutations generating (part of) the combinatorial symmetry group."""
    refiner = _refined_search(P.without_realization())
    return [tuple(g[:P.num_vertices]) for g in refiner.generators]


def vertex_orbits(P: Polytope) -> List[List[int]]:
    """Vertex classes under the automorphisms found by the canonical search."""
    parent = list(range(P.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in automorphism_generators(P):
        for x, y in enumerate(gen):
            a, b = find(x), find(y)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = {}
    for v in range(P.num_vertices):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())
