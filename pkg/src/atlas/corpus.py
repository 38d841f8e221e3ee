"""
Corpus generation.

Seeds are the named families of dimension d together with pyramids and
bipyramids over lower-dimensional seeds. Each depth round truncates and
stacks every member once per move; results are deduplicated by the digest
of their canonical form.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from tqdm import tqdm

from ..core import families
from ..core.analysis import excess_degree
from ..core.exceptions import PolyForgeError
from ..core.isomorphism import canonical_form, vertex_orbits
from ..core.lattice import degrees, skeleton
from ..core.models import Polytope
from ..utils.constants import (
    CORPUS_HARD_VERTEX_LIMIT,
    CORPUS_MAX_DEPTH,
    CORPUS_MAX_DIM,
    DEFAULT_CORPUS_DEPTH,
    DEFAULT_CORPUS_MAX_MEMBERS,
    DEFAULT_CORPUS_MAX_VERTICES,
)

logger = logging.getLogger(__name__)


@dataclass
class CorpusResult:
    """Deduplicated corpus; partial when the member budget cut generation short."""
    success: bool
    dim: int
    depth: int
    max_vertices: int
    members: List[Polytope] = field(default_factory=list)
    digests: List[str] = field(default_factory=list)
    partial: bool = False
    warnings: List[str] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def excess_values(self, max_vertices: Optional[int] = None) -> List[int]:
        return sorted({excess_degree(P) for P in self.members
                       if max_vertices is None or P.num_vertices <= max_vertices})

    def with_counts(self, f0: int, f1: Optional[int] = None) -> List[Polytope]:
        return [P for P in self.members if P.num_vertices == f0
                and (f1 is None or len(skeleton(P)) == f1)]


@lru_cache(maxsize=64)
def seed_polytopes(d: int, max_vertices: int) -> Tuple[Polytope, ...]:
    """Named families of dimension d plus pyramids and bipyramids over lower seeds."""
    if d < 2 or max_vertices < d + 1:
        return ()
    members = list(families.family_catalog(d, max_vertices))
    if d >= 3:
        for Q in seed_polytopes(d - 1, max_vertices - 1):
            members.append(families.pyramid(Q))
        for Q in families.family_catalog(d - 1, max_vertices - 2):
            try:
                members.append(families.bipyramid(Q))
            except PolyForgeError as e:
                logger.debug("no bipyramid over %s: %s", Q.label, e)
    return tuple(members)


def one_round(P: Polytope, max_vertices: int) -> Iterator[Polytope]:
    """Truncations and stackings of P that stay within the vertex budget."""
    d = P.dim
    vertex_degrees = degrees(P)
    moves: List[Callable[[], Polytope]] = []

    representatives = [orbit[0] for orbit in vertex_orbits(P)]
    simple = [v for v in range(P.num_vertices) if vertex_degrees[v] == d]
    if simple and simple[0] not in representatives:
        representatives.insert(0, simple[0])
    for v in representatives:
        if P.num_vertices - 1 + vertex_degrees[v] <= max_vertices:
            moves.append(lambda v=v: families.truncate(P, [v])[0])

    simple_set = set(simple)
    edge = next(((u, w) for u, w in skeleton(P) if u in simple_set and w in simple_set), None)
    if edge is not None and d >= 3 and P.num_vertices + 2 * d - 4 <= max_vertices:
        moves.append(lambda: families.truncate(P, edge)[0])

    if P.num_vertices + 1 <= max_vertices:
        simplex_facet = next((j for j, f in enumerate(P.facets) if len(f) == d), None)
        if simplex_facet is not None:
            moves.append(lambda: families.stack(P, simplex_facet))
        if simplex_facet != 0:
            moves.append(lambda: families.stack(P, 0))

    for move in moves:
        try:
            child = move()
        except PolyForgeError as e:
            logger.debug("corpus move on %s failed: %s", P.provenance, e)
            continue
        if child.num_vertices <= max_vertices:
            yield child


def generate_corpus(d: int, depth: int = DEFAULT_CORPUS_DEPTH,
                    max_vertices: int = DEFAULT_CORPUS_MAX_VERTICES,
                    max_members: int = DEFAULT_CORPUS_MAX_MEMBERS,
                    progress: bool = False) -> CorpusResult:
    """Seeds of dimension d and `depth` rounds of truncation and stacking."""
    if not 2 <= d <= CORPUS_MAX_DIM:
        raise ValueError(f"corpus dimension must be in 2..{CORPUS_MAX_DIM}, got {d}")
    if not 0 <= depth <= CORPUS_MAX_DEPTH:
        raise ValueError(f"corpus depth must be in 0..{CORPUS_MAX_DEPTH}, got {depth}")
    if not d + 1 <= max_vertices <= CORPUS_HARD_VERTEX_LIMIT:
        raise ValueError(
            f"vertex budget must be in {d + 1}..{CORPUS_HARD_VERTEX_LIMIT}, got {max_vertices}")

    result = CorpusResult(success=True, dim=d, depth=depth, max_vertices=max_vertices)
    index: Dict[str, int] = {}

    def admit(P: Polytope) -> bool:
        if len(result.members) >= max_members:
            result.partial = True
            return False
        digest = canonical_form(P).digest
        if digest in index:
            return False
        index[digest] = len(result.members)
        result.members.append(P)
        result.digests.append(digest)
        return True

    frontier = [P for P in seed_polytopes(d, max_vertices) if admit(P)]
    logger.info("corpus d=%d: %d distinct seeds", d, len(frontier))

    for round_number in range(1, depth + 1):
        produced: List[Polytope] = []
        for P in tqdm(frontier, desc=f"corpus d={d} round {round_number}",
                      disable=not progress, leave=False):
            for child in one_round(P, max_vertices):
                if admit(child):
                    produced.append(child)
            if result.partial:
                break
        logger.info("corpus d=%d round %d: %d new members", d, round_number, len(produced))
        frontier = produced
        if result.partial:
            break

    if result.partial:
        message = f"member budget of {max_members} reached; corpus is partial"
        result.warnings.append(message)
        logger.warning("corpus d=%d: %s", d, message)
    return result
