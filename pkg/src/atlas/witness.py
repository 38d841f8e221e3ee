"""
Constructive witnesses for (d, f0, f1) queries.

Cheap routes are tried first: the explicit scheme for d = 3, polygons,
the named-family catalog, pyramids, bipyramids and truncation chains.
What they miss goes to a best-first closure over realized polytopes,
run once per (d, vertex bound) and cached.
"""

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

from tqdm import tqdm

from ..core import families
from ..core.decomp import ReplayResult
from ..core.exceptions import PolyForgeError
from ..core.expressions import evaluate
from ..core.kernel import push_levels, push_point, visible_facets
from ..core.lattice import build_lattice, skeleton
from ..core.models import Polytope
from ..utils.constants import (
    DEFAULT_MAX_STATES,
    DEFAULT_PUSH_FACETS,
    DEFAULT_PUSH_LEVELS,
    STATUS_FEASIBLE,
    STATUS_UNKNOWN,
)
from ..utils.helpers import binomial_pairs
from .feasibility import FeasibilityVerdict, feasibility, violated_rule

logger = logging.getLogger(__name__)

NEED_VERTEX = "vertex"
NEED_EDGE = "edge"

StateKey = Tuple[int, int, bool, bool]


def num_edges(P: Polytope) -> int:
    return len(skeleton(P))


def simple_vertices(P: Polytope) -> List[int]:
    return [v for v in range(P.num_vertices) if len(P.vertex_facets[v]) == P.dim]


def simple_edges(P: Polytope) -> List[Tuple[int, int]]:
    simple = set(simple_vertices(P))
    return [(u, w) for u, w in skeleton(P) if u in simple and w in simple]


def has_simplex_facet(P: Polytope) -> bool:
    return any(len(f) == P.dim for f in P.facets)


def meets_need(P: Polytope, need: Optional[str]) -> bool:
    if need == NEED_VERTEX:
        return bool(simple_vertices(P))
    if need == NEED_EDGE:
        return bool(simple_edges(P))
    return True


def state_key(P: Polytope) -> StateKey:
    return (P.num_vertices, num_edges(P), bool(simple_vertices(P)), has_simplex_facet(P))


def replay(provenance: str, d: int, f0: int, f1: int) -> ReplayResult:
    """Re-execute a witness expression and check its dimension and counts."""
    try:
        P = evaluate(provenance)
    except (PolyForgeError, ValueError) as e:
        return ReplayResult(False, f"provenance does not evaluate: {e}")
    counts = (P.dim, P.num_vertices, num_edges(P))
    if counts != (d, f0, f1):
        return ReplayResult(False, f"{provenance} gives {counts}, expected {(d, f0, f1)}")
    return ReplayResult(True, "")


def three_dimensional_witness(v: int, e: int) -> Polytope:
    """
    A 3-polytope with v vertices and e edges, 3v/2 <= e <= 3v-6.

    Either a pyramid over a (3v-e-3)-gon stacked e-2v+2 times on triangles,
    or a pyramid over a (2e-3v+3)-gon with 2v-e-2 simple vertices truncated.
    """
    if e >= 2 * v - 2:
        P = families.pyramid(families.polygon(3 * v - e - 3))
        for _ in range(e - 2 * v + 2):
            triangle = next(j for j, f in enumerate(P.facets) if len(f) == 3)
            P = families.stack(P, triangle)
    else:
        P = families.pyramid(families.polygon(2 * e - 3 * v + 3))
        for _ in range(2 * v - e - 2):
            P, _ = families.truncate(P, [simple_vertices(P)[0]])
    return P


def _stack_counts(P: Polytope, visible: frozenset, edges: List[int],
                  hidden_masks: List[int]) -> Tuple[int, int]:
    """Vertex and edge counts after adding a point beyond exactly `visible`."""
    swallowed = 0
    horizon = 0
    for v in range(P.num_vertices):
        seen = P.vertex_facets[v] & visible
        if not seen:
            continue
        if len(seen) == len(P.vertex_facets[v]):
            swallowed += 1
        else:
            horizon += 1
    kept = sum(1 for e in edges if any(m & e == e for m in hidden_masks))
    return P.num_vertices - swallowed + 1, kept + horizon


@dataclass
class Closure:
    """States reached by the best-first search for one dimension."""
    dim: int
    bound: int
    found: Dict[Tuple[int, int], List[Polytope]] = field(default_factory=dict)
    expanded: int = 0
    partial: bool = False

    def lookup(self, f0: int, f1: int, need: Optional[str] = None) -> Optional[Polytope]:
        for P in self.found.get((f0, f1), []):
            if meets_need(P, need):
                return P
        return None

    @property
    def pairs(self) -> Set[Tuple[int, int]]:
        return set(self.found)


class WitnessSearch:
    """
    Memoized witness construction.

    One instance keeps its memo and closures for its lifetime; the CLI and
    the table builder share a single instance across queries.
    """

    def __init__(self, max_states: int = DEFAULT_MAX_STATES,
                 push_facets: int = DEFAULT_PUSH_FACETS,
                 push_levels: int = DEFAULT_PUSH_LEVELS,
                 progress: bool = False):
        self.max_states = max_states
        self.push_facets = push_facets
        self.push_levels = push_levels
        self.progress = progress
        self._memo: Dict[Tuple[int, int, int, Optional[str]], Optional[Polytope]] = {}
        self._closures: Dict[int, Closure] = {}
        self._catalogs: Dict[Tuple[int, int], Dict[Tuple[int, int], List[Polytope]]] = {}

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def find(self, d: int, f0: int, f1: int) -> FeasibilityVerdict:
        """Feasibility verdict with a witness when one can be built."""
        verdict = feasibility(d, f0, f1)
        if verdict.is_infeasible:
            return verdict
        P = self.construct(d, f0, f1)
        if P is None:
            closure = self._closures.get(d)
            note = "no witness found"
            if closure is not None and closure.partial:
                note = f"search budget of {self.max_states} states exhausted"
            logger.warning("(%d, %d, %d) left undecided: %s", d, f0, f1, note)
            return FeasibilityVerdict(status=STATUS_UNKNOWN, dim=d, f0=f0, f1=f1, note=note)
        return FeasibilityVerdict(status=STATUS_FEASIBLE, dim=d, f0=f0, f1=f1,
                                  witness=P.provenance, polytope=P)

    def construct(self, d: int, f0: int, f1: int, need: Optional[str] = None) -> Optional[Polytope]:
        """A realized polytope with the given counts, or None."""
        key = (d, f0, f1, need)
        if key in self._memo:
            return self._memo[key]
        self._memo[key] = None
        result = self._construct(d, f0, f1, need)
        if result is not None and not self._checked(result, d, f0, f1, need):
            result = None
        self._memo[key] = result
        return result

    def prepare(self, d: int, bound: int) -> Closure:
        """Run (or reuse) the closure search for d-polytopes with up to `bound` vertices."""
        closure = self._closures.get(d)
        if closure is None or closure.bound < bound:
            closure = self._run_closure(d, bound)
            self._closures[d] = closure
        return closure

    # ------------------------------------------------------------------
    # Routes
    # ------------------------------------------------------------------

    def _checked(self, P: Polytope, d: int, f0: int, f1: int, need: Optional[str]) -> bool:
        counts = (P.dim, P.num_vertices, num_edges(P))
        if counts != (d, f0, f1):
            logger.warning("construction %s gave %s instead of %s", P.provenance, counts, (d, f0, f1))
            return False
        return meets_need(P, need)

    def _construct(self, d: int, f0: int, f1: int, need: Optional[str]) -> Optional[Polytope]:
        try:
            if violated_rule(d, f0, f1) is not None:
                return None
        except ValueError:
            return None

        if d == 2:
            return families.polygon(f0)
        if d == 3:
            P = three_dimensional_witness(f0, f1)
            if meets_need(P, need):
                return P

        for P in self._catalog(d, f0).get((f0, f1), []):
            if meets_need(P, need):
                return P

        base = self.construct(d - 1, f0 - 1, f1 - (f0 - 1), need)
        if base is not None:
            return families.pyramid(base)

        if need is None:
            base = self.construct(d - 1, f0 - 2, f1 - 2 * (f0 - 2))
            if base is not None:
                return families.bipyramid(base)

        base = self.construct(d, f0 - (d - 1), f1 - binomial_pairs(d), NEED_VERTEX)
        if base is not None:
            return families.truncate(base, [simple_vertices(base)[0]])[0]

        if d >= 3:
            base = self.construct(d, f0 - (2 * d - 4), f1 - (d * d - 2 * d), NEED_EDGE)
            if base is not None:
                return families.truncate(base, simple_edges(base)[0])[0]

        return self.prepare(d, f0).lookup(f0, f1, need)

    def _catalog(self, d: int, bound: int) -> Dict[Tuple[int, int], List[Polytope]]:
        key = (d, bound)
        if key not in self._catalogs:
            index: Dict[Tuple[int, int], List[Polytope]] = {}
            for P in families.family_catalog(d, bound):
                index.setdefault((P.num_vertices, num_edges(P)), []).append(P)
            self._catalogs[key] = index
        return self._catalogs[key]

    # ------------------------------------------------------------------
    # Closure search
    # ------------------------------------------------------------------

    def _seeds(self, d: int, bound: int) -> List[Polytope]:
        seeds = list(families.family_catalog(d, bound))
        if d >= 3:
            for Q in families.family_catalog(d - 1, bound - 1):
                seeds.append(families.pyramid(Q))
                if Q.num_vertices + 2 <= bound:
                    try:
                        seeds.append(families.bipyramid(Q))
                    except PolyForgeError as e:
                        logger.debug("no bipyramid over %s: %s", Q.label, e)
        for (dim, _, _, _), P in self._memo.items():
            if dim == d and P is not None:
                seeds.append(P)
        return seeds

    def _run_closure(self, d: int, bound: int) -> Closure:
        closure = Closure(dim=d, bound=bound)
        seen: Set[StateKey] = set()
        heap: List[Tuple[int, int, Polytope]] = []
        counter = itertools.count()

        def admit(P: Polytope) -> None:
            if P.dim != d or P.num_vertices > bound:
                return
            key = state_key(P)
            if key in seen:
                return
            seen.add(key)
            closure.found.setdefault(key[:2], []).append(P)
            heapq.heappush(heap, (P.num_vertices, next(counter), P))

        for P in self._seeds(d, bound):
            admit(P)

        with tqdm(total=self.max_states, desc=f"witness closure d={d}",
                  disable=not self.progress, leave=False) as bar:
            while heap and closure.expanded < self.max_states:
                _, _, P = heapq.heappop(heap)
                closure.expanded += 1
                bar.update(1)
                for child in self._expand(P, bound, closure):
                    admit(child)

        if heap:
            closure.partial = True
            logger.warning("witness closure d=%d stopped after %d states with %d queued",
                           d, closure.expanded, len(heap))
        logger.info("witness closure d=%d up to %d vertices: %d (f0, f1) pairs",
                    d, bound, len(closure.found))
        return closure

    def _expand(self, P: Polytope, bound: int, closure: Closure) -> Iterator[Polytope]:
        """Children of a state; candidates whose counts are already known are skipped."""
        d = P.dim
        lattice = build_lattice(P)
        edges = list(lattice.masks(1))
        f1 = len(edges)

        def fresh(f0: int, e: int) -> bool:
            return f0 <= bound and (f0, e) not in closure.found

        def attempt(build) -> Optional[Polytope]:
            try:
                return build()
            except PolyForgeError as e:
                logger.debug("expansion of %s failed: %s", P.provenance, e)
                return None

        # Moves whose result always has a simple vertex are taken once each.
        simplex_facet = next((j for j, f in enumerate(P.facets) if len(f) == d), None)
        if simplex_facet is not None and P.num_vertices + 1 <= bound:
            child = attempt(lambda: families.stack(P, simplex_facet))
            if child is not None:
                yield child
        simple = simple_vertices(P)
        if simple and P.num_vertices + d - 1 <= bound:
            child = attempt(lambda: families.truncate(P, [simple[0]])[0])
            if child is not None:
                yield child
        if d >= 3 and P.num_vertices + 2 * d - 4 <= bound:
            pairs = simple_edges(P)
            if pairs:
                child = attempt(lambda: families.truncate(P, pairs[0])[0])
                if child is not None:
                    yield child

        # Stacking beyond every face, realized only when the counts are new.
        for rank in range(0, d):
            for face in lattice.faces(rank):
                visible = frozenset(j for j, f in enumerate(P.facets) if face <= f)
                hidden = [P.facet_masks[j] for j in range(P.num_facets) if j not in visible]
                if not hidden:
                    continue
                if fresh(*_stack_counts(P, visible, edges, hidden)):
                    target = next(iter(visible)) if rank == d - 1 else face
                    child = attempt(lambda: families.stack(P, target))
                    if child is not None:
                        yield child

        # Vertex truncations: f0 grows by degree - 1, f1 by the 2-faces at v.
        two_faces = lattice.masks(2)
        degrees = [0] * P.num_vertices
        for e in edges:
            for v in range(P.num_vertices):
                if e >> v & 1:
                    degrees[v] += 1
        for v in range(P.num_vertices):
            grown = f1 + sum(1 for m in two_faces if m >> v & 1)
            if fresh(P.num_vertices - 1 + degrees[v], grown):
                child = attempt(lambda: families.truncate(P, [v])[0])
                if child is not None:
                    yield child

        # Pushes beyond the first few facets.
        for j in range(min(self.push_facets, P.num_facets)):
            available = attempt(lambda: push_levels(P, j)) or 0
            for level in range(1, min(self.push_levels, available) + 1):
                point = attempt(lambda: push_point(P, j, level))
                if point is None:
                    break
                beyond, on = visible_facets(P, point)
                if on or not beyond:
                    continue
                hidden = [P.facet_masks[i] for i in range(P.num_facets) if i not in beyond]
                if hidden and fresh(*_stack_counts(P, beyond, edges, hidden)):
                    child = attempt(lambda: families.push(P, j, level))
                    if child is not None:
                        yield child


_default_search: Optional[WitnessSearch] = None


def default_search() -> WitnessSearch:
    global _default_search
    if _default_search is None:
        _default_search = WitnessSearch()
    return _default_search


def witness(d: int, f0: int, f1: int, search: Optional[WitnessSearch] = None) -> FeasibilityVerdict:
    """Feasibility verdict for (d, f0, f1), with a replayable witness when Feasible."""
    return (search or default_search()).find(d, f0, f1)
