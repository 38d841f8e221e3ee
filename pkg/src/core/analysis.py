"""
Excess degree and structural predicates.

Everything here is combinatorial: realizations are ignored.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .exceptions import StructureError
from .isomorphism import is_isomorphic
from .lattice import (
    build_lattice,
    degrees,
    f_vector,
    face_as_polytope,
    face_with_labels,
    from_mask,
    neighbours,
    to_mask,
    vertex_figure,
)
from .models import Polytope

logger = logging.getLogger(__name__)

CASE_SINGLE_VERTEX = "single-vertex"
CASE_SIMPLEX_FACE = "simplex-face"
CASE_EXCESS_FOUR_VERTEX = "excess-four-vertex"
CASE_EXCESS_TWO_EDGE = "excess-two-edge"
CASE_QUADRILATERAL = "quadrilateral"
CASE_PENTAGONAL_PYRAMID = "pentagonal-pyramid"
CASE_ANTIWEDGE = "antiwedge"
CASE_SHEPHARD = "shephard-non-pyramid"
CASE_NO_SHEPHARD = "decomposable-no-shephard"
CASE_CONTRADICTION = "contradiction"


@dataclass
class ExcessReport:
    """Total excess degree and its distribution over the vertices."""
    dim: int
    total: int
    per_vertex: Tuple[int, ...]

    @property
    def nonsimple(self) -> List[int]:
        return [v for v, x in enumerate(self.per_vertex) if x > 0]

    @property
    def is_simple(self) -> bool:
        return self.total == 0

    def to_dict(self) -> dict:
        return {
            'total': self.total,
            'per_vertex': list(self.per_vertex),
            'nonsimple': self.nonsimple,
        }


def excess(P: Polytope) -> ExcessReport:
    """Excess 2 f1 - d f0, with per-vertex excess deg(u) - d."""
    per_vertex = tuple(deg - P.dim for deg in degrees(P))
    return ExcessReport(dim=P.dim, total=sum(per_vertex), per_vertex=per_vertex)


def excess_degree(P: Polytope) -> int:
    return excess(P).total


def is_simple(P: Polytope) -> bool:
    return excess(P).is_simple


@dataclass
class FacetPairProfile:
    """
    Dimension of the intersection of every facet pair.

    pairs maps (i, j) with i < j to the rank of F_i & F_j, or None when the
    facets are disjoint.
    """
    dim: int
    pairs: Dict[Tuple[int, int], Optional[int]] = field(default_factory=dict)

    @property
    def semisimple(self) -> bool:
        return all(j is None or j == self.dim - 2 for j in self.pairs.values())

    @property
    def super_kirkman(self) -> bool:
        return all(j == self.dim - 2 for j in self.pairs.values())

    def pairs_of_rank(self, rank: Optional[int]) -> List[Tuple[int, int]]:
        return sorted(p for p, j in self.pairs.items() if j == rank)


def facet_profile(P: Polytope) -> FacetPairProfile:
    lattice = build_lattice(P)
    masks = P.facet_masks
    profile = FacetPairProfile(dim=P.dim)
    for i, j in itertools.combinations(range(P.num_facets), 2):
        meet = masks[i] & masks[j]
        profile.pairs[(i, j)] = lattice.ranks[meet] if meet else None
    return profile


def is_semisimple(P: Polytope) -> bool:
    return facet_profile(P).semisimple


def is_super_kirkman(P: Polytope) -> bool:
    return facet_profile(P).super_kirkman


def shephard_facets(P: Polytope) -> List[int]:
    """Facets each of whose vertices has exactly one neighbour outside the facet."""
    nbrs = neighbours(P)
    return [j for j, facet in enumerate(P.facets)
            if all(len(nbrs[v] - facet) == 1 for v in facet)]


def kirkman_facets(P: Polytope) -> List[int]:
    """Facets meeting every other facet in a ridge."""
    profile = facet_profile(P)
    ridge = P.dim - 2
    result = []
    for j in range(P.num_facets):
        if all(profile.pairs[tuple(sorted((i, j)))] == ridge
               for i in range(P.num_facets) if i != j):
            result.append(j)
    return result


def weak_ks_facets(P: Polytope) -> List[int]:
    """Facets that every other facet misses or meets in a ridge."""
    profile = facet_profile(P)
    ridge = P.dim - 2
    result = []
    for j in range(P.num_facets):
        if all(profile.pairs[tuple(sorted((i, j)))] in (None, ridge)
               for i in range(P.num_facets) if i != j):
            result.append(j)
    return result


def outside_vertices(P: Polytope, facet: int) -> int:
    return P.num_vertices - len(P.facets[facet])


def facet_excesses(P: Polytope) -> List[int]:
    """Excess of every facet as a polytope in its own right."""
    return [excess_degree(face_as_polytope(P, f)) for f in P.facets]


@dataclass
class PyramidStructure:
    """Maximal pyramid fold, its apexes (as vertices of P) and the final base."""
    fold: int
    apexes: List[int]
    base: Polytope

    @property
    def is_pyramid(self) -> bool:
        return self.fold > 0


def _apex(P: Polytope) -> Optional[int]:
    everything = P.all_vertices
    for v in range(P.num_vertices):
        if len(P.vertex_facets[v]) == P.num_facets - 1:
            missing = next(j for j in range(P.num_facets) if j not in P.vertex_facets[v])
            if P.facets[missing] == everything - {v}:
                return v
    return None


def pyramid_structure(P: Polytope) -> PyramidStructure:
    """Peel apexes while the base still has positive dimension."""
    current = P
    labels = list(range(P.num_vertices))
    apexes: List[int] = []
    while current.dim >= 2:
        apex = _apex(current)
        if apex is None:
            break
        apexes.append(labels[apex])
        base, base_labels = face_with_labels(current, current.all_vertices - {apex})
        labels = [labels[v] for v in base_labels]
        current = base
    return PyramidStructure(fold=len(apexes), apexes=apexes, base=current)


def simple_census_type(P: Polytope) -> str:
    """Census class of a simple polytope: simplex, prism, delta(2,d-2), J or other."""
    from .families import J, prism, simplex, simplex_product

    if not is_simple(P):
        raise StructureError(f"{P.label} is not simple")
    d = P.dim
    if is_isomorphic(P, simplex(d)):
        return "simplex"
    if d >= 2 and is_isomorphic(P, prism(d)):
        return "prism"
    if d >= 4 and is_isomorphic(P, simplex_product([2, d - 2])):
        return f"delta(2,{d - 2})"
    if d >= 2 and is_isomorphic(P, J(d)):
        return "J"
    return "other"


def pairwise_excess_bound_holds(P: Polytope) -> bool:
    """Every vertex in F & G has excess at least d - 2 - rank(F & G)."""
    per_vertex = excess(P).per_vertex
    masks = P.facet_masks
    lattice = build_lattice(P)
    for i, j in itertools.combinations(range(P.num_facets), 2):
        meet = masks[i] & masks[j]
        if not meet:
            continue
        bound = P.dim - 2 - lattice.ranks[meet]
        if any(per_vertex[v] < bound for v in from_mask(meet)):
            logger.debug("excess bound fails on facets %d, %d of %s", i, j, P.label)
            return False
    return True


@dataclass
class StructureVerdict:
    """Which small-excess case a polytope falls into, with its witnesses."""
    case: str
    dim: int
    excess: int
    face: Tuple[int, ...] = ()
    facets: Tuple[int, ...] = ()
    figure: Optional[Polytope] = None
    figure_type: Optional[str] = None
    detail: str = ""

    @property
    def contradiction(self) -> bool:
        return self.case == CASE_CONTRADICTION

    def to_dict(self) -> dict:
        return {
            'case': self.case,
            'dim': self.dim,
            'excess': self.excess,
            'face': list(self.face),
            'facets': list(self.facets),
            'figure_type': self.figure_type,
            'detail': self.detail,
        }


def _meeting_facets(P: Polytope, face: Tuple[int, ...], count: int) -> Optional[Tuple[int, ...]]:
    """Some `count` facets whose intersection is exactly the face."""
    target = to_mask(face)
    masks = P.facet_masks
    containing = [j for j, m in enumerate(masks) if m & target == target]
    for combo in itertools.combinations(containing, count):
        meet = -1
        for j in combo:
            meet &= masks[j]
        if meet == target:
            return combo
    return None


def _underfacet(P: Polytope, face: Tuple[int, ...]) -> Polytope:
    from .families import truncate

    result, under = truncate(P.without_realization(), face)
    return face_as_polytope(result, result.facets[under])


def _figure_type(Q: Polytope, candidates: Dict[str, Polytope]) -> Optional[str]:
    for name, model in candidates.items():
        if is_isomorphic(Q, model):
            return name
    return None


def _match_excess_d_minus_2(P: Polytope, report: ExcessReport) -> List[StructureVerdict]:
    d, xi = P.dim, report.total
    nonsimple = tuple(report.nonsimple)
    matches = []
    if len(nonsimple) == 1:
        pair = _meeting_facets(P, nonsimple, 2)
        if pair is not None:
            matches.append(StructureVerdict(CASE_SINGLE_VERTEX, d, xi, nonsimple, pair))
    if d >= 4 and len(nonsimple) == d - 2 \
            and all(report.per_vertex[v] == 1 for v in nonsimple):
        lattice = build_lattice(P)
        if lattice.ranks.get(to_mask(nonsimple)) == d - 3:
            pair = _meeting_facets(P, nonsimple, 2)
            if pair is not None:
                matches.append(StructureVerdict(CASE_SIMPLEX_FACE, d, xi, nonsimple, pair))
    return matches


def _match_excess_d_minus_1(P: Polytope, report: ExcessReport) -> List[StructureVerdict]:
    from .families import gamma, simplex_product

    d, xi = P.dim, report.total
    nonsimple = tuple(report.nonsimple)
    per_vertex = report.per_vertex
    lattice = build_lattice(P)
    matches = []
    if d != 5:
        return matches

    if len(nonsimple) == 1 and per_vertex[nonsimple[0]] == 4:
        triple = _meeting_facets(P, nonsimple, 3)
        if triple is not None:
            figure = vertex_figure(P, nonsimple[0])
            kind = _figure_type(figure, {"delta(2,2)": simplex_product([2, 2])})
            if kind is not None:
                matches.append(StructureVerdict(
                    CASE_EXCESS_FOUR_VERTEX, d, xi, nonsimple, triple, figure, kind))

    if len(nonsimple) == 2 and all(per_vertex[v] == 2 for v in nonsimple) \
            and lattice.ranks.get(to_mask(nonsimple)) == 1:
        pair = _meeting_facets(P, nonsimple, 2)
        if pair is not None:
            figure = _underfacet(P, nonsimple)
            kind = _figure_type(figure, {
                "delta(1,1,2)": simplex_product([1, 1, 2]),
                "gamma(2,2)": gamma(2, 2),
            })
            if kind is not None:
                matches.append(StructureVerdict(
                    CASE_EXCESS_TWO_EDGE, d, xi, nonsimple, pair, figure, kind))

    if len(nonsimple) == 4 and all(per_vertex[v] == 1 for v in nonsimple) \
            and lattice.ranks.get(to_mask(nonsimple)) == 2:
        pair = _meeting_facets(P, nonsimple, 2)
        if pair is not None:
            figure = _underfacet(P, nonsimple)
            kind = _figure_type(figure, {"delta(1,1,1,1)": simplex_product([1, 1, 1, 1])})
            if kind is not None:
                matches.append(StructureVerdict(
                    CASE_QUADRILATERAL, d, xi, nonsimple, pair, figure, kind))
    return matches


def _classify_three_dimensional(P: Polytope, report: ExcessReport) -> StructureVerdict:
    from .families import antiwedge

    nonsimple = tuple(report.nonsimple)
    structure = pyramid_structure(P)
    if structure.fold >= 1 and structure.base.dim == 2 and structure.base.num_vertices == 5:
        return StructureVerdict(CASE_PENTAGONAL_PYRAMID, 3, 2, tuple(structure.apexes),
                                figure=structure.base, figure_type="pentagon")
    if is_isomorphic(P, antiwedge()):
        return StructureVerdict(CASE_ANTIWEDGE, 3, 2, nonsimple)
    shephard = shephard_facets(P)
    if shephard:
        return StructureVerdict(CASE_SHEPHARD, 3, 2, nonsimple, (shephard[0],))
    return StructureVerdict(CASE_NO_SHEPHARD, 3, 2, nonsimple,
                            detail="decomposable without a Shephard facet")


def small_excess_structure(P: Polytope) -> StructureVerdict:
    """
    Case analysis for excess d-2 and d-1.

    Raises StructureError outside that range. A polytope matching no case,
    or more than one, yields a contradiction verdict.
    """
    d = P.dim
    report = excess(P)
    xi = report.total
    if d < 3 or xi not in (d - 2, d - 1):
        raise StructureError(f"excess {xi} of {P.label} is outside {{d-2, d-1}} for d={d}")

    if xi == d - 1 and d == 3:
        return _classify_three_dimensional(P, report)

    if xi == d - 2:
        matches = _match_excess_d_minus_2(P, report)
    else:
        matches = _match_excess_d_minus_1(P, report)

    if len(matches) == 1:
        return matches[0]
    detail = ("no case matches" if not matches
              else "several cases match: " + ", ".join(m.case for m in matches))
    logger.warning("structure of %s (d=%d, excess %d): %s", P.label, d, xi, detail)
    return StructureVerdict(CASE_CONTRADICTION, d, xi, tuple(report.nonsimple), detail=detail)


def analysis_report(P: Polytope) -> dict:
    """Everything `analyze` prints, as a JSON-ready dict."""
    report = excess(P)
    profile = facet_profile(P)
    structure = pyramid_structure(P)
    data = {
        'label': P.label,
        'provenance': P.provenance,
        'dim': P.dim,
        'f_vector': list(f_vector(P)),
        'excess': report.to_dict(),
        'simple': report.is_simple,
        'semisimple': profile.semisimple,
        'super_kirkman': profile.super_kirkman,
        'shephard_facets': shephard_facets(P),
        'kirkman_facets': kirkman_facets(P),
        'pyramid_fold': structure.fold,
        'facet_excesses': facet_excesses(P),
        'pairwise_excess_bound': pairwise_excess_bound_holds(P),
    }
    if report.is_simple:
        data['census_type'] = simple_census_type(P)
    if P.dim >= 3 and report.total in (P.dim - 2, P.dim - 1):
        data['structure'] = small_excess_structure(P).to_dict()
    return data
