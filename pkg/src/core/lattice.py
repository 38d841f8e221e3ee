"""
Face lattices, skeletons, duals, vertex figures and validation.

Faces are handled internally as vertex bitmasks. The lattice is generated
from the bottom by covers: the covers of a face A are the minimal closures
of A + {v}, where the closure of a set is the intersection of the facets
containing it.
"""

import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .exceptions import ConstructionError, InvalidPolytopeError, KernelError
from .models import FVector, Polytope

logger = logging.getLogger(__name__)


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> FrozenSet[int]:
    members = []
    v = 0
    while mask:
        if mask & 1:
            members.append(v)
        mask >>= 1
        v += 1
    return frozenset(members)


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def edges_from_incidence(P: Polytope) -> List[Tuple[int, int]]:
    """
    Edges of P from vertex-facet incidences alone.

    u, w span an edge when the facets containing both meet in exactly {u, w}.
    """
    n = P.num_vertices
    full = (1 << n) - 1
    fmasks = P.facet_masks
    vfm = P.vertex_facet_masks
    need = P.dim - 1
    edges = []
    for u in range(n):
        for w in range(u + 1, n):
            common = vfm[u] & vfm[w]
            if bin(common).count('1') < need:
                continue
            pair = (1 << u) | (1 << w)
            acc = full
            for j in _bits(common):
                acc &= fmasks[j]
                if acc == pair:
                    break
            if acc == pair:
                edges.append((u, w))
    return edges


@dataclass(frozen=True, eq=False)
class FaceLattice:
    """All faces of a polytope by rank, with cover relations."""
    dim: int
    num_vertices: int
    faces_by_rank: Tuple[Tuple[int, ...], ...]
    ranks: Dict[int, int] = field(repr=False)
    covers: Dict[int, Tuple[int, ...]] = field(repr=False)

    def faces(self, rank: int) -> List[FrozenSet[int]]:
        """Faces of the given rank (-1 .. dim) as vertex sets."""
        if rank < -1 or rank > self.dim:
            return []
        return [from_mask(m) for m in self.faces_by_rank[rank + 1]]

    def masks(self, rank: int) -> Tuple[int, ...]:
        if rank < -1 or rank > self.dim:
            return ()
        return self.faces_by_rank[rank + 1]

    def rank_of(self, face: Iterable[int]) -> int:
        mask = to_mask(face)
        if mask not in self.ranks:
            raise KeyError(f"{sorted(from_mask(mask))} is not a face")
        return self.ranks[mask]

    def is_face(self, face: Iterable[int]) -> bool:
        return to_mask(face) in self.ranks

    @property
    def f_vector(self) -> FVector:
        return FVector(tuple(len(self.faces_by_rank[r + 1]) for r in range(self.dim)))

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return sorted(tuple(sorted(from_mask(m))) for m in self.masks(1))

    @property
    def num_faces(self) -> int:
        return len(self.ranks)


@lru_cache(maxsize=512)
def build_lattice(P: Polytope) -> FaceLattice:
    """
    Compute the face lattice of P.

    Raises InvalidPolytopeError when the incidences do not form a graded
    lattice with the diamond property, naming the violating interval.
    """
    n = P.num_vertices
    nf = P.num_facets
    full = (1 << n) - 1
    fmasks = P.facet_masks
    vfm = P.vertex_facet_masks

    closure_cache: Dict[int, int] = {}

    def closure(fbits: int) -> int:
        found = closure_cache.get(fbits)
        if found is None:
            found = full
            for j in _bits(fbits):
                found &= fmasks[j]
            closure_cache[fbits] = found
        return found

    ranks: Dict[int, int] = {0: -1}
    face_facets: Dict[int, int] = {0: (1 << nf) - 1}
    covers: Dict[int, Tuple[int, ...]] = {}
    queue = deque([0])
    while queue:
        face = queue.popleft()
        containing = face_facets[face]
        candidates: Dict[int, int] = {}
        for v in range(n):
            if face >> v & 1:
                continue
            fbits = containing & vfm[v]
            candidates.setdefault(closure(fbits), fbits)
        minimal = [c for c in candidates
                   if not any(o != c and (o & c) == o for o in candidates)]
        minimal.sort()
        covers[face] = tuple(minimal)
        for upper in minimal:
            r = ranks[face] + 1
            if upper in ranks:
                if ranks[upper] != r:
                    raise InvalidPolytopeError(
                        f"not graded: {sorted(from_mask(upper))} has ranks "
                        f"{ranks[upper]} and {r}",
                        check="lattice",
                        witness=(sorted(from_mask(face)), sorted(from_mask(upper))),
                    )
                continue
            ranks[upper] = r
            face_facets[upper] = candidates[upper]
            queue.append(upper)

    if ranks.get(full) != P.dim:
        raise InvalidPolytopeError(
            f"top face has rank {ranks.get(full)}, expected {P.dim}",
            check="lattice", witness=ranks.get(full))

    atoms = set(covers.get(0, ()))
    for v in range(n):
        if (1 << v) not in atoms:
            raise InvalidPolytopeError(
                f"vertex {v} is not separated from the other vertices by facets",
                check="lattice", witness=v)

    by_rank: List[List[int]] = [[] for _ in range(P.dim + 2)]
    for mask, r in ranks.items():
        by_rank[r + 1].append(mask)
    for bucket in by_rank:
        bucket.sort(key=lambda m: tuple(sorted(from_mask(m))))

    if set(by_rank[P.dim]) != set(fmasks):
        raise InvalidPolytopeError(
            "rank d-1 faces differ from the listed facets", check="lattice")

    for lower, middles in covers.items():
        counts: Dict[int, int] = defaultdict(int)
        for middle in middles:
            for upper in covers.get(middle, ()):
                counts[upper] += 1
        for upper, count in counts.items():
            if count != 2:
                raise InvalidPolytopeError(
                    f"diamond property fails on [{sorted(from_mask(lower))}, "
                    f"{sorted(from_mask(upper))}]: {count} middle elements",
                    check="lattice",
                    witness=(sorted(from_mask(lower)), sorted(from_mask(upper))),
                )

    logger.debug("lattice of %s: %d faces", P.label, len(ranks))
    return FaceLattice(
        dim=P.dim,
        num_vertices=n,
        faces_by_rank=tuple(tuple(b) for b in by_rank),
        ranks=ranks,
        covers=covers,
    )


def f_vector(P: Polytope) -> FVector:
    return build_lattice(P).f_vector


def skeleton(P: Polytope) -> List[Tuple[int, int]]:
    """Edge list of P, sorted."""
    return edges_from_incidence(P)


def degrees(P: Polytope) -> List[int]:
    """Degree of every vertex in the skeleton."""
    deg = [0] * P.num_vertices
    for u, w in edges_from_incidence(P):
        deg[u] += 1
        deg[w] += 1
    return deg


def neighbours(P: Polytope) -> List[FrozenSet[int]]:
    adj: List[set] = [set() for _ in range(P.num_vertices)]
    for u, w in edges_from_incidence(P):
        adj[u].add(w)
        adj[w].add(u)
    return [frozenset(a) for a in adj]


def skeleton_graph(P: Polytope) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(P.num_vertices))
    graph.add_edges_from(edges_from_incidence(P))
    return graph


def rank_of(P: Polytope, face: Iterable[int]) -> int:
    return build_lattice(P).rank_of(face)


def ridges(P: Polytope) -> List[FrozenSet[int]]:
    return build_lattice(P).faces(P.dim - 2)


def subridges(P: Polytope) -> List[FrozenSet[int]]:
    return build_lattice(P).faces(P.dim - 3)


def face_with_labels(P: Polytope, face: Iterable[int]) -> Tuple[Polytope, List[int]]:
    """
    A face of P as a standalone polytope, plus the original index of each
    of its vertices.
    """
    lattice = build_lattice(P)
    mask = to_mask(face)
    if mask not in lattice.ranks:
        raise KernelError(f"{sorted(from_mask(mask))} is not a face of {P.label}")
    r = lattice.ranks[mask]
    if r < 1:
        raise ConstructionError("faces of rank below 1 are not polytopes here")
    members = sorted(from_mask(mask))
    if r == P.dim:
        return P, members
    position = {v: i for i, v in enumerate(members)}
    subfacets = [[position[v] for v in from_mask(m)]
                 for m in lattice.masks(r - 1) if m & mask == m]
    coords = [P.vertices[v] for v in members] if P.is_realized else None
    face_poly, mapping = Polytope.build_mapped(
        dim=r, facets=subfacets, num_vertices=len(members), vertices=coords,
        name=f"face of {P.label}")
    labels = [0] * len(members)
    for old, new in enumerate(mapping):
        labels[new] = members[old]
    return face_poly, labels


def face_as_polytope(P: Polytope, face: Iterable[int]) -> Polytope:
    """Standalone polytope whose facets are the faces of P one rank down inside the face."""
    return face_with_labels(P, face)[0]


def facet_polytope(P: Polytope, index: int) -> Polytope:
    return face_as_polytope(P, P.facets[index])


def vertex_figure(P: Polytope, v: int) -> Polytope:
    """
    Combinatorial vertex figure at v.

    Its vertices are the edges at v (ordered by the far endpoint) and its
    facets are the facets of P containing v.
    """
    if not 0 <= v < P.num_vertices:
        raise KernelError(f"vertex {v} out of range")
    nbrs = sorted(neighbours(P)[v])
    position = {w: i for i, w in enumerate(nbrs)}
    facets = [[position[w] for w in nbrs if w in P.facets[j]]
              for j in sorted(P.vertex_facets[v])]
    return Polytope.build(
        dim=P.dim - 1, facets=facets, num_vertices=len(nbrs),
        name=f"vertex figure of {P.label} at {v}")


def dual(P: Polytope) -> Polytope:
    """Transposed incidence structure; carries no realization."""
    facets = [sorted(P.vertex_facets[v]) for v in range(P.num_vertices)]
    provenance = f"dual({P.provenance})" if P.provenance else ""
    return Polytope.build(
        dim=P.dim, facets=facets, num_vertices=P.num_facets,
        name=f"dual of {P.name}" if P.name else "", provenance=provenance)


@dataclass
class CheckResult:
    """Outcome of one validation check."""
    name: str
    passed: bool
    witness: Optional[str] = None


@dataclass
class ValidationReport:
    """All validation checks of one polytope."""
    label: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'valid': self.valid,
            'checks': [
                {'name': c.name, 'passed': c.passed, 'witness': c.witness}
                for c in self.checks
            ],
        }


def _check_incidence(P: Polytope) -> CheckResult:
    d, n = P.dim, P.num_vertices
    for j, facet in enumerate(P.facets):
        if not facet:
            return CheckResult("incidence", False, f"facet {j} is empty")
        bad = [v for v in facet if not 0 <= v < n]
        if bad:
            return CheckResult("incidence", False, f"facet {j} has out-of-range vertex {bad[0]}")
    if P.num_facets < d + 1:
        return CheckResult("incidence", False, f"{P.num_facets} facets, need at least {d + 1}")
    for v in range(n):
        if len(P.vertex_facets[v]) < d:
            return CheckResult(
                "incidence", False,
                f"vertex {v} lies in {len(P.vertex_facets[v])} facets, need at least {d}")
    for i, fi in enumerate(P.facets):
        for j, fj in enumerate(P.facets):
            if i != j and fi <= fj:
                return CheckResult("incidence", False, f"facet {i} is contained in facet {j}")
    return CheckResult("incidence", True)


def _check_ridges(P: Polytope) -> CheckResult:
    """Each ridge, found as a maximal facet-pair intersection, lies in exactly two facets."""
    d = P.dim
    if d < 2:
        return CheckResult("ridges", True)
    seen = set()
    for i, fi in enumerate(P.facets):
        meets = {fi & fj for j, fj in enumerate(P.facets) if j != i and len(fi & fj) >= d - 1}
        for ridge in meets:
            if any(ridge < other for other in meets):
                continue
            if ridge in seen:
                continue
            seen.add(ridge)
            count = sum(1 for f in P.facets if ridge <= f)
            if count != 2:
                return CheckResult("ridges", False,
                                   f"ridge {sorted(ridge)} lies in {count} facets")
    return CheckResult("ridges", True)


def _check_balinski(P: Polytope) -> CheckResult:
    graph = skeleton_graph(P)
    if graph.number_of_nodes() <= 1:
        return CheckResult("balinski", True)
    if not nx.is_connected(graph):
        return CheckResult("balinski", False, "skeleton is disconnected")
    connectivity = nx.node_connectivity(graph)
    if connectivity < P.dim:
        cut_set = sorted(nx.minimum_node_cut(graph))
        return CheckResult("balinski", False,
                           f"skeleton is only {connectivity}-connected; cut {cut_set}")
    return CheckResult("balinski", True)


def _check_realization(P: Polytope) -> CheckResult:
    from .kernel import affine_dim, facet_halfspaces

    if not P.is_realized:
        return CheckResult("realization", True, "no realization")
    if len(P.vertices) != P.num_vertices:
        return CheckResult("realization", False, "coordinate count differs from vertex count")
    if affine_dim(P.vertices) != P.dim:
        return CheckResult("realization", False,
                           f"vertices span dimension {affine_dim(P.vertices)}")
    try:
        halfspaces = facet_halfspaces(P)
    except KernelError as e:
        return CheckResult("realization", False, str(e))
    for j, (h, facet) in enumerate(zip(halfspaces, P.facets)):
        for v, point in enumerate(P.vertices):
            value = h.value(point)
            if v in facet and value != 0:
                return CheckResult("realization", False, f"vertex {v} is off facet {j}")
            if v not in facet and value >= 0:
                return CheckResult("realization", False,
                                   f"vertex {v} is not strictly beneath facet {j}")
    return CheckResult("realization", True)


def validate(P: Polytope) -> ValidationReport:
    """Run every structural check and report each with a witness."""
    report = ValidationReport(label=P.label)
    incidence = _check_incidence(P)
    report.checks.append(incidence)

    lattice = None
    if incidence.passed:
        try:
            lattice = build_lattice(P)
            report.checks.append(CheckResult("lattice", True))
        except InvalidPolytopeError as e:
            report.checks.append(CheckResult("lattice", False, str(e)))
    else:
        report.checks.append(CheckResult("lattice", False, "skipped: incidence check failed"))

    if lattice is not None:
        fv = lattice.f_vector
        report.checks.append(CheckResult(
            "euler", fv.satisfies_euler(),
            None if fv.satisfies_euler() else f"f-vector {fv} violates Euler's relation"))
    else:
        report.checks.append(CheckResult("euler", False, "skipped: no lattice"))

    report.checks.append(_check_ridges(P))
    report.checks.append(_check_balinski(P))
    report.checks.append(_check_realization(P))

    for c in report.failed():
        logger.info("validation of %s: %s failed (%s)", P.label, c.name, c.witness)
    return report
