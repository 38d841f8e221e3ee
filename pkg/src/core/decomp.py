"""
Certificates of Minkowski decomposability and indecomposability.

Indecomposability certificates are built from the realized skeleton as a
derivation: affinely independent cycles, merges of two indecomposable
subgraphs sharing at least two vertices, and absorption of a vertex joined
by two edges. A subgraph touching every facet certifies the polytope.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..utils.constants import (
    DEFAULT_DECOMP_DEPTH,
    VERDICT_DECOMPOSABLE,
    VERDICT_INDECOMPOSABLE,
    VERDICT_UNKNOWN,
)
from .analysis import excess, pyramid_structure, shephard_facets, outside_vertices
from .exceptions import CertificateError
from .kernel import affine_dim
from .lattice import build_lattice, edges_from_incidence, face_as_polytope, from_mask
from .models import Point, Polytope

logger = logging.getLogger(__name__)

RULE_CYCLE = "cycle"
RULE_MERGE = "merge"
RULE_ABSORB = "absorb"

EVIDENCE_SHEPHARD = "shephard-facet"
EVIDENCE_PYRAMID = "pyramid"
EVIDENCE_SUBGRAPH = "indecomposable-subgraph"
EVIDENCE_FEW_FACETS = "few-decomposable-facets"
EVIDENCE_DUAL_RULE = "nonsimple-count-dual"
EVIDENCE_SEGMENT = "segment"
EVIDENCE_NONE = "none"


@dataclass
class GeometricGraph:
    """A graph whose nodes are points."""
    points: List[Point]
    edges: List[Tuple[int, int]]

    def __post_init__(self):
        self._edge_set = {frozenset(e) for e in self.edges}

    def has_edge(self, u: int, w: int) -> bool:
        return frozenset((u, w)) in self._edge_set

    @classmethod
    def skeleton_of(cls, P: Polytope) -> 'GeometricGraph':
        if not P.is_realized:
            raise CertificateError(f"{P.label} has no realization")
        return cls(points=list(P.vertices), edges=edges_from_incidence(P))


def check_cycle(graph: GeometricGraph, cycle: Sequence[int]) -> bool:
    """True iff the cycle's vertices are affinely independent."""
    if len(cycle) < 3:
        raise CertificateError(f"a cycle needs at least 3 vertices, got {len(cycle)}")
    if len(set(cycle)) != len(cycle):
        raise CertificateError(f"cycle {list(cycle)} repeats a vertex")
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if not graph.has_edge(a, b):
            raise CertificateError(f"broken cycle: {a}-{b} is not an edge")
    return affine_dim([graph.points[v] for v in cycle]) == len(cycle) - 1


@dataclass
class DerivationStep:
    """
    One rule application producing component `component`.

    cycle:  vertices is the cycle in order.
    merge:  operands are the two merged components; vertices lists two shared vertices.
    absorb: operands is the grown component; vertices is (new vertex, neighbour, neighbour).
    """
    rule: str
    component: int
    vertices: Tuple[int, ...]
    operands: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {'rule': self.rule, 'component': self.component,
                'vertices': list(self.vertices), 'operands': list(self.operands)}

    @classmethod
    def from_dict(cls, data: dict) -> 'DerivationStep':
        return cls(rule=data['rule'], component=int(data['component']),
                   vertices=tuple(int(v) for v in data['vertices']),
                   operands=tuple(int(c) for c in data.get('operands', [])))


@dataclass
class IndecSubgraph:
    """Derivation of an indecomposable subgraph touching every facet."""
    steps: List[DerivationStep]
    final: int
    covered: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {'steps': [s.to_dict() for s in self.steps], 'final': self.final,
                'covered': list(self.covered)}

    @classmethod
    def from_dict(cls, data: dict) -> 'IndecSubgraph':
        return cls(steps=[DerivationStep.from_dict(s) for s in data['steps']],
                   final=int(data['final']),
                   covered=tuple(int(v) for v in data['covered']))


@dataclass
class DecompCertificate:
    """A verdict with the evidence needed to re-check it."""
    verdict: str
    evidence: str
    facet: Optional[int] = None
    outside: Optional[int] = None
    apex: Optional[int] = None
    subgraph: Optional[IndecSubgraph] = None
    facet_certificates: List['DecompCertificate'] = field(default_factory=list)
    reason: str = ""
    scope: str = "this realization"

    @property
    def is_decomposable(self) -> bool:
        return self.verdict == VERDICT_DECOMPOSABLE

    @property
    def is_indecomposable(self) -> bool:
        return self.verdict == VERDICT_INDECOMPOSABLE

    def to_dict(self) -> dict:
        data = {'verdict': self.verdict, 'evidence': self.evidence, 'scope': self.scope}
        if self.facet is not None:
            data['facet'] = self.facet
        if self.outside is not None:
            data['outside'] = self.outside
        if self.apex is not None:
            data['apex'] = self.apex
        if self.subgraph is not None:
            data['subgraph'] = self.subgraph.to_dict()
        if self.facet_certificates:
            data['facet_certificates'] = [c.to_dict() for c in self.facet_certificates]
        if self.reason:
            data['reason'] = self.reason
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'DecompCertificate':
        try:
            return cls(
                verdict=data['verdict'],
                evidence=data['evidence'],
                facet=data.get('facet'),
                outside=data.get('outside'),
                apex=data.get('apex'),
                subgraph=IndecSubgraph.from_dict(data['subgraph']) if 'subgraph' in data else None,
                facet_certificates=[cls.from_dict(c) for c in data.get('facet_certificates', [])],
                reason=data.get('reason', ""),
                scope=data.get('scope', "this realization"),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CertificateError(f"malformed certificate: {e}") from e


def _simplex_seeds(P: Polytope) -> List[Tuple[int, ...]]:
    """Maximal simplex faces of rank at least 2, largest first."""
    lattice = build_lattice(P)
    simplices: List[int] = []
    for rank in range(2, P.dim + 1):
        for mask in lattice.masks(rank):
            if bin(mask).count('1') == rank + 1:
                simplices.append(mask)
    maximal = [m for m in simplices
               if not any(o != m and (o & m) == m for o in simplices)]
    seeds = [tuple(sorted(from_mask(m))) for m in maximal]
    seeds.sort()
    seeds.sort(key=len, reverse=True)
    return seeds


def grow_certificate(P: Polytope) -> Optional[IndecSubgraph]:
    """
    Greedy growth of an indecomposable subgraph from simplex faces.

    Merges are tried before absorptions; the first component touching every
    facet is returned with the steps it depends on. None when growth stalls.
    """
    if not P.is_realized:
        return None
    graph = GeometricGraph.skeleton_of(P)
    adjacency: List[Set[int]] = [set() for _ in range(P.num_vertices)]
    for u, w in graph.edges:
        adjacency[u].add(w)
        adjacency[w].add(u)
    facet_masks = P.facet_masks

    steps: List[DerivationStep] = []
    members: Dict[int, Set[int]] = {}
    live: List[int] = []

    def touches_all(vertices: Set[int]) -> bool:
        mask = sum(1 << v for v in vertices)
        return all(fm & mask for fm in facet_masks)

    def emit(step: DerivationStep, vertices: Set[int]) -> int:
        steps.append(step)
        members[step.component] = vertices
        return step.component

    for seed in _simplex_seeds(P):
        cid = len(steps)
        emit(DerivationStep(RULE_CYCLE, cid, seed), set(seed))
        live.append(cid)

    def finished() -> Optional[int]:
        for cid in live:
            if touches_all(members[cid]):
                return cid
        return None

    done = finished()
    while done is None:
        progressed = False
        merged = True
        while merged:
            merged = False
            for i, a in enumerate(live):
                for b in live[i + 1:]:
                    shared = sorted(members[a] & members[b])
                    if len(shared) >= 2:
                        cid = len(steps)
                        emit(DerivationStep(RULE_MERGE, cid, tuple(shared[:2]), (a, b)),
                             members[a] | members[b])
                        live = [c for c in live if c not in (a, b)] + [cid]
                        merged = progressed = True
                        break
                if merged:
                    break
        done = finished()
        if done is not None:
            break

        for cid in list(live):
            covered = members[cid]
            grown = False
            for x in range(P.num_vertices):
                if x in covered:
                    continue
                anchors = sorted(adjacency[x] & covered)
                if len(anchors) >= 2:
                    new = len(steps)
                    emit(DerivationStep(RULE_ABSORB, new, (x, anchors[0], anchors[1]), (cid,)),
                         covered | {x})
                    live = [c if c != cid else new for c in live]
                    grown = progressed = True
                    break
            if grown:
                break
        done = finished()
        if not progressed:
            break

    if done is None:
        logger.debug("certificate growth stalled on %s", P.label)
        return None

    needed: Set[int] = set()
    stack = [done]
    while stack:
        cid = stack.pop()
        if cid in needed:
            continue
        needed.add(cid)
        stack.extend(steps[cid].operands)
    kept = [s for s in steps if s.component in needed]
    return IndecSubgraph(steps=kept, final=done, covered=tuple(sorted(members[done])))


def _shephard_certificate(P: Polytope) -> Optional[DecompCertificate]:
    for j in shephard_facets(P):
        outside = outside_vertices(P, j)
        if outside >= 2:
            return DecompCertificate(VERDICT_DECOMPOSABLE, EVIDENCE_SHEPHARD,
                                     facet=j, outside=outside)
    return None


def classify(P: Polytope, depth: int = DEFAULT_DECOMP_DEPTH) -> DecompCertificate:
    """
    Decide decomposability of this realization where a rule applies.

    Order: Shephard facet, pyramid, subgraph certificate, facet recursion.
    """
    if P.dim <= 1:
        return DecompCertificate(VERDICT_INDECOMPOSABLE, EVIDENCE_SEGMENT,
                                 reason="every summand of a segment is homothetic to it")

    found = _shephard_certificate(P)
    if found is not None:
        return found

    structure = pyramid_structure(P)
    if structure.is_pyramid:
        return DecompCertificate(VERDICT_INDECOMPOSABLE, EVIDENCE_PYRAMID,
                                 apex=structure.apexes[0])

    if P.is_realized:
        subgraph = grow_certificate(P)
        if subgraph is not None:
            return DecompCertificate(VERDICT_INDECOMPOSABLE, EVIDENCE_SUBGRAPH,
                                     subgraph=subgraph)

    if depth > 0:
        subs = [classify(face_as_polytope(P, f), depth - 1) for f in P.facets]
        loose = sum(1 for c in subs if not c.is_indecomposable)
        if loose < P.dim:
            return DecompCertificate(
                VERDICT_INDECOMPOSABLE, EVIDENCE_FEW_FACETS, facet_certificates=subs,
                reason=f"{loose} facets not known indecomposable, fewer than d={P.dim}")

    reason = "no rule applies" if P.is_realized else "no realization for geometric rules"
    logger.debug("decomposability of %s undecided: %s", P.label, reason)
    return DecompCertificate(VERDICT_UNKNOWN, EVIDENCE_NONE, reason=reason)


def count_nonsimple_dual_rule(P: Polytope) -> Optional[DecompCertificate]:
    """Verdict for dual(P) when P has at most d-1 nonsimple vertices."""
    count = len(excess(P).nonsimple)
    if count <= P.dim - 1:
        return DecompCertificate(
            VERDICT_INDECOMPOSABLE, EVIDENCE_DUAL_RULE, scope="dual",
            reason=f"{count} nonsimple vertices, at most d-1={P.dim - 1}")
    return None


def conflict_check(P: Polytope) -> Optional[str]:
    """Description of a soundness conflict between the rules, or None."""
    shephard = _shephard_certificate(P)
    if shephard is None:
        return None
    if pyramid_structure(P).is_pyramid:
        return f"{P.label}: Shephard facet {shephard.facet} but P is a pyramid"
    if P.is_realized and grow_certificate(P) is not None:
        return f"{P.label}: Shephard facet {shephard.facet} and an indecomposable subgraph"
    return None


@dataclass
class ReplayResult:
    """Outcome of re-checking a certificate."""
    valid: bool
    reason: str = ""


def _replay_subgraph(P: Polytope, subgraph: IndecSubgraph) -> ReplayResult:
    graph = GeometricGraph.skeleton_of(P)
    components: Dict[int, Set[int]] = {}
    n = P.num_vertices
    for step in subgraph.steps:
        if any(not 0 <= v < n for v in step.vertices):
            return ReplayResult(False, f"step {step.component}: vertex out of range")
        if step.component in components:
            return ReplayResult(False, f"component {step.component} defined twice")
        if step.rule == RULE_CYCLE:
            try:
                independent = check_cycle(graph, step.vertices)
            except CertificateError as e:
                return ReplayResult(False, f"step {step.component}: {e}")
            if not independent:
                return ReplayResult(False, f"step {step.component}: cycle is affinely dependent")
            components[step.component] = set(step.vertices)
        elif step.rule == RULE_MERGE:
            if len(step.operands) != 2 or any(c not in components for c in step.operands):
                return ReplayResult(False, f"step {step.component}: unknown operands")
            a, b = (components[c] for c in step.operands)
            shared = set(step.vertices)
            if len(shared) < 2 or not shared <= (a & b):
                return ReplayResult(False, f"step {step.component}: fewer than two shared vertices")
            components[step.component] = a | b
        elif step.rule == RULE_ABSORB:
            if len(step.operands) != 1 or step.operands[0] not in components:
                return ReplayResult(False, f"step {step.component}: unknown operand")
            if len(step.vertices) != 3:
                return ReplayResult(False, f"step {step.component}: absorb needs three vertices")
            base = components[step.operands[0]]
            x, a, b = step.vertices
            if x in base or a == b or a not in base or b not in base:
                return ReplayResult(False, f"step {step.component}: bad anchors")
            if not (graph.has_edge(x, a) and graph.has_edge(x, b)):
                return ReplayResult(False, f"step {step.component}: anchor is not adjacent")
            components[step.component] = base | {x}
        else:
            return ReplayResult(False, f"unknown rule {step.rule!r}")

    final = components.get(subgraph.final)
    if final is None:
        return ReplayResult(False, "final component is never derived")
    if final != set(subgraph.covered):
        return ReplayResult(False, "covered vertex list differs from the derivation")
    for j, facet in enumerate(P.facets):
        if not facet & final:
            return ReplayResult(False, f"facet {j} is not touched")
    return ReplayResult(True)


def verify_certificate(P: Polytope, certificate: DecompCertificate) -> ReplayResult:
    """Re-check every claim of a certificate against P."""
    evidence = certificate.evidence
    if evidence == EVIDENCE_NONE:
        return ReplayResult(certificate.verdict == VERDICT_UNKNOWN,
                            "" if certificate.verdict == VERDICT_UNKNOWN
                            else "a verdict without evidence")
    if evidence == EVIDENCE_SEGMENT:
        return ReplayResult(P.dim <= 1, "" if P.dim <= 1 else "not a segment")
    if evidence == EVIDENCE_SHEPHARD:
        j = certificate.facet
        if j is None or not 0 <= j < P.num_facets:
            return ReplayResult(False, "facet index missing or out of range")
        if j not in shephard_facets(P):
            return ReplayResult(False, f"facet {j} lacks Shephard's property")
        if outside_vertices(P, j) < 2:
            return ReplayResult(False, f"facet {j} has fewer than two outside vertices")
        return ReplayResult(True)
    if evidence == EVIDENCE_PYRAMID:
        apex = certificate.apex
        if apex is None or not 0 <= apex < P.num_vertices:
            return ReplayResult(False, "apex missing or out of range")
        missing = [f for f in P.facets if apex not in f]
        if len(missing) != 1 or missing[0] != P.all_vertices - {apex}:
            return ReplayResult(False, f"vertex {apex} is not an apex")
        return ReplayResult(True)
    if evidence == EVIDENCE_SUBGRAPH:
        if certificate.subgraph is None:
            return ReplayResult(False, "subgraph derivation missing")
        if not P.is_realized:
            return ReplayResult(False, "subgraph certificates need a realization")
        return _replay_subgraph(P, certificate.subgraph)
    if evidence == EVIDENCE_FEW_FACETS:
        subs = certificate.facet_certificates
        if len(subs) != P.num_facets:
            return ReplayResult(False, "one sub-certificate per facet expected")
        loose = 0
        for facet, sub in zip(P.facets, subs):
            if not sub.is_indecomposable:
                loose += 1
                continue
            inner = verify_certificate(face_as_polytope(P, facet), sub)
            if not inner.valid:
                return ReplayResult(False, f"facet {sorted(facet)}: {inner.reason}")
        if loose >= P.dim:
            return ReplayResult(False, f"{loose} facets not known indecomposable")
        return ReplayResult(True)
    if evidence == EVIDENCE_DUAL_RULE:
        count = len(excess(P).nonsimple)
        if count > P.dim - 1:
            return ReplayResult(False, f"{count} nonsimple vertices exceed d-1")
        return ReplayResult(True)
    return ReplayResult(False, f"unknown evidence {evidence!r}")
