"""
Polytope constructors: named families and generic operations.

Constructors that know their combinatorics (simplex products, pyramids,
free sums, products, truncation, stacking) compute facets directly and
attach exact coordinates. The others go through convex_hull.
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .exceptions import ConstructionError, KernelError
from .kernel import (
    affine_coordinates,
    beyond_face_point,
    beyond_point,
    centroid,
    cut,
    hull_polytope,
    push_point,
    supporting_halfspace,
    truncation_facets,
    visible_facets,
)
from .lattice import build_lattice, edges_from_incidence, to_mask
from .models import HalfSpace, Point, Polytope

logger = logging.getLogger(__name__)

FaceArg = Union[int, Iterable[int]]


def _unit(n: int, i: Optional[int], scale: Fraction = Fraction(1)) -> List[Fraction]:
    vec = [Fraction(0)] * n
    if i is not None:
        vec[i] = Fraction(scale)
    return vec


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ConstructionError(message)


def face_token(face: Iterable[int]) -> str:
    """Provenance token for a face: v3 for a vertex, {0,3} otherwise."""
    members = sorted(face)
    if len(members) == 1:
        return f"v{members[0]}"
    return "{" + ",".join(str(v) for v in members) + "}"


# ----------------------------------------------------------------------
# Named families
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def simplex(d: int) -> Polytope:
    _check(d >= 1, f"simplex needs d >= 1, got {d}")
    points = [_unit(d, None)] + [_unit(d, i) for i in range(d)]
    facets = [[v for v in range(d + 1) if v != skip] for skip in range(d + 1)]
    return Polytope.build(dim=d, facets=facets, vertices=points,
                          name=f"{d}-simplex", provenance=f"simplex({d})")


@lru_cache(maxsize=None)
def _simplex_product(dims: Tuple[int, ...]) -> Polytope:
    labels = list(itertools.product(*(range(k + 1) for k in dims)))
    points = []
    for label in labels:
        coords: List[Fraction] = []
        for k, j in zip(dims, label):
            coords.extend(_unit(k, j - 1 if j else None))
        points.append(coords)
    facets = []
    for factor, k in enumerate(dims):
        for a in range(k + 1):
            facets.append([i for i, label in enumerate(labels) if label[factor] != a])
    token = ",".join(str(k) for k in dims)
    return Polytope.build(dim=sum(dims), facets=facets, vertices=points,
                          name=f"Delta_{{{token}}}", provenance=f"delta({token})")


def simplex_product(dims: Sequence[int]) -> Polytope:
    """Cartesian product of standard simplices of the given dimensions."""
    dims = tuple(int(k) for k in dims)
    _check(len(dims) > 0, "simplex_product needs at least one factor")
    _check(all(k >= 1 for k in dims), f"every factor needs dimension >= 1, got {list(dims)}")
    if len(dims) == 1:
        return simplex(dims[0])
    return _simplex_product(dims)


@lru_cache(maxsize=None)
def prism(d: int) -> Polytope:
    _check(d >= 2, f"prism needs d >= 2, got {d}")
    return simplex_product([1, d - 1]).with_label(f"{d}-prism", f"prism({d})")


@lru_cache(maxsize=None)
def cube(d: int) -> Polytope:
    _check(d >= 1, f"cube needs d >= 1, got {d}")
    if d == 1:
        return segment()
    return simplex_product([1] * d).with_label(f"{d}-cube", f"cube({d})")


@lru_cache(maxsize=None)
def segment() -> Polytope:
    return simplex(1).with_label("segment", "segment")


@lru_cache(maxsize=None)
def square() -> Polytope:
    return simplex_product([1, 1]).with_label("square", "square")


@lru_cache(maxsize=None)
def polygon(n: int) -> Polytope:
    """Convex n-gon on the parabola y = x^2."""
    _check(n >= 3, f"polygon needs n >= 3, got {n}")
    points = [(t, t * t) for t in range(n)]
    facets = [[i, i + 1] for i in range(n - 1)] + [[0, n - 1]]
    token = "pentagon" if n == 5 else f"polygon({n})"
    return Polytope.build(dim=2, facets=facets, vertices=points,
                          name=f"{n}-gon", provenance=token)


def pentagon() -> Polytope:
    return polygon(5)


def _pyramid_once(P: Polytope) -> Polytope:
    apex = P.num_vertices
    facets = [sorted(P.all_vertices)] + [sorted(f | {apex}) for f in P.facets]
    points = None
    if P.is_realized:
        points = [list(p) + [Fraction(0)] for p in P.vertices]
        points.append(list(centroid(P.vertices)) + [Fraction(1)])
    return Polytope.build(dim=P.dim + 1, facets=facets, num_vertices=P.num_vertices + 1,
                          vertices=points)


def pyramid(P: Polytope, r: int = 1) -> Polytope:
    """r-fold pyramid; every apex sits over the centroid of the previous base."""
    _check(r >= 0, f"pyramid fold must be nonnegative, got {r}")
    result = P
    for _ in range(r):
        result = _pyramid_once(result)
    if r == 0:
        return P
    inner = P.provenance or "?"
    token = f"pyr({inner})" if r == 1 else f"pyr^{r}({inner})"
    return result.with_label(f"{r}-fold pyramid over {P.name or P.label}", token)


@lru_cache(maxsize=None)
def triplex(k: int, m: int) -> Polytope:
    """M_{k,m}: m-fold pyramid over the simplicial k-prism (d = k + m)."""
    _check(k >= 1 and m >= 0, f"triplex needs k >= 1 and m >= 0, got ({k},{m})")
    _check(k + m >= 1, "triplex needs positive dimension")
    base = segment() if k == 1 else prism(k)
    result = pyramid(base, m) if m else base
    return result.with_label(f"M_{{{k},{m}}}", f"triplex({k},{m})")


@lru_cache(maxsize=None)
def pentasm(d: int) -> Polytope:
    """Minkowski sum of a d-simplex and a segment parallel to a triangle but to no edge."""
    _check(d >= 2, f"pentasm needs d >= 2, got {d}")
    base = [tuple(p) for p in simplex(d).vertices]
    shift = [Fraction(0)] * d
    shift[0] = shift[1] = Fraction(1, 3)
    moved = [tuple(a + b for a, b in zip(p, shift)) for p in base]
    return hull_polytope(base + moved, name=f"{d}-pentasm", provenance=f"pentasm({d})")


@lru_cache(maxsize=None)
def capped_prism(k: int, d: int) -> Polytope:
    """
    CP_{k,d}: the d-prism with a vertex stacked on one simplex facet, lying in
    the hyperplanes of the side facets opposite v_{k+1}..v_d.
    """
    _check(d >= 2, f"capped prism needs d >= 2, got {d}")
    _check(1 <= k <= d, f"capped prism needs 1 <= k <= d, got k={k}, d={d}")
    if k == 1:
        return prism(d).with_label(f"CP_{{1,{d}}}", f"cp(1,{d})")

    # u_i = i-1, v0 = d, v_i = d+i for i = 1..d
    u = list(range(d))
    v0 = d
    v = [d + i for i in range(1, d + 1)]
    facets = [u]
    for i in range(d):
        side = [u[j] for j in range(d) if j != i] + [v[j] for j in range(d) if j != i]
        if i >= k:
            side.append(v0)
        facets.append(side)
    for i in range(k):
        facets.append([v0] + [v[j] for j in range(d) if j != i])

    base = [_unit(d - 1, i) for i in range(d - 1)] + [_unit(d - 1, None)]
    cap = [sum((base[i][c] for i in range(k)), Fraction(0)) / k for c in range(d - 1)]
    points = ([p + [Fraction(0)] for p in base]
              + [cap + [Fraction(2)]]
              + [p + [Fraction(1)] for p in base])
    return Polytope.build(dim=d, facets=facets, vertices=points,
                          name=f"CP_{{{k},{d}}}", provenance=f"cp({k},{d})")


def _first_simple_vertex(P: Polytope) -> int:
    for v in range(P.num_vertices):
        if len(P.vertex_facets[v]) == P.dim:
            return v
    raise ConstructionError(f"{P.label} has no simple vertex")


def _first_simple_edge(P: Polytope) -> Tuple[int, int]:
    simple = {v for v in range(P.num_vertices) if len(P.vertex_facets[v]) == P.dim}
    for u, w in edges_from_incidence(P):
        if u in simple and w in simple:
            return u, w
    raise ConstructionError(f"{P.label} has no simple edge")


@lru_cache(maxsize=None)
def family_A(d: int) -> Polytope:
    """Prism over a (d-3)-fold pyramid over a quadrilateral."""
    _check(d >= 3, f"A_d needs d >= 3, got {d}")
    return product(pyramid(square(), d - 3), segment()).with_label(f"A_{d}", f"A({d})")


@lru_cache(maxsize=None)
def family_B(d: int) -> Polytope:
    """Truncation of a simple vertex of the (3, d-3)-triplex."""
    _check(d >= 3, f"B_d needs d >= 3, got {d}")
    base = triplex(3, d - 3)
    result, _ = truncate(base, [_first_simple_vertex(base)])
    return result.with_label(f"B_{d}", f"B({d})")


@lru_cache(maxsize=None)
def family_C(d: int) -> Polytope:
    """Truncation of a simple edge of the (2, d-2)-triplex."""
    _check(d >= 3, f"C_d needs d >= 3, got {d}")
    base = triplex(2, d - 2)
    result, _ = truncate(base, _first_simple_edge(base))
    return result.with_label(f"C_{d}", f"C({d})")


@lru_cache(maxsize=None)
def family_sigma(d: int) -> Polytope:
    """Sigma_d from explicit coordinates; its excess sits in the origin."""
    _check(d >= 3, f"Sigma_d needs d >= 3, got {d}")
    e = [_unit(d, i) for i in range(d)]
    points = [_unit(d, None), e[0], e[1], [a + b for a, b in zip(e[0], e[1])]]
    for k in range(2, d):
        points.append([a + b for a, b in zip(e[0], e[k])])
        points.append([a + b for a, b in zip(e[1], e[k])])
        points.append([a + b + 2 * c for a, b, c in zip(e[0], e[1], e[k])])
    return hull_polytope(points, name=f"Sigma_{d}", provenance=f"sigma({d})")


ABCS_FAMILIES = {
    'A': family_A,
    'B': family_B,
    'C': family_C,
    'Sigma': family_sigma,
}


def family_ABCS(kind: str, d: int) -> Polytope:
    """A_d, B_d, C_d or Sigma_d by name."""
    build = ABCS_FAMILIES.get(kind)
    _check(build is not None, f"unknown family {kind!r}, expected one of {sorted(ABCS_FAMILIES)}")
    return build(d)


@lru_cache(maxsize=None)
def gamma(m: int, n: int) -> Polytope:
    """Gamma_{m,n}: Delta_{m,n} with one vertex truncated."""
    _check(m >= 1 and n >= 1, f"gamma needs m, n >= 1, got ({m},{n})")
    result, _ = truncate(simplex_product([m, n]), [0])
    return result.with_label(f"Gamma_{{{m},{n}}}", f"gamma({m},{n})")


@lru_cache(maxsize=None)
def J(d: int) -> Polytope:
    """J_d = Gamma_{d-1,1}, the d-prism with one vertex truncated."""
    _check(d >= 2, f"J_d needs d >= 2, got {d}")
    return gamma(d - 1, 1).with_label(f"J_{d}", f"J({d})")


@lru_cache(maxsize=None)
def antiwedge() -> Polytope:
    """The tetragonal antiwedge: six vertices, ten edges, six facets."""
    points = [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4), (3, 1, 4), (0, 4, 4)]
    return hull_polytope(points, name="tetragonal antiwedge", provenance="TA")


@lru_cache(maxsize=None)
def cyclic(n: int, d: int) -> Polytope:
    """Cyclic polytope on the moment curve at t = 1..n."""
    _check(d >= 2, f"cyclic polytope needs d >= 2, got {d}")
    _check(n >= d + 1, f"cyclic polytope needs n >= d+1, got n={n}, d={d}")
    points = [[Fraction(t) ** i for i in range(1, d + 1)] for t in range(1, n + 1)]
    return hull_polytope(points, name=f"C({n},{d})", provenance=f"cyclic({n},{d})")


# ----------------------------------------------------------------------
# Generic operations
# ----------------------------------------------------------------------

def _centered(P: Polytope) -> List[Point]:
    if not P.is_realized:
        raise ConstructionError(f"{P.label} has no realization")
    local, _ = affine_coordinates(P.vertices)
    middle = centroid(local)
    return [tuple(a - b for a, b in zip(p, middle)) for p in local]


def free_sum(P: Polytope, Q: Polytope) -> Polytope:
    """Both operands centred at the origin in complementary coordinate blocks."""
    p_pts, q_pts = _centered(P), _centered(Q)
    zeros_p = [Fraction(0)] * P.dim
    zeros_q = [Fraction(0)] * Q.dim
    points = [list(p) + zeros_q for p in p_pts] + [zeros_p + list(q) for q in q_pts]
    offset = P.num_vertices
    facets = [sorted(F) + [offset + w for w in G] for F in P.facets for G in Q.facets]
    return Polytope.build(dim=P.dim + Q.dim, facets=facets, vertices=points,
                          name=f"{P.name or P.label} + {Q.name or Q.label}",
                          provenance=f"free_sum({P.provenance or '?'},{Q.provenance or '?'})")


def bipyramid(P: Polytope) -> Polytope:
    result = free_sum(P, segment())
    return result.with_label(f"bipyramid over {P.name or P.label}",
                             f"bipyramid({P.provenance or '?'})")


def product(P: Polytope, Q: Polytope) -> Polytope:
    """Cartesian product; vertex (i, j) is numbered i * f0(Q) + j."""
    nq = Q.num_vertices
    facets = []
    for F in P.facets:
        facets.append([i * nq + j for i in F for j in range(nq)])
    for G in Q.facets:
        facets.append([i * nq + j for i in range(P.num_vertices) for j in G])
    points = None
    if P.is_realized and Q.is_realized:
        points = [list(p) + list(q) for p in P.vertices for q in Q.vertices]
    return Polytope.build(dim=P.dim + Q.dim, facets=facets,
                          num_vertices=P.num_vertices * nq, vertices=points,
                          name=f"{P.name or P.label} x {Q.name or Q.label}",
                          provenance=f"product({P.provenance or '?'},{Q.provenance or '?'})")


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if not (P.is_realized and Q.is_realized):
        raise ConstructionError("Minkowski sum needs realized operands")
    if P.ambient_dim != Q.ambient_dim:
        raise ConstructionError(
            f"ambient dimensions differ: {P.ambient_dim} and {Q.ambient_dim}")
    points = [[a + b for a, b in zip(p, q)] for p in P.vertices for q in Q.vertices]
    return hull_polytope(points, name=f"{P.name or P.label} + {Q.name or Q.label}",
                         provenance=f"minkowski({P.provenance or '?'},{Q.provenance or '?'})")


def _proper_face(P: Polytope, face: Iterable[int]) -> FrozenSet[int]:
    members = frozenset(face)
    if not members:
        raise ConstructionError("the empty face cannot be truncated or stacked")
    lattice = build_lattice(P)
    mask = to_mask(members)
    if mask not in lattice.ranks or lattice.ranks[mask] >= P.dim:
        raise ConstructionError(f"{sorted(members)} is not a proper face of {P.label}")
    return members


def truncate(P: Polytope, face: Iterable[int]) -> Tuple[Polytope, int]:
    """
    Cut off a proper face with a hyperplane separating it from the other
    vertices. Returns the result and the index of the underfacet.
    """
    members = _proper_face(P, face)
    token = f"truncate({P.provenance or '?'},{face_token(members)})"
    name = f"{P.name or P.label} truncated at {sorted(members)}"

    if P.is_realized:
        h, contact = supporting_halfspace(P, members)
        below = max(h.value(P.vertices[v]) + contact
                    for v in range(P.num_vertices) if v not in members)
        result, under = cut(P, HalfSpace(h.normal, (contact + below) / 2))
        return result.with_label(name, token), under

    crossing = sorted((w, u) if u in members else (u, w)
                      for u, w in edges_from_incidence(P)
                      if (u in members) != (w in members))
    facets, underfacet, _ = truncation_facets(P, members, crossing)
    result = Polytope.build(dim=P.dim, facets=facets,
                            num_vertices=P.num_vertices - len(members) + len(crossing),
                            name=name, provenance=token)
    logger.debug("combinatorial truncation of %s at %s", P.label, sorted(members))
    return result, result.facet_index(underfacet)


def beneath_beyond(P: Polytope, visible: Iterable[int],
                   point: Optional[Sequence[Fraction]] = None) -> Polytope:
    """
    Add one vertex beyond exactly the given facets and beneath the rest.

    The new vertex is numbered after the surviving old vertices; old vertices
    lying only in visible facets disappear.
    """
    visible = frozenset(visible)
    if not visible:
        raise KernelError("a new vertex must lie beyond at least one facet")
    lattice = build_lattice(P)
    ridge_rank = P.dim - 2
    hidden = [j for j in range(P.num_facets) if j not in visible]
    if not hidden:
        raise KernelError("a new vertex cannot lie beyond every facet")

    swallowed = {v for v in range(P.num_vertices) if P.vertex_facets[v] <= visible}
    kept = [v for v in range(P.num_vertices) if v not in swallowed]
    position = {v: i for i, v in enumerate(kept)}
    apex = len(kept)

    facets = [[position[v] for v in P.facets[j]] for j in hidden]
    for i in sorted(visible):
        for j in hidden:
            meet = P.facets[i] & P.facets[j]
            if not meet:
                continue
            if lattice.ranks.get(to_mask(meet)) == ridge_rank:
                facets.append([position[v] for v in meet] + [apex])

    coords = None
    if point is not None and P.is_realized:
        coords = [P.vertices[v] for v in kept] + [tuple(Fraction(c) for c in point)]
    return Polytope.build(dim=P.dim, facets=facets, num_vertices=apex + 1, vertices=coords)


def extend(P: Polytope, point: Sequence[Fraction]) -> Polytope:
    """conv(P + point) for a point outside P."""
    beyond, on = visible_facets(P, point)
    if on:
        logger.debug("point lies on %d facet hyperplanes; using the hull", len(on))
        return hull_polytope(list(P.vertices) + [tuple(point)])
    if not beyond:
        raise KernelError("point lies inside the polytope")
    return beneath_beyond(P, beyond, point)


def stack(P: Polytope, target: FaceArg) -> Polytope:
    """
    Add a vertex beyond one facet (target is a facet index) or beyond
    exactly the facets containing a face (target is a vertex set).
    """
    if isinstance(target, int):
        if not 0 <= target < P.num_facets:
            raise ConstructionError(f"facet index {target} out of range")
        visible = frozenset({target})
        token = f"stack({P.provenance or '?'},f{target})"
        point = beyond_point(P, target) if P.is_realized else None
    else:
        members = _proper_face(P, target)
        visible = frozenset(j for j, f in enumerate(P.facets) if members <= f)
        token = f"stack({P.provenance or '?'},{face_token(members)})"
        point = beyond_face_point(P, members) if P.is_realized else None
    result = extend(P, point) if point is not None else beneath_beyond(P, visible)
    return result.with_label(f"{P.name or P.label} stacked", token)


def push(P: Polytope, facet: int, level: int) -> Polytope:
    """Add the vertex push_point(P, facet, level)."""
    if not P.is_realized:
        raise ConstructionError(f"{P.label} has no realization")
    if not 0 <= facet < P.num_facets:
        raise ConstructionError(f"facet index {facet} out of range")
    try:
        point = push_point(P, facet, level)
    except KernelError as e:
        raise ConstructionError(str(e)) from e
    result = extend(P, point)
    return result.with_label(f"{P.name or P.label} pushed",
                             f"push({P.provenance or '?'},f{facet},{level})")


# ----------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------

def _partitions(n: int, largest: Optional[int] = None) -> List[Tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    result = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            result.append((first,) + rest)
    return result


def family_catalog(d: int, max_vertices: int) -> List[Polytope]:
    """Every named-family instance of dimension d with at most max_vertices vertices."""
    _check(d >= 2, f"family catalog needs d >= 2, got {d}")
    builders = []

    def offer(f0: int, build) -> None:
        if f0 <= max_vertices:
            builders.append(build)

    offer(d + 1, lambda: simplex(d))
    for parts in _partitions(d):
        if len(parts) < 2:
            continue
        f0 = 1
        for k in parts:
            f0 *= k + 1
        offer(f0, lambda parts=parts: simplex_product(list(parts)))
    for k in range(2, d + 1):
        offer(d + k, lambda k=k: triplex(k, d - k))
    offer(2 * d + 1, lambda: pentasm(d))
    for k in range(3, d + 1):
        offer(2 * d + 1, lambda k=k: capped_prism(k, d))
    if d >= 3:
        for kind in ABCS_FAMILIES:
            f0 = 2 * d + 2 if kind in ('A', 'B') else 3 * d - 2
            offer(f0, lambda kind=kind: family_ABCS(kind, d))
    for n in range(1, d):
        m = d - n
        if m >= n:
            offer(m * n + 2 * m + 2 * n, lambda m=m, n=n: gamma(m, n))
    if d == 3:
        offer(6, antiwedge)
    if d == 2:
        for n in range(4, max_vertices + 1):
            offer(n, lambda n=n: polygon(n))
    else:
        for n in range(d + 2, max_vertices + 1):
            offer(n, lambda n=n: cyclic(n, d))
    if d == 4:
        for a in range(3, max_vertices):
            for b in range(3, a + 1):
                offer(a + b, lambda a=a, b=b: free_sum(polygon(a), polygon(b)))
    if d >= 3:
        for a in range(4, max_vertices):
            offer(a + d - 1, lambda a=a: free_sum(polygon(a), simplex(d - 2)))
    offer(d + 2, lambda: bipyramid(simplex(d - 1)))

    members = []
    for build in builders:
        try:
            members.append(build())
        except (ConstructionError, KernelError) as e:
            logger.debug("family catalog skipped a member: %s", e)
    logger.debug("family catalog d=%d, f0 <= %d: %d members", d, max_vertices, len(members))
    return members
