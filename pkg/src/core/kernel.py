"""
Exact rational linear algebra and convex-hull primitives.

Everything here works on fractions.Fraction; no tolerance is used anywhere.
Polytopes whose realization spans fewer dimensions than the ambient space are
handled in the coordinates of their own affine hull (see AffineFrame).
"""

import logging
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .exceptions import KernelError, ConstructionError
from .models import HalfSpace, HullResult, Point, Polytope, to_point

logger = logging.getLogger(__name__)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def centroid(points: Sequence[Sequence[Fraction]]) -> Point:
    n = len(points)
    if n == 0:
        raise KernelError("centroid of an empty point set")
    dim = len(points[0])
    return tuple(sum((p[i] for p in points), Fraction(0)) / n for i in range(dim))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integer_row(row: Sequence[Fraction]) -> List[int]:
    """Scale a rational row by the LCM of its denominators."""
    scale = reduce(_lcm, (Fraction(x).denominator for x in row), 1)
    return [int(Fraction(x) * scale) for x in row]


def primitive(vector: Sequence[Fraction]) -> Tuple[int, ...]:
    """Smallest integer multiple of a nonzero rational vector (same direction)."""
    ints = _integer_row(vector)
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        raise KernelError("zero vector has no primitive form")
    return tuple(x // g for x in ints)


def _bareiss(rows: List[List[int]], ncols: int) -> List[int]:
    """
    Fraction-free row echelon form, in place, over the first ncols columns.

    Returns the pivot columns. Entries below each pivot are zeroed and the
    remaining rows hold exact minors, so every division is exact.
    """
    m = len(rows)
    width = len(rows[0]) if rows else 0
    prev = 1
    r = 0
    pivots: List[int] = []
    for c in range(ncols):
        if r == m:
            break
        pivot_row = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, m):
            lead = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, width):
                row_i[j] = (piv * row_i[j] - lead * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def _back_substitute(rows: List[List[int]], pivots: List[int], ncols: int,
                     rhs_col: Optional[int], free_values: Dict[int, Fraction]) -> List[Fraction]:
    x = [Fraction(0)] * ncols
    for c, val in free_values.items():
        x[c] = val
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        row = rows[i]
        acc = Fraction(row[rhs_col]) if rhs_col is not None else Fraction(0)
        for j in range(c + 1, ncols):
            if row[j] and x[j]:
                acc -= row[j] * x[j]
        x[c] = acc / row[c]
    return x


def rank_and_solve(matrix: Sequence[Sequence], rhs: Optional[Sequence] = None
                   ) -> Tuple[int, Optional[List[Fraction]]]:
    """
    Exact rank of a rational matrix and, if rhs is given, one solution.

    Free variables are set to zero. An inconsistent system returns
    (rank, None); that is an answer, not a failure.
    """
    rows_in = [[Fraction(x) for x in row] for row in matrix]
    if rows_in:
        ncols = len(rows_in[0])
        if any(len(row) != ncols for row in rows_in):
            raise KernelError("matrix is not rectangular")
    else:
        ncols = 0
    if rhs is not None and len(rhs) != len(rows_in):
        raise KernelError(f"rhs has {len(rhs)} entries for {len(rows_in)} rows")

    if rhs is not None:
        rows = [_integer_row(row + [Fraction(b)]) for row, b in zip(rows_in, rhs)]
    else:
        rows = [_integer_row(row) for row in rows_in]

    if not rows:
        return 0, ([Fraction(0)] * ncols if rhs is not None else None)

    pivots = _bareiss(rows, ncols)
    rank = len(pivots)
    if rhs is None:
        return rank, None
    for i in range(rank, len(rows)):
        if rows[i][ncols] != 0:
            return rank, None
    return rank, _back_substitute(rows, pivots, ncols, ncols, {})


def nullspace(matrix: Sequence[Sequence], ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of the right nullspace, one vector per free column."""
    rows = [_integer_row([Fraction(x) for x in row]) for row in matrix]
    if ncols is None:
        if not rows:
            raise KernelError("nullspace of an empty matrix needs ncols")
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    pivots = _bareiss(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        basis.append(_back_substitute(rows, pivots, ncols, None, {f: Fraction(1)}))
    return basis


def affine_dim(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    if not points:
        raise KernelError("affine_dim of an empty point list")
    base = to_point(points[0])
    diffs = []
    for p in points[1:]:
        q = to_point(p)
        if len(q) != len(base):
            raise KernelError("points of different ambient dimension")
        diffs.append([a - b for a, b in zip(q, base)])
    if not diffs:
        return 0
    rank, _ = rank_and_solve(diffs)
    return rank


def affine_coordinates(points: Sequence[Sequence]) -> Tuple[List[Point], List[int]]:
    """
    Express points in coordinates of their own affine hull.

    Projects onto a set of pivot coordinate columns; the projection is
    injective on the affine hull. Returns (projected points, columns).
    """
    if not points:
        raise KernelError("affine_coordinates of an empty point list")
    pts = [to_point(p) for p in points]
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    if not diffs:
        return [tuple() for _ in pts], []
    # echelon pivot columns are independent columns of the difference matrix
    rows = [_integer_row(row) for row in diffs]
    cols = _bareiss(rows, len(base))
    return [tuple(p[c] for c in cols) for p in pts], cols


class AffineFrame:
    """Coordinates on the affine hull of a point set, with a lift back."""

    def __init__(self, points: Sequence[Sequence[Fraction]]):
        self.points = [to_point(p) for p in points]
        self.projected, self.columns = affine_coordinates(self.points)
        self.ambient = len(self.points[0])
        self.dim = len(self.columns)
        # affinely independent basis for lifting
        self._origin = self.points[0]
        basis: List[Point] = []
        current = 0
        for p in self.points[1:]:
            if current == self.dim:
                break
            trial = basis + [tuple(a - b for a, b in zip(p, self._origin))]
            if rank_and_solve(trial)[0] > current:
                basis = trial
                current += 1
        self._basis = basis
        self._origin_proj = self.projected[0]

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient

    def project(self, point: Sequence[Fraction]) -> Point:
        return tuple(Fraction(point[c]) for c in self.columns)

    def lift(self, y: Sequence[Fraction]) -> Point:
        """The point of the affine hull whose projection is y."""
        if self.is_full:
            return to_point(y)
        target = [Fraction(a) - b for a, b in zip(y, self._origin_proj)]
        matrix = [[vec[c] for vec in self._basis] for c in self.columns]
        _, mu = rank_and_solve(matrix, target)
        if mu is None:
            raise KernelError("point does not lie in the affine hull")
        return tuple(
            self._origin[i] + sum((m * vec[i] for m, vec in zip(mu, self._basis)), Fraction(0))
            for i in range(self.ambient)
        )

    def lift_normal(self, normal: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        full = [Fraction(0)] * self.ambient
        for value, c in zip(normal, self.columns):
            full[c] = Fraction(value)
        return tuple(full)


class _Facet:
    __slots__ = ('normal', 'offset', 'points')

    def __init__(self, normal: Tuple[int, ...], offset: Fraction, points: Set[int]):
        self.normal = normal
        self.offset = offset
        self.points = points

    def slack(self, p: Point) -> Fraction:
        return dot(self.normal, p) - self.offset


def _hyperplane(pts: List[Point], on: Sequence[int], below: int) -> Tuple[Tuple[int, ...], Fraction]:
    """Primitive outer normal of the hyperplane through `on`, with `below` strictly inside."""
    base = pts[on[0]]
    diffs = [[a - b for a, b in zip(pts[i], base)] for i in on[1:]]
    basis = nullspace(diffs, ncols=len(base))
    if len(basis) != 1:
        raise KernelError("points do not span a hyperplane")
    normal = primitive(basis[0])
    offset = dot(normal, base)
    if dot(normal, pts[below]) > offset:
        normal = tuple(-c for c in normal)
        offset = -offset
    return normal, offset


def _normalized(normal: Sequence[Fraction], offset: Fraction) -> Tuple[Tuple[int, ...], Fraction]:
    ints = _integer_row(list(normal) + [offset])
    g = reduce(gcd, (abs(x) for x in ints[:-1]), 0)
    if g == 0:
        raise KernelError("degenerate hyperplane")
    return tuple(x // g for x in ints[:-1]), Fraction(ints[-1], g)


def _hull_full(pts: List[Point]) -> Tuple[List[int], List[Tuple[Tuple[int, ...], Fraction, FrozenSet[int]]]]:
    """
    Beneath-beyond hull of full-dimensional points (already lex-sorted).

    Returns vertex indices and facets (normal, offset, vertex index set).
    """
    k = len(pts[0])
    if k == 1:
        lo = min(range(len(pts)), key=lambda i: pts[i])
        hi = max(range(len(pts)), key=lambda i: pts[i])
        return sorted({lo, hi}), [
            ((-1,), -pts[lo][0], frozenset({lo})),
            ((1,), pts[hi][0], frozenset({hi})),
        ]

    simplex = [0]
    for i in range(1, len(pts)):
        if len(simplex) == k + 1:
            break
        if affine_dim([pts[j] for j in simplex] + [pts[i]]) == len(simplex):
            simplex.append(i)
    if len(simplex) != k + 1:
        raise KernelError("input is not full-dimensional")

    facets: List[_Facet] = []
    for j in simplex:
        on = [i for i in simplex if i != j]
        normal, offset = _hyperplane(pts, on, j)
        facets.append(_Facet(normal, offset, set(on)))

    in_simplex = set(simplex)
    for p_idx in range(len(pts)):
        if p_idx in in_simplex:
            continue
        p = pts[p_idx]
        slacks = [f.slack(p) for f in facets]
        visible = [i for i, s in enumerate(slacks) if s > 0]
        if not visible:
            continue
        boundary = set().union(*(f.points for f in facets))
        invisible = [i for i, s in enumerate(slacks) if s <= 0]
        created: Dict[Tuple[Tuple[int, ...], Fraction], _Facet] = {}
        for vi in visible:
            fv = facets[vi]
            for gi in invisible:
                fg = facets[gi]
                shared = fv.points & fg.points
                if len(shared) < k - 1:
                    continue
                if affine_dim([pts[i] for i in shared]) != k - 2:
                    continue
                s_f, s_g = slacks[vi], slacks[gi]
                if s_g == 0:
                    fg.points.add(p_idx)
                    continue
                normal = [(-s_g) * a + s_f * b for a, b in zip(fv.normal, fg.normal)]
                offset = (-s_g) * fv.offset + s_f * fg.offset
                key = _normalized(normal, offset)
                if key in created:
                    continue
                n_int, off = key
                on_plane = {i for i in boundary if dot(n_int, pts[i]) == off}
                on_plane.add(p_idx)
                created[key] = _Facet(n_int, off, on_plane)
        survivors = [facets[i] for i in invisible]
        facets = survivors + list(created.values())
        logger.debug("hull: inserted point %d, %d visible, %d facets", p_idx, len(visible), len(facets))

    boundary = set().union(*(f.points for f in facets))
    vertices = []
    for q in sorted(boundary):
        containing = [f.points for f in facets if q in f.points]
        if set.intersection(*containing) == {q}:
            vertices.append(q)
    vset = set(vertices)
    out = [(f.normal, f.offset, frozenset(f.points & vset)) for f in facets]
    return vertices, out


def convex_hull(points: Iterable[Sequence]) -> HullResult:
    """
    Exact convex hull of a finite point set.

    Degenerate input is handled in the affine hull's own coordinates.
    Vertices come out in lexicographic order and facets sorted by their
    vertex index tuples.
    """
    pts = sorted(set(to_point(p) for p in points))
    if len(pts) < 2:
        raise KernelError("convex hull needs at least 2 distinct points")
    ambient = len(pts[0])
    if any(len(p) != ambient for p in pts):
        raise KernelError("points of different ambient dimension")

    k = affine_dim(pts)
    if k < ambient:
        frame = AffineFrame(pts)
        work = frame.projected
    else:
        frame = None
        work = pts

    vertex_idx, raw = _hull_full(work)
    position = {old: new for new, old in enumerate(vertex_idx)}
    facets = []
    for normal, offset, members in raw:
        lifted = frame.lift_normal(normal) if frame else tuple(Fraction(c) for c in normal)
        facets.append((HalfSpace(lifted, Fraction(offset)),
                       frozenset(position[i] for i in members)))
    facets.sort(key=lambda item: tuple(sorted(item[1])))
    return HullResult(
        vertices=tuple(pts[i] for i in vertex_idx),
        facets=tuple(facets),
        dim=k,
    )


def hull_polytope(points: Iterable[Sequence], name: str = "", provenance: str = "") -> Polytope:
    """Convex hull packaged as a Polytope."""
    return convex_hull(points).to_polytope(name=name, provenance=provenance)


def _require_realized(P: Polytope) -> None:
    if not P.is_realized:
        raise ConstructionError(f"{P.label} has no realization")


@lru_cache(maxsize=1024)
def _frame_halfspaces(P: Polytope) -> Tuple[AffineFrame, Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...]]:
    """Outer facet normals of P in affine-hull coordinates."""
    _require_realized(P)
    frame = AffineFrame(P.vertices)
    if frame.dim != P.dim:
        raise KernelError(
            f"realization of {P.label} spans dimension {frame.dim}, expected {P.dim}")
    pts = frame.projected
    result = []
    for facet in P.facets:
        members = sorted(facet)
        outside = next((v for v in range(P.num_vertices) if v not in facet), None)
        if outside is None or not members:
            raise KernelError(f"facet {members} of {P.label} has no outside vertex")
        base = pts[members[0]]
        diffs = [[a - b for a, b in zip(pts[i], base)] for i in members[1:]]
        basis = nullspace(diffs, ncols=P.dim) if diffs else nullspace([[0] * P.dim], ncols=P.dim)
        if len(basis) != 1:
            raise KernelError(f"facet {members} of {P.label} does not span a hyperplane")
        normal = tuple(Fraction(c) for c in primitive(basis[0]))
        offset = dot(normal, base)
        if dot(normal, pts[outside]) > offset:
            normal = tuple(-c for c in normal)
            offset = -offset
        result.append((normal, offset))
    return frame, tuple(result)


def facet_halfspaces(P: Polytope) -> List[HalfSpace]:
    """The outer halfspace of every facet of a realized polytope."""
    frame, local = _frame_halfspaces(P)
    return [HalfSpace(frame.lift_normal(n), off) for n, off in local]


def supporting_halfspace(P: Polytope, face: Iterable[int]) -> Tuple[HalfSpace, Fraction]:
    """
    A halfspace touching P exactly in the given face.

    The normal is the sum of the outer normals of all facets containing
    the face; returns (halfspace, contact value).
    """
    _require_realized(P)
    face_set = frozenset(face)
    if not face_set:
        raise KernelError("the empty set is not a supported face")
    containing = [j for j, f in enumerate(P.facets) if face_set <= f]
    if not containing:
        raise KernelError(f"{sorted(face_set)} is not a proper face of {P.label}")
    meet = frozenset.intersection(*(P.facets[j] for j in containing))
    if meet != face_set:
        raise KernelError(f"{sorted(face_set)} is not a face of {P.label}")

    halfspaces = facet_halfspaces(P)
    normal = [Fraction(0)] * P.ambient_dim
    for j in containing:
        for i, c in enumerate(halfspaces[j].normal):
            normal[i] += c
    contact = dot(normal, P.vertices[min(face_set)])
    for v in range(P.num_vertices):
        value = dot(normal, P.vertices[v])
        if v in face_set and value != contact:
            raise KernelError(f"{sorted(face_set)} is not a face of {P.label}")
        if v not in face_set and value >= contact:
            raise KernelError(f"{sorted(face_set)} is not a face of {P.label}")
    return HalfSpace(tuple(normal), contact), contact


def _breakpoints(P: Polytope, start: Point, direction: Point,
                 skip: FrozenSet[int]) -> List[Fraction]:
    """Ray parameters at which start + t*direction crosses facet hyperplanes."""
    _, local = _frame_halfspaces(P)
    times = []
    for j, (normal, offset) in enumerate(local):
        if j in skip:
            continue
        rate = dot(normal, direction)
        if rate > 0:
            times.append((offset - dot(normal, start)) / rate)
    return times


def beyond_point(P: Polytope, facet: int) -> Point:
    """A point beyond the given facet and beneath every other facet."""
    return push_point(P, facet, 0)


def push_point(P: Polytope, facet: int, level: int) -> Point:
    """
    Walk the outer normal ray of a facet from its centroid.

    Level 0 is the stacking point; level k lies between the k-th and
    (k+1)-th breakpoints at which further facets become visible; the last
    level lies one unit past the final breakpoint.
    """
    frame, local = _frame_halfspaces(P)
    if not 0 <= facet < P.num_facets:
        raise KernelError(f"facet index {facet} out of range")
    if level < 0:
        raise KernelError("push level must be nonnegative")
    normal, _ = local[facet]
    start = centroid([frame.projected[v] for v in sorted(P.facets[facet])])
    stops = sorted(set(_breakpoints(P, start, normal, frozenset({facet}))))
    if any(t <= 0 for t in stops):
        raise KernelError("facet centroid is not beneath the other facets")
    if not stops:
        if level > 0:
            raise KernelError(f"push level {level} exceeds available levels (0)")
        t = Fraction(1)
    elif level < len(stops):
        low = Fraction(0) if level == 0 else stops[level - 1]
        t = (low + stops[level]) / 2
    elif level == len(stops):
        t = stops[-1] + 1
    else:
        raise KernelError(f"push level {level} exceeds available levels ({len(stops)})")
    point = tuple(s + t * n for s, n in zip(start, normal))
    return frame.lift(point)


def push_levels(P: Polytope, facet: int) -> int:
    """Number of the highest valid push level for a facet."""
    frame, local = _frame_halfspaces(P)
    normal, _ = local[facet]
    start = centroid([frame.projected[v] for v in sorted(P.facets[facet])])
    return len(set(_breakpoints(P, start, normal, frozenset({facet}))))


def beyond_face_point(P: Polytope, face: Iterable[int]) -> Point:
    """
    A point beyond exactly the facets containing a face.

    Moves from the face centroid away from the polytope centroid, to the
    midpoint of the admissible interval.
    """
    frame, local = _frame_halfspaces(P)
    face_set = frozenset(face)
    containing = frozenset(j for j, f in enumerate(P.facets) if face_set <= f)
    if not face_set or not containing:
        raise KernelError(f"{sorted(face_set)} is not a proper face of {P.label}")
    start = centroid([frame.projected[v] for v in sorted(face_set)])
    middle = centroid(frame.projected)
    direction = tuple(a - b for a, b in zip(start, middle))
    stops = _breakpoints(P, start, direction, containing)
    if any(t <= 0 for t in stops):
        raise KernelError(f"{sorted(face_set)} is not a face of {P.label}")
    t = min(stops) / 2 if stops else Fraction(1)
    point = tuple(s + t * n for s, n in zip(start, direction))
    return frame.lift(point)


def visible_facets(P: Polytope, point: Sequence[Fraction]) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Facets strictly beyond the point, and facets whose hyperplane contains it."""
    halfspaces = facet_halfspaces(P)
    beyond, on = set(), set()
    for j, h in enumerate(halfspaces):
        value = h.value(point)
        if value > 0:
            beyond.add(j)
        elif value == 0:
            on.add(j)
    return frozenset(beyond), frozenset(on)


def truncation_facets(P: Polytope, removed: FrozenSet[int],
                      crossing: Sequence[Tuple[int, int]]) -> Tuple[List[FrozenSet[int]], FrozenSet[int], List[int]]:
    """
    Facets after cutting off the vertices in `removed`.

    crossing lists the edges (kept, removed) the hyperplane meets; new vertex
    i of the result is crossing edge i, numbered after the kept vertices.
    Returns (facets, underfacet, kept vertex list).
    """
    kept = [v for v in range(P.num_vertices) if v not in removed]
    position = {v: i for i, v in enumerate(kept)}
    base = len(kept)
    facets = []
    for facet in P.facets:
        if not facet - removed:
            continue
        members = {position[v] for v in facet if v not in removed}
        for i, (u, w) in enumerate(crossing):
            if u in facet and w in facet:
                members.add(base + i)
        facets.append(frozenset(members))
    underfacet = frozenset(range(base, base + len(crossing)))
    facets.append(underfacet)
    return facets, underfacet, kept


def cut(P: Polytope, h: HalfSpace) -> Tuple[Polytope, int]:
    """
    Intersect P with the halfspace h.

    Vertices beyond h are removed; new vertices are the edge crossings.
    Returns the polytope and the index of the new facet (the underfacet).
    """
    from .lattice import edges_from_incidence

    _require_realized(P)
    values = [h.value(v) for v in P.vertices]
    if any(val == 0 for val in values):
        raise KernelError("cutting hyperplane passes through a vertex")
    removed = frozenset(v for v, val in enumerate(values) if val > 0)
    if not removed or len(removed) == P.num_vertices:
        raise KernelError("cutting hyperplane does not meet the interior")

    crossing = []
    for u, w in edges_from_incidence(P):
        if (u in removed) != (w in removed):
            crossing.append((w, u) if u in removed else (u, w))
    crossing.sort()

    facets, underfacet, kept = truncation_facets(P, removed, crossing)
    coords = [P.vertices[v] for v in kept]
    for u, w in crossing:
        pu, pw = P.vertices[u], P.vertices[w]
        s = values[u] / (values[u] - values[w])
        coords.append(tuple(a + s * (b - a) for a, b in zip(pu, pw)))

    result, mapping = Polytope.build_mapped(dim=P.dim, facets=facets, vertices=coords)
    under = frozenset(mapping[i] for i in underfacet)
    logger.debug("cut removed %d vertices, added %d", len(removed), len(crossing))
    return result, result.facet_index(under)
