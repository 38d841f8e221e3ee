"""Tests for the exact kernel."""

import random
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.analysis import excess_degree
from src.core.exceptions import KernelError
from src.core.families import cube, simplex
from src.core.kernel import (
    affine_dim,
    beyond_point,
    convex_hull,
    cut,
    facet_halfspaces,
    hull_polytope,
    nullspace,
    rank_and_solve,
    supporting_halfspace,
    visible_facets,
)
from src.core.lattice import f_vector
from src.core.models import HalfSpace


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def brute_force_hull(points):
    """Vertices and facets of a full-dimensional point set from all d-subsets."""
    pts = sorted(set(tuple(Fraction(c) for c in p) for p in points))
    d = len(pts[0])
    planes = set()
    for subset in combinations(pts, d):
        basis = nullspace([list(p) + [-1] for p in subset], d + 1)
        if len(basis) != 1:
            continue
        normal, offset = basis[0][:d], basis[0][d]
        values = [_dot(normal, p) - offset for p in pts]
        if all(v <= 0 for v in values) or all(v >= 0 for v in values):
            planes.add(frozenset(p for p, v in zip(pts, values) if v == 0))
    vertices = set()
    for p in pts:
        meet = frozenset(pts)
        for plane in planes:
            if p in plane:
                meet &= plane
        if meet == {p}:
            vertices.add(p)
    facets = {frozenset(plane & vertices) for plane in planes}
    return vertices, facets


class TestLinearAlgebra:
    """Exact rank, solve and nullspace."""

    def test_rank_of_dependent_rows(self):
        """Test that proportional rows count once."""
        rank, solution = rank_and_solve([[1, 2], [2, 4]])
        assert rank == 1
        assert solution is None

    def test_solve_identity(self):
        """Test solving a regular system."""
        rank, solution = rank_and_solve([[1, 0], [0, 1]], [3, Fraction(1, 2)])
        assert rank == 2
        assert solution == [3, Fraction(1, 2)]

    def test_inconsistent_system(self):
        """Test that an inconsistent system returns no solution."""
        rank, solution = rank_and_solve([[1, 1], [1, 1]], [1, 2])
        assert rank == 1
        assert solution is None

    def test_nullspace_vectors_are_orthogonal_to_rows(self):
        """Test nullspace basis vectors annihilate the matrix."""
        matrix = [[1, 1, 0], [0, 1, 1]]
        basis = nullspace(matrix)
        assert len(basis) == 1
        for row in matrix:
            assert _dot(row, basis[0]) == 0

    def test_non_rectangular_matrix(self):
        """Test ragged rows are rejected."""
        with pytest.raises(KernelError):
            rank_and_solve([[1, 2], [1]])

    def test_affine_dim(self):
        """Test affine dimension of collinear and coplanar points."""
        assert affine_dim([(0, 0, 0), (1, 1, 1), (2, 2, 2)]) == 1
        assert affine_dim([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 2
        assert affine_dim([(1, 2)]) == 0


class TestConvexHull:
    """Exact convex hulls."""

    def test_cube_with_interior_points(self):
        """Test interior and edge-midpoint inputs are dropped."""
        points = [(x, y, z) for x in (0, 2) for y in (0, 2) for z in (0, 2)]
        points += [(1, 1, 1), (1, 0, 0), (0, 1, 2)]
        hull = convex_hull(points)
        assert hull.dim == 3
        assert len(hull.vertices) == 8
        assert len(hull.facets) == 6
        assert all(len(members) == 4 for _, members in hull.facets)

    def test_vertices_in_lexicographic_order(self):
        """Test output vertex order."""
        hull = convex_hull([(1, 0), (0, 1), (0, 0), (1, 1)])
        assert list(hull.vertices) == sorted(hull.vertices)

    def test_halfspaces_support_their_facets(self):
        """Test every facet halfspace contains all points and touches its vertices."""
        points = [(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1), (2, 2, 2)]
        hull = convex_hull(points)
        for h, members in hull.facets:
            for p in points:
                assert h.contains(p)
            for v in members:
                assert h.value(hull.vertices[v]) == 0

    @pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
    def test_matches_brute_force(self, seed):
        """Test random 3D point sets against the triple-enumeration oracle."""
        rng = random.Random(seed)
        points = [(0, 0, 0), (6, 0, 0), (0, 6, 0), (0, 0, 6)]
        points += [tuple(rng.randint(0, 5) for _ in range(3)) for _ in range(10)]
        hull = convex_hull(points)
        vertices, facets = brute_force_hull(points)

        assert set(hull.vertices) == vertices
        found = {frozenset(hull.vertices[i] for i in members) for _, members in hull.facets}
        assert found == facets

    @pytest.mark.parametrize("seed", range(50))
    def test_matches_brute_force_rational(self, seed):
        """Test random rational point sets in dimensions 2 to 5 against the oracle."""
        rng = random.Random(seed)
        d = 2 + seed % 4
        points = [tuple(Fraction(6 * int(i == j)) for j in range(d)) for i in range(d + 1)]
        for _ in range(rng.randint(1, 12 - len(points))):
            points.append(tuple(Fraction(rng.randint(0, 12), rng.randint(1, 3)) for _ in range(d)))
        hull = convex_hull(points)
        vertices, facets = brute_force_hull(points)

        assert hull.dim == d
        assert set(hull.vertices) == vertices
        found = {frozenset(hull.vertices[i] for i in members) for _, members in hull.facets}
        assert found == facets

    @pytest.mark.parametrize("seed", range(10))
    def test_hull_of_hull_is_unchanged(self, seed):
        """Test the hull of the hull's vertices gives the same vertices and facets."""
        rng = random.Random(seed)
        d = 2 + seed % 4
        points = [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(d))
                  for _ in range(12)]
        first = convex_hull(points)
        second = convex_hull(first.vertices)
        assert second.vertices == first.vertices
        assert [m for _, m in second.facets] == [m for _, m in first.facets]

    def test_moment_curve_in_dimension_five(self):
        """Test seven points on the moment curve give a neighbourly 5-polytope with excess 7."""
        P = hull_polytope([tuple(t ** k for k in range(1, 6)) for t in range(7)])
        assert P.dim == 5
        assert P.num_vertices == 7
        assert f_vector(P).f1 == 21
        assert excess_degree(P) == 7

    def test_degenerate_input_uses_affine_hull(self):
        """Test a square lying in a 3D coordinate plane."""
        hull = convex_hull([(0, 0, 5), (1, 0, 5), (0, 1, 5), (1, 1, 5)])
        assert hull.dim == 2
        assert len(hull.vertices) == 4
        assert len(hull.facets) == 4

    def test_collinear_points(self):
        """Test a segment from collinear points."""
        hull = convex_hull([(0, 0), (1, 1), (3, 3), (2, 2)])
        assert hull.dim == 1
        assert hull.vertices == ((0, 0), (3, 3))

    def test_too_few_points(self):
        """Test a single point is rejected."""
        with pytest.raises(KernelError):
            convex_hull([(1, 1), (1, 1)])

    def test_mixed_ambient_dimension(self):
        """Test points of different lengths are rejected."""
        with pytest.raises(KernelError):
            convex_hull([(0, 0), (1, 0, 0), (0, 1)])

    def test_hull_polytope_labels(self):
        """Test hull_polytope carries name and provenance."""
        P = hull_polytope([(0, 0), (1, 0), (0, 1)], name="triangle", provenance="simplex(2)")
        assert P.num_vertices == 3
        assert P.provenance == "simplex(2)"
        assert f_vector(P).values == (3, 3)


class TestHalfspaces:
    """Facet halfspaces and points beyond faces."""

    def test_facet_halfspaces_of_cube(self):
        """Test each cube facet halfspace is tight exactly on its facet."""
        P = cube(3)
        for h, facet in zip(facet_halfspaces(P), P.facets):
            for v, point in enumerate(P.vertices):
                if v in facet:
                    assert h.value(point) == 0
                else:
                    assert h.value(point) < 0

    def test_beyond_point_sees_one_facet(self):
        """Test the stacking point lies beyond exactly its facet."""
        P = simplex(3)
        for j in range(P.num_facets):
            beyond, on = visible_facets(P, beyond_point(P, j))
            assert beyond == {j}
            assert not on

    def test_supporting_halfspace_of_vertex(self):
        """Test a vertex is exposed by a supporting halfspace."""
        P = cube(3)
        h, contact = supporting_halfspace(P, [0])
        assert h.value(P.vertices[0]) == 0
        assert all(h.value(P.vertices[v]) < 0 for v in range(1, P.num_vertices))
        assert contact == h.offset

    def test_supporting_halfspace_rejects_non_face(self):
        """Test a diagonal pair is not a face."""
        P = cube(3)
        with pytest.raises(KernelError):
            supporting_halfspace(P, [0, 7])

    def test_cut_off_cube_vertex(self):
        """Test cutting a corner of the cube."""
        P = cube(3)
        h = HalfSpace(tuple(Fraction(-1) for _ in range(3)), Fraction(-1, 2))
        result, under = cut(P, h)
        assert result.num_vertices == 10
        assert result.num_facets == 7
        assert len(result.facets[under]) == 3


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
