"""Tests for polytope constructors."""

import sys
from collections import Counter
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.exceptions import ConstructionError
from src.core.families import (
    antiwedge,
    bipyramid,
    capped_prism,
    cube,
    cyclic,
    family_A,
    family_B,
    family_ABCS,
    family_C,
    family_catalog,
    family_sigma,
    free_sum,
    gamma,
    J,
    minkowski_sum,
    pentasm,
    polygon,
    prism,
    product,
    push,
    pyramid,
    segment,
    simplex,
    simplex_product,
    stack,
    triplex,
    truncate,
)
from src.core.isomorphism import canonical_form, is_isomorphic
from src.core.lattice import (
    edges_from_incidence,
    f_vector,
    facet_polytope,
    skeleton_graph,
    validate,
)


def counts(P):
    return P.num_vertices, len(edges_from_incidence(P))


def census(P):
    """Multiset of facet isomorphism classes."""
    return Counter(canonical_form(facet_polytope(P, i)).digest for i in range(len(P.facets)))


def expected(*groups):
    """Census built from (count, polytope) pairs."""
    result = Counter()
    for count, Q in groups:
        if count:
            result[canonical_form(Q).digest] += count
    return result


class TestNamedFamilies:
    """Vertex and edge counts of the named families."""

    @pytest.mark.parametrize("k, d", [(2, 3), (3, 4), (4, 5), (5, 5), (2, 6)])
    def test_triplex_counts(self, k, d):
        """Test the triplex attains the minimum edge count for d + k vertices."""
        P = triplex(k, d - k)
        assert P.dim == d
        assert P.num_vertices == d + k
        assert 2 * len(edges_from_incidence(P)) == d * (d + k) + (k - 1) * (d - k)

    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    def test_pentasm_counts(self, d):
        """Test the pentasm has 2d+1 vertices and d^2+d-1 edges."""
        assert counts(pentasm(d)) == (2 * d + 1, d * d + d - 1)

    def test_capped_prism(self):
        """Test CP_{3,5} has 11 vertices and 30 edges."""
        P = capped_prism(3, 5)
        assert P.dim == 5
        assert counts(P) == (11, 30)

    def test_capped_prism_k1_is_prism(self):
        """Test CP_{1,d} is the prism."""
        assert capped_prism(1, 4).facets == prism(4).facets

    def test_capped_prisms_share_graph(self):
        """Test CP_{3,5}, CP_{4,5} and CP_{5,5} have one graph but distinct face lattices."""
        members = [capped_prism(k, 5) for k in (3, 4, 5)]
        graphs = [skeleton_graph(P) for P in members]
        for P, Q, G, H in ((members[0], members[1], graphs[0], graphs[1]),
                           (members[1], members[2], graphs[1], graphs[2])):
            assert nx.is_isomorphic(G, H)
            assert not is_isomorphic(P, Q)

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_family_vertex_counts(self, d):
        """Test A, B, C, Sigma and J vertex counts."""
        assert family_A(d).num_vertices == 2 * d + 2
        assert family_B(d).num_vertices == 2 * d + 2
        assert family_C(d).num_vertices == 3 * d - 2
        assert family_sigma(d).num_vertices == 3 * d - 2
        assert J(d).num_vertices == 3 * d - 1

    @pytest.mark.parametrize("kind", ["A", "B", "C", "Sigma"])
    def test_abcs_share_f_vector_in_dimension_four(self, kind):
        """Test A_4, B_4, C_4 and Sigma_4 all have f-vector (10,21,18,7)."""
        assert f_vector(family_ABCS(kind, 4)).values == (10, 21, 18, 7)

    @pytest.mark.parametrize("kind, other", [
        ("A", lambda: cube(3)),
        ("B", lambda: J(3)),
        ("C", lambda: family_sigma(3)),
    ])
    def test_abcs_in_dimension_three(self, kind, other):
        """Test the three-dimensional members coincide with known polytopes."""
        assert is_isomorphic(family_ABCS(kind, 3), other())

    def test_abcs_unknown_kind(self):
        """Test an unknown family letter."""
        with pytest.raises(ConstructionError):
            family_ABCS("D", 4)

    def test_gamma_counts(self):
        """Test Gamma_{m,n} has mn + 2m + 2n vertices."""
        assert gamma(2, 2).num_vertices == 12
        assert gamma(3, 1).num_vertices == 11

    def test_antiwedge(self):
        """Test the tetragonal antiwedge f-vector."""
        assert f_vector(antiwedge()).values == (6, 10, 6)

    def test_cyclic_is_neighbourly(self):
        """Test C(8,4) has every pair of vertices as an edge."""
        assert counts(cyclic(8, 4)) == (8, 28)

    def test_polygon(self):
        """Test an n-gon."""
        assert f_vector(polygon(7)).values == (7, 7)

    @pytest.mark.parametrize("build, args", [
        (triplex, (0, 2)),
        (cyclic, (4, 4)),
        (capped_prism, (6, 5)),
        (pentasm, (1,)),
        (polygon, (2,)),
    ])
    def test_bad_parameters(self, build, args):
        """Test invalid parameters raise ConstructionError."""
        with pytest.raises(ConstructionError):
            build(*args)

    def test_constructions_validate(self):
        """Test a sample of constructions passes structural validation."""
        for P in (pentasm(4), capped_prism(3, 4), family_B(4), family_sigma(4), J(4)):
            assert validate(P).valid, P.label



class TestFacetCensus:
    """Facet types of the named families, compared up to isomorphism."""

    @pytest.mark.parametrize("d", [4, 5, 6])
    def test_pentasm(self, d):
        """Test d-2 pentasms, 2 prisms and 3 simplices."""
        assert census(pentasm(d)) == expected(
            (d - 2, pentasm(d - 1)), (2, prism(d - 1)), (3, simplex(d - 1)))

    @pytest.mark.parametrize("k, d", [(3, 4), (4, 4), (3, 5), (4, 5), (5, 5), (3, 6), (6, 6)])
    def test_capped_prism(self, k, d):
        """Test d-k smaller capped prisms, k prisms and k+1 simplices."""
        smaller = capped_prism(k, d - 1) if k < d else None
        assert census(capped_prism(k, d)) == expected(
            (d - k, smaller), (k, prism(d - 1)), (k + 1, simplex(d - 1)))

    @pytest.mark.parametrize("d", [4, 5, 6])
    def test_family_A(self, d):
        """Test d-3 copies of A_{d-1}, 4 prisms and 2 triplices M_{2,d-3}."""
        assert census(family_A(d)) == expected(
            (d - 3, family_A(d - 1)), (4, prism(d - 1)), (2, triplex(2, d - 3)))

    @pytest.mark.parametrize("d", [4, 5, 6])
    def test_family_B(self, d):
        """Test d-3 copies of B_{d-1}, 2 simplices, a prism, M_{2,d-3} and 2 pentasms."""
        assert census(family_B(d)) == expected(
            (d - 3, family_B(d - 1)), (2, simplex(d - 1)), (1, prism(d - 1)),
            (1, triplex(2, d - 3)), (2, pentasm(d - 1)))

    @pytest.mark.parametrize("d", [4, 5, 6])
    def test_family_C(self, d):
        """Test d-2 copies of C_{d-1}, 3 prisms, Delta_{2,d-3} and a simplex."""
        assert census(family_C(d)) == expected(
            (d - 2, family_C(d - 1)), (3, prism(d - 1)),
            (1, simplex_product([2, d - 3])), (1, simplex(d - 1)))

    @pytest.mark.parametrize("d", [4, 5, 6])
    def test_family_sigma(self, d):
        """Test d-1 copies of Sigma_{d-1}, 2 prisms and 2 simplices."""
        assert census(family_sigma(d)) == expected(
            (d - 1, family_sigma(d - 1)), (2, prism(d - 1)), (2, simplex(d - 1)))

    @pytest.mark.parametrize("m, n", [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3)])
    def test_gamma(self, m, n):
        """Test m + n + 3 facets of the documented types."""
        P = gamma(m, n)
        assert len(P.facets) == m + n + 3
        assert census(P) == expected(
            (m, gamma(m - 1, n)), (n, gamma(m, n - 1)),
            (1, simplex_product([m - 1, n])), (1, simplex_product([m, n - 1])),
            (1, simplex(m + n - 1)))

    @pytest.mark.parametrize("d", [4, 5, 6])
    def test_J(self, d):
        """Test d-1 copies of J_{d-1}, 2 prisms and 2 simplices."""
        assert census(J(d)) == expected(
            (d - 1, J(d - 1)), (2, prism(d - 1)), (2, simplex(d - 1)))


class TestOperations:
    """Generic operations."""

    def test_pyramid_fold(self):
        """Test an r-fold pyramid adds r vertices and r dimensions."""
        P = pyramid(polygon(5), 3)
        assert P.dim == 5
        assert P.num_vertices == 8
        assert P.provenance == "pyr^3(pentagon)"

    def test_bipyramid(self):
        """Test the bipyramid over a triangle."""
        assert f_vector(bipyramid(simplex(2))).values == (5, 9, 6)

    def test_free_sum_of_polygons(self):
        """Test the free sum of two squares is the 4-cross-polytope."""
        square_ = cube(2)
        assert f_vector(free_sum(square_, square_)).values == (8, 24, 32, 16)

    def test_product(self):
        """Test the product of a triangle and a segment is the 3-prism."""
        P = product(simplex(2), segment())
        assert f_vector(P).values == (6, 9, 5)

    def test_minkowski_sum(self):
        """Test a triangle plus a segment in a new direction."""
        P = minkowski_sum(simplex(2), cube(2))
        assert P.dim == 2

    def test_truncate_simple_vertex(self):
        """Test truncating a simple vertex adds d-1 vertices and C(d,2) edges."""
        P = cube(4)
        result, under = truncate(P, [0])
        assert counts(result) == (16 + 3, 32 + 6)
        assert len(result.facets[under]) == 4
        assert result.provenance == "truncate(cube(4),v0)"

    def test_truncate_simple_edge(self):
        """Test truncating a simple edge adds 2d-4 vertices and d^2-2d edges."""
        P = cube(4)
        edge = edges_from_incidence(P)[0]
        result, _ = truncate(P, edge)
        assert counts(result) == (16 + 4, 32 + 8)

    def test_truncate_unrealized(self):
        """Test combinatorial truncation agrees with the realized one."""
        P = cube(3)
        realized, _ = truncate(P, [0])
        abstract, _ = truncate(P.without_realization(), [0])
        assert f_vector(realized) == f_vector(abstract)

    def test_truncate_non_face(self):
        """Test truncating a non-face is rejected."""
        with pytest.raises(ConstructionError):
            truncate(cube(3), [0, 7])

    def test_stack_on_facet(self):
        """Test stacking on a cube facet."""
        P = stack(cube(3), 0)
        assert f_vector(P).values == (9, 16, 9)
        assert P.provenance == "stack(cube(3),f0)"

    def test_stack_beyond_vertex(self):
        """Test stacking beyond a cube vertex swallows it."""
        assert f_vector(stack(cube(3), [0])).values == (8, 15, 9)

    def test_push_level_zero_is_stacking(self):
        """Test push at level 0 equals stacking on the facet."""
        assert f_vector(push(cube(3), 0, 0)) == f_vector(stack(cube(3), 0))

    def test_push_level_out_of_range(self):
        """Test an unavailable push level raises ConstructionError."""
        with pytest.raises(ConstructionError):
            push(cube(3), 0, 1)


class TestFamilyCatalog:
    """Enumeration of named families."""

    def test_respects_vertex_bound(self):
        """Test every member has dimension d and few enough vertices."""
        members = family_catalog(4, 9)
        assert members
        assert all(P.dim == 4 and P.num_vertices <= 9 for P in members)

    def test_contains_simplex_and_triplices(self):
        """Test the simplex and the triplices are offered."""
        provenances = {P.provenance for P in family_catalog(4, 8)}
        assert "simplex(4)" in provenances
        assert {"triplex(2,2)", "triplex(3,1)", "triplex(4,0)"} <= provenances

    def test_polygons_in_dimension_two(self):
        """Test the d=2 catalog holds polygons."""
        sizes = sorted(P.num_vertices for P in family_catalog(2, 6))
        assert sizes[0] == 3
        assert 6 in sizes


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
