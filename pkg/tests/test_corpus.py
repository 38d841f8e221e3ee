"""Tests for corpus generation."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.atlas.corpus import generate_corpus, one_round, seed_polytopes
from src.core.analysis import excess_degree
from src.core.decomp import classify
from src.core.families import capped_prism, cube, family_ABCS, family_sigma, pentasm, prism
from src.core.isomorphism import canonical_form, is_isomorphic
from src.core.lattice import f_vector
from src.utils.constants import CORPUS_HARD_VERTEX_LIMIT, CORPUS_MAX_DEPTH


@pytest.fixture(scope="module")
def corpus3():
    return generate_corpus(3, depth=1, max_vertices=8)


@pytest.fixture(scope="module")
def corpora():
    """One round of moves over every family seed in dimensions 3 to 6."""
    budgets = {3: 12, 4: 12, 5: 13, 6: 12}
    return {d: generate_corpus(d, depth=1, max_vertices=n) for d, n in budgets.items()}


class TestSeeds:
    """Seed polytopes."""

    def test_seed_dimensions(self):
        """Test seeds have the requested dimension and size."""
        seeds = seed_polytopes(4, 8)
        assert seeds
        assert all(P.dim == 4 and P.num_vertices <= 8 for P in seeds)

    def test_no_seeds_below_simplex(self):
        """Test a budget below d + 1 vertices gives no seeds."""
        assert seed_polytopes(4, 4) == ()


class TestOneRound:
    """Single round of moves."""

    def test_cube_children(self):
        """Test truncating and stacking the cube respects the budget."""
        children = list(one_round(cube(3), 10))
        assert children
        assert all(P.dim == 3 and P.num_vertices <= 10 for P in children)
        assert any(P.num_vertices == 10 for P in children)

    def test_tight_budget(self):
        """Test no move fits when the budget equals the current size."""
        assert list(one_round(cube(3), 8)) == []


class TestGenerateCorpus:
    """Deduplicated corpora."""

    def test_members_are_distinct(self, corpus3):
        """Test no two members share a canonical form."""
        assert corpus3.success
        assert len(set(corpus3.digests)) == len(corpus3)
        assert corpus3.digests[0] == canonical_form(corpus3.members[0]).digest

    def test_members_respect_budget(self, corpus3):
        """Test every member is a 3-polytope within the vertex budget."""
        assert all(P.dim == 3 and P.num_vertices <= 8 for P in corpus3.members)

    def test_depth_grows_corpus(self, corpus3):
        """Test a round of moves adds members."""
        seeds_only = generate_corpus(3, depth=0, max_vertices=8)
        assert len(corpus3) > len(seeds_only)
        assert set(seeds_only.digests) <= set(corpus3.digests)

    def test_with_counts(self, corpus3):
        """Test lookup by vertex and edge counts."""
        tetrahedra = corpus3.with_counts(4)
        assert len(tetrahedra) == 1
        assert corpus3.with_counts(4, 6) == tetrahedra
        assert corpus3.with_counts(4, 7) == []

    def test_three_dimensional_excess_values(self, corpus3):
        """Test excess values are nonnegative and include the simple case."""
        values = corpus3.excess_values()
        assert values[0] == 0
        assert values == sorted({excess_degree(P) for P in corpus3.members})

    def test_member_budget_makes_corpus_partial(self):
        """Test a tiny member budget stops generation with a warning."""
        result = generate_corpus(3, depth=1, max_vertices=8, max_members=2)
        assert result.partial
        assert len(result) == 2
        assert result.warnings

    @pytest.mark.parametrize("kwargs", [
        {'d': 1},
        {'d': 3, 'depth': CORPUS_MAX_DEPTH + 1},
        {'d': 3, 'max_vertices': 3},
        {'d': 3, 'max_vertices': CORPUS_HARD_VERTEX_LIMIT + 1},
    ])
    def test_bad_parameters(self, kwargs):
        """Test out-of-range parameters raise ValueError."""
        with pytest.raises(ValueError):
            generate_corpus(**kwargs)


class TestCorpusInvariants:
    """Classification results checked over generated corpora."""

    def test_seven_vertices_eleven_edges(self, corpus3):
        """Test the pentasm and Sigma_3 are the only 3-polytopes with (7, 11)."""
        members = corpus3.with_counts(7, 11)
        assert len(members) == 2
        assert any(is_isomorphic(P, pentasm(3)) for P in members)
        assert any(is_isomorphic(P, family_sigma(3)) for P in members)

    def test_decomposable_with_few_vertices_is_prism(self, corpus3):
        """Test a decomposable 3-polytope with at most six vertices is the prism."""
        for P in corpus3.members:
            if P.num_vertices <= 6 and classify(P).is_decomposable:
                assert is_isomorphic(P, prism(3)), P.provenance

    def test_decomposable_with_seven_vertices(self, corpus3):
        """Test decomposable 3-polytopes with seven vertices are known types."""
        known = [pentasm(3), capped_prism(2, 3), capped_prism(3, 3), family_sigma(3)]
        for P in corpus3.with_counts(7):
            if classify(P).is_decomposable:
                assert any(is_isomorphic(P, Q) for Q in known), P.provenance

    def test_four_polytopes_with_ten_vertices_and_few_edges(self):
        """Test exactly four 4-polytopes have ten vertices and at most 21 edges."""
        corpus = generate_corpus(4, depth=0, max_vertices=10)
        sparse = [P for P in corpus.with_counts(10) if f_vector(P).f1 <= 21]
        assert len(sparse) == 4
        assert all(f_vector(P).values == (10, 21, 18, 7) for P in sparse)
        for kind in ("A", "B", "C", "Sigma"):
            assert any(is_isomorphic(P, family_ABCS(kind, 4)) for P in sparse)

    def test_corpora_are_large(self, corpora):
        """Test the combined corpora hold at least 200 distinct polytopes."""
        assert all(not corpus.partial for corpus in corpora.values())
        assert sum(len(corpus) for corpus in corpora.values()) >= 200

    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    def test_no_small_nonzero_excess(self, corpora, d):
        """Test every member has excess 0 or at least d - 2."""
        for P in corpora[d].members:
            xi = excess_degree(P)
            assert xi == 0 or xi >= d - 2, P.provenance

    def test_excess_d_minus_one_only_in_odd_dimensions(self, corpora):
        """Test excess d - 1 appears in dimensions 3 and 5 and nowhere else."""
        for d, corpus in corpora.items():
            present = d - 1 in corpus.excess_values()
            assert present == (d in (3, 5)), d

    def test_five_dimensional_spectrum_values(self):
        """Test the simplex, M_{3,2}, pyr^3(pentagon) and C(7,5) give 0, 4, 6 and 7."""
        values = generate_corpus(5, depth=0, max_vertices=8).excess_values()
        assert {0, 4, 6, 7} <= set(values)
        assert not {1, 2} & set(values)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
