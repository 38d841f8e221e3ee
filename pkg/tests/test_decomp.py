"""Tests for decomposability verdicts and certificates."""

import sys
from dataclasses import replace
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.decomp import (
    EVIDENCE_DUAL_RULE,
    EVIDENCE_FEW_FACETS,
    EVIDENCE_PYRAMID,
    EVIDENCE_SHEPHARD,
    EVIDENCE_SUBGRAPH,
    RULE_CYCLE,
    DecompCertificate,
    DerivationStep,
    GeometricGraph,
    check_cycle,
    classify,
    conflict_check,
    count_nonsimple_dual_rule,
    grow_certificate,
    verify_certificate,
)
from src.core.exceptions import CertificateError
from src.core.families import (
    antiwedge,
    bipyramid,
    capped_prism,
    cube,
    cyclic,
    family_sigma,
    pentasm,
    prism,
    pyramid,
    segment,
    simplex,
    simplex_product,
    square,
)
from src.utils.constants import VERDICT_DECOMPOSABLE, VERDICT_INDECOMPOSABLE


class TestClassify:
    """Verdicts from the rule cascade."""

    def test_cube_is_decomposable(self):
        """Test a Shephard facet with enough outside vertices."""
        certificate = classify(cube(3))
        assert certificate.verdict == VERDICT_DECOMPOSABLE
        assert certificate.evidence == EVIDENCE_SHEPHARD
        assert certificate.outside == 4

    def test_prism_is_decomposable(self):
        """Test the 3-prism is a sum of a triangle and a segment."""
        assert classify(prism(3)).is_decomposable

    def test_pyramid_is_indecomposable(self):
        """Test a pyramid is certified by its apex."""
        P = pyramid(square())
        certificate = classify(P)
        assert certificate.verdict == VERDICT_INDECOMPOSABLE
        assert certificate.evidence == EVIDENCE_PYRAMID
        assert len(P.vertex_facets[certificate.apex]) == P.num_facets - 1

    def test_simplicial_subgraph(self):
        """Test a triangular bipyramid is certified by merged triangles."""
        certificate = classify(bipyramid(simplex(2)))
        assert certificate.evidence == EVIDENCE_SUBGRAPH
        assert certificate.subgraph.steps[0].rule == RULE_CYCLE
        assert set(certificate.subgraph.covered) == set(range(5))

    @pytest.mark.parametrize("build", [
        lambda: pentasm(4),
        lambda: pentasm(5),
        lambda: capped_prism(3, 4),
        lambda: capped_prism(4, 4),
        lambda: capped_prism(4, 5),
        lambda: family_sigma(3),
        lambda: simplex_product([2, 2]),
    ])
    def test_decomposable_families(self, build):
        """Test pentasms, capped prisms, Sigma_3 and Delta_{2,2} are decomposable."""
        P = build()
        certificate = classify(P)
        assert certificate.verdict == VERDICT_DECOMPOSABLE
        assert verify_certificate(P, certificate).valid

    @pytest.mark.parametrize("build", [
        antiwedge,
        lambda: bipyramid(simplex(4)),
        lambda: cyclic(6, 4),
    ])
    def test_indecomposable_by_subgraph(self, build):
        """Test the antiwedge, a simplex bipyramid and a cyclic polytope get subgraph certificates."""
        P = build()
        certificate = classify(P)
        assert certificate.verdict == VERDICT_INDECOMPOSABLE
        assert certificate.evidence == EVIDENCE_SUBGRAPH
        assert verify_certificate(P, certificate).valid

    def test_segment(self):
        """Test a segment is indecomposable."""
        assert classify(segment()).is_indecomposable

    def test_facet_recursion_without_realization(self):
        """Test an unrealized simplicial polytope is settled through its facets."""
        P = bipyramid(simplex(2)).without_realization()
        certificate = classify(P, depth=1)
        assert certificate.evidence == EVIDENCE_FEW_FACETS
        assert len(certificate.facet_certificates) == P.num_facets
        assert verify_certificate(P, certificate).valid

    def test_unknown_without_depth(self):
        """Test no rule applies to an unrealized bipyramid at depth 0."""
        P = bipyramid(simplex(2)).without_realization()
        certificate = classify(P, depth=0)
        assert not certificate.is_decomposable
        assert not certificate.is_indecomposable
        assert certificate.reason


class TestCertificates:
    """Replaying certificates."""

    @pytest.mark.parametrize("P", [cube(3), pyramid(square()), bipyramid(simplex(2)), cyclic(6, 4)])
    def test_own_certificates_replay(self, P):
        """Test every certificate classify emits replays."""
        certificate = classify(P)
        assert verify_certificate(P, certificate).valid

    def test_dict_round_trip(self):
        """Test a subgraph certificate survives serialization."""
        certificate = classify(bipyramid(simplex(2)))
        assert DecompCertificate.from_dict(certificate.to_dict()) == certificate

    def test_malformed_certificate(self):
        """Test a certificate without a verdict is rejected."""
        with pytest.raises(CertificateError):
            DecompCertificate.from_dict({'evidence': 'pyramid'})

    def test_wrong_shephard_facet(self):
        """Test pointing a Shephard certificate at a triangle of a pyramid fails."""
        P = pyramid(square())
        triangle = next(j for j, f in enumerate(P.facets) if len(f) == 3)
        forged = DecompCertificate(VERDICT_DECOMPOSABLE, EVIDENCE_SHEPHARD, facet=triangle, outside=2)
        outcome = verify_certificate(P, forged)
        assert not outcome.valid
        assert "Shephard" in outcome.reason

    def test_wrong_apex(self):
        """Test a non-apex vertex fails the pyramid check."""
        P = cube(3)
        forged = DecompCertificate(VERDICT_INDECOMPOSABLE, EVIDENCE_PYRAMID, apex=0)
        assert not verify_certificate(P, forged).valid

    def test_tampered_cycle(self):
        """Test a subgraph whose first cycle is not a cycle of the skeleton fails."""
        P = cube(3)
        subgraph = grow_certificate(bipyramid(simplex(2)))
        steps = list(subgraph.steps)
        steps[0] = DerivationStep(RULE_CYCLE, steps[0].component, (0, 7, 1))
        forged = DecompCertificate(VERDICT_INDECOMPOSABLE, EVIDENCE_SUBGRAPH,
                                   subgraph=replace(subgraph, steps=steps))
        assert not verify_certificate(P, forged).valid

    def test_check_cycle(self):
        """Test triangle independence and a broken cycle."""
        graph = GeometricGraph.skeleton_of(simplex(3))
        assert check_cycle(graph, (0, 1, 2))
        square_graph = GeometricGraph.skeleton_of(cube(2))
        with pytest.raises(CertificateError):
            check_cycle(square_graph, (0, 3, 1))


class TestRuleChecks:
    """Dual rule and conflict detection."""

    def test_dual_rule_applies(self):
        """Test few nonsimple vertices certify the dual."""
        certificate = count_nonsimple_dual_rule(pyramid(square()))
        assert certificate.evidence == EVIDENCE_DUAL_RULE
        assert certificate.scope == "dual"

    def test_dual_rule_does_not_apply(self):
        """Test a neighbourly polytope has too many nonsimple vertices."""
        assert count_nonsimple_dual_rule(cyclic(6, 4)) is None

    def test_dual_rule_on_pentasm(self):
        """Test the pentasm's d-2 nonsimple vertices make its dual indecomposable."""
        certificate = count_nonsimple_dual_rule(pentasm(4))
        assert certificate.verdict == VERDICT_INDECOMPOSABLE
        assert certificate.scope == "dual"

    def test_dual_rule_skips_simplex_bipyramid(self):
        """Test the bipyramid over a 4-simplex has five nonsimple vertices, too many for the rule."""
        assert count_nonsimple_dual_rule(bipyramid(simplex(4))) is None

    @pytest.mark.parametrize("P", [pentasm(4), capped_prism(3, 4), antiwedge(), simplex_product([2, 2])])
    def test_no_conflicts_on_families(self, P):
        """Test Shephard, pyramid and subgraph rules agree on named families."""
        assert conflict_check(P) is None

    @pytest.mark.parametrize("P", [cube(3), prism(3), pyramid(square()), bipyramid(simplex(2))])
    def test_no_conflicts(self, P):
        """Test the rules never disagree on sample polytopes."""
        assert conflict_check(P) is None


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
