"""Tests for the feasibility rule layer."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.atlas.feasibility import (
    FeasibilityVerdict,
    check_query,
    edge_bounds,
    excess_value,
    feasibility,
    violated_rule,
)
from src.utils.constants import (
    AXIOM_RULES,
    RULE_EDGE_BOUNDS,
    RULE_EXCESS_D1_DIM,
    RULE_EXCESS_GAP,
    RULE_FIVE_POLY_1335,
    RULE_FIVE_POLY_925,
    RULE_FOUR_POLY_817,
    RULE_PENTASM_LB,
    RULE_SIMPLE_CENSUS,
    RULE_TRIPLEX_LB,
    STATUS_INFEASIBLE,
    STATUS_UNKNOWN,
)


class TestEdgeBounds:
    """Degree and Euler bounds."""

    @pytest.mark.parametrize("d, f0, expected", [
        (2, 5, (5, 5)),
        (3, 6, (9, 12)),
        (4, 6, (12, 15)),
        (5, 9, (23, 36)),
    ])
    def test_bounds(self, d, f0, expected):
        """Test lower bound is ceil(d f0 / 2) and upper bound depends on d."""
        assert edge_bounds(d, f0) == expected

    def test_excess_value(self):
        """Test excess is 2 f1 - d f0."""
        assert excess_value(4, 9, 24) == 3
        assert excess_value(3, 8, 12) == 0


class TestCheckQuery:
    """Malformed queries."""

    @pytest.mark.parametrize("d, f0, f1", [
        (1, 2, 1),
        (3, 3, 3),
        (3, 4, -1),
        (3, 4.0, 6),
        (True, 4, 6),
    ])
    def test_rejected(self, d, f0, f1):
        """Test bad dimensions, too few vertices and non-integers raise ValueError."""
        with pytest.raises(ValueError):
            check_query(d, f0, f1)

    def test_feasibility_propagates(self):
        """Test feasibility does not swallow malformed input."""
        with pytest.raises(ValueError):
            feasibility(2, 2, 1)


class TestRules:
    """First violated rule for each kind of triple."""

    @pytest.mark.parametrize("d, f0, f1, rule", [
        (3, 6, 13, RULE_EDGE_BOUNDS),
        (4, 6, 11, RULE_EDGE_BOUNDS),
        (5, 10, 26, RULE_EXCESS_GAP),
        (5, 11, 28, RULE_EXCESS_GAP),
        (7, 10, 38, RULE_EXCESS_D1_DIM),
        (4, 7, 14, RULE_TRIPLEX_LB),
        (4, 6, 12, RULE_TRIPLEX_LB),
        (6, 13, 39, RULE_PENTASM_LB),
        (5, 9, 25, RULE_FIVE_POLY_925),
        (5, 13, 35, RULE_FIVE_POLY_1335),
        (4, 8, 17, RULE_FOUR_POLY_817),
        (4, 10, 20, RULE_SIMPLE_CENSUS),
    ])
    def test_violated_rule(self, d, f0, f1, rule):
        """Test the rule that decides each infeasible triple."""
        assert violated_rule(d, f0, f1) == rule

    @pytest.mark.parametrize("d, f0, f1", [
        (3, 5, 8),
        (4, 8, 16),
        (4, 9, 18),
        (4, 9, 24),
        (5, 6, 15),
        (5, 9, 24),
        (5, 11, 29),
        (5, 16, 40),
        (3, 7, 11),
    ])
    def test_no_rule_applies(self, d, f0, f1):
        """Test triples of real polytopes pass every rule."""
        assert violated_rule(d, f0, f1) is None

    def test_excess_d_minus_one_allowed_in_dimension_five(self):
        """Test excess four is not excluded for 5-polytopes."""
        assert violated_rule(5, 10, 27) is None

    def test_gap_in_dimension_five_stops_at_two(self):
        """Test excess three is allowed for 5-polytopes."""
        assert excess_value(5, 9, 24) == 3
        assert violated_rule(5, 9, 24) is None

    def test_four_dimensional_pentasm_bound(self):
        """Test 18 edges on nine vertices is allowed in dimension four."""
        assert violated_rule(4, 9, 18) is None
        assert violated_rule(4, 9, 17) == RULE_EDGE_BOUNDS


class TestFeasibilityVerdict:
    """Verdict objects."""

    def test_infeasible_verdict(self):
        """Test an infeasible verdict carries its rule."""
        verdict = feasibility(5, 10, 26)
        assert verdict.status == STATUS_INFEASIBLE
        assert verdict.is_infeasible
        assert verdict.rule == RULE_EXCESS_GAP
        assert verdict.excess == 2

    def test_unknown_without_witness(self):
        """Test a triple passing the rules is Unknown at this layer."""
        verdict = feasibility(4, 5, 10)
        assert verdict.status == STATUS_UNKNOWN
        assert verdict.rule is None
        assert verdict.witness is None

    def test_axiom_note_in_dict(self):
        """Test rules taken from the literature are marked in the output."""
        data = feasibility(4, 8, 17).to_dict()
        assert data['rule'] == RULE_FOUR_POLY_817
        assert data['axiom'] == AXIOM_RULES[RULE_FOUR_POLY_817]
        assert data['excess'] == 2

    def test_proved_rule_has_no_axiom_note(self):
        """Test a derived rule has no axiom entry."""
        data = feasibility(3, 6, 13).to_dict()
        assert 'axiom' not in data
        assert 'witness' not in data

    def test_dict_of_unknown(self):
        """Test the minimal dict of an undecided triple."""
        verdict = FeasibilityVerdict(status=STATUS_UNKNOWN, dim=4, f0=5, f1=10)
        assert verdict.to_dict() == {
            'status': STATUS_UNKNOWN, 'dim': 4, 'f0': 5, 'f1': 10, 'excess': 0,
        }


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
