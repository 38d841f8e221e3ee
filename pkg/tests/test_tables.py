"""Tests for edge tables and excess spectra."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.atlas.corpus import generate_corpus
from src.atlas.tables import compare_with_reference, e_table, reference_table, spectrum
from src.atlas.witness import WitnessSearch
from src.utils.constants import RULE_FOUR_POLY_817, RULE_TRIPLEX_LB


@pytest.fixture(scope="module")
def search():
    return WitnessSearch(max_states=2000)


@pytest.fixture(scope="module")
def table3(search):
    return e_table(3, 8, search=search)


@pytest.fixture(scope="module")
def table4(search):
    return e_table(4, 8, search=search)


@pytest.fixture(scope="module")
def table5():
    return e_table(5, 13)


class TestReferenceTable:
    """Known edge-count sets."""

    def test_three_dimensional_region(self):
        """Test d = 3 is the region 3v/2 <= e <= 3v-6."""
        table = reference_table(3, 6)
        assert table[4] == {6}
        assert table[5] == {8, 9}
        assert table[6] == set(range(9, 13))

    def test_four_dimensional_list(self):
        """Test d = 4 uses the classical list."""
        table = reference_table(4, 11)
        assert table[8] == {16} | set(range(18, 29))
        assert table[11] == set(range(22, 56))

    def test_five_dimensional_region(self):
        """Test d = 5 keeps the simple cases and drops the exceptions."""
        table = reference_table(5, 13)
        assert table[6] == {15}
        assert 25 not in table[9]
        assert 24 in table[9]
        assert 25 in table[10]
        assert 26 not in table[10]
        assert 35 not in table[13]

    def test_unsupported_dimension(self):
        """Test reference tables stop at d = 5."""
        with pytest.raises(ValueError):
            reference_table(6, 10)


class TestEdgeTable:
    """Computed tables against the reference."""

    def test_three_dimensional_table(self, table3):
        """Test every d = 3 entry is decided and agrees with the reference."""
        assert compare_with_reference(table3) == []
        for row in table3.rows:
            assert row.unknown == []
            assert set(row.feasible) == reference_table(3, 8)[row.f0]

    def test_four_dimensional_table(self, table4):
        """Test the d = 4 table agrees with the classical list."""
        assert compare_with_reference(table4) == []
        assert table4.row(5).feasible == [10]
        assert table4.row(6).infeasible == [12]
        assert RULE_FOUR_POLY_817 == table4.row(8).verdicts[17].rule
        assert table4.row(7).verdicts[14].rule == RULE_TRIPLEX_LB

    @pytest.mark.parametrize("d, max_vertices", [(3, 12), (4, 10)])
    def test_full_tables_are_decided(self, d, max_vertices):
        """Test every entry is decided and matches the reference set."""
        self.check_decided(e_table(d, max_vertices), d, max_vertices)

    def test_five_dimensional_table_is_decided(self, table5):
        """Test every d = 5 entry up to 13 vertices is decided and matches the reference set."""
        self.check_decided(table5, 5, 13)

    @staticmethod
    def check_decided(table, d, max_vertices):
        reference = reference_table(d, max_vertices)
        assert compare_with_reference(table) == []
        assert [row.f0 for row in table.rows] == list(range(d + 1, max_vertices + 1))
        for row in table.rows:
            assert row.unknown == [], f"undecided entries for {row.f0} vertices"
            assert set(row.feasible) == reference[row.f0]

    def test_five_dimensional_exceptions(self, table5):
        """Test (9,25) and (13,35) are ruled out while neighbours are realized."""
        assert table5.row(9).verdicts[25].is_infeasible
        assert table5.row(13).verdicts[35].is_infeasible
        assert table5.row(9).verdicts[26].is_feasible
        assert table5.row(13).verdicts[34].is_feasible

    def test_missing_row(self, table4):
        """Test asking for a row outside the table."""
        with pytest.raises(KeyError):
            table4.row(20)

    def test_to_dict(self, table3):
        """Test rows serialize with compact ranges."""
        data = table3.to_dict()
        assert data['dim'] == 3
        first = data['rows'][0]
        assert first['f0'] == 4
        assert first['feasible'] == "6"
        assert first['entries'][0]['witness']

    def test_unsupported_dimension(self):
        """Test tables are limited to d in 3..5."""
        with pytest.raises(ValueError):
            e_table(6, 8)


class TestSpectrum:
    """Excess values over a corpus."""

    def test_gap_in_dimension_four(self):
        """Test no 4-polytope in the corpus has excess one."""
        values = spectrum(4, 8, depth=1)
        assert 0 in values
        assert 1 not in values
        assert 2 in values

    def test_five_dimensional_spectrum_below_twenty(self):
        """Test excess 0 and every value from 3 to 19 occur, and 1 and 2 never do."""
        values = spectrum(5, 19)
        assert {x for x in values if x < 20} == {0} | set(range(3, 20))

    def test_reuses_given_corpus(self):
        """Test a supplied corpus is used as is."""
        corpus = generate_corpus(3, depth=0, max_vertices=6)
        values = spectrum(3, 5, corpus=corpus)
        assert values == corpus.excess_values(5)
        assert 0 in values


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
