"""Tests for configuration and helper functions."""

import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.utils import constants
from src.utils.config import Config
from src.utils.helpers import (
    binomial_pairs,
    format_duration,
    format_ranges,
    format_rational,
    get_unique_filename,
    parse_rational,
    sanitize_filename,
)


class TestConfig:
    """Test cases for Config."""

    @pytest.fixture
    def config_path(self, tmp_path):
        """Point the config singleton at a temporary file."""
        original = constants.CONFIG_PATH
        constants.CONFIG_PATH = tmp_path / "config.json"
        Config._instance = None

        yield constants.CONFIG_PATH

        constants.CONFIG_PATH = original
        Config._instance = None

    def test_defaults(self, config_path):
        """Test defaults when no file exists."""
        config = Config()
        assert config.search.max_states == constants.DEFAULT_MAX_STATES
        assert config.decomp.depth == constants.DEFAULT_DECOMP_DEPTH
        assert config.kernel.check_hull_output is False
        assert config.catalog_path == constants.CATALOG_PATH

    def test_singleton(self, config_path):
        """Test Config is a singleton."""
        assert Config() is Config()

    def test_load_from_file(self, config_path):
        """Test sections are read from the JSON file."""
        config_path.write_text(json.dumps({
            'search': {'max_states': 50, 'push_facets': 1, 'push_levels': 2, 'progress': False},
            'catalog': {'path': str(config_path.parent / "mine.jsonl")},
        }), encoding='utf-8')

        config = Config()
        assert config.search.max_states == 50
        assert config.search.progress is False
        assert config.catalog_path == config_path.parent / "mine.jsonl"
        assert config.corpus.depth == constants.DEFAULT_CORPUS_DEPTH

    def test_corrupt_file_falls_back(self, config_path):
        """Test an unreadable config file gives defaults."""
        config_path.write_text("{broken", encoding='utf-8')
        assert Config().search.max_states == constants.DEFAULT_MAX_STATES

    def test_unknown_key_falls_back(self, config_path):
        """Test an unexpected field in a section gives defaults."""
        config_path.write_text(json.dumps({'decomp': {'depth': 2, 'colour': 'red'}}), encoding='utf-8')
        assert Config().decomp.depth == constants.DEFAULT_DECOMP_DEPTH

    def test_get_and_set(self, config_path):
        """Test dotted access and persistence."""
        config = Config()
        assert config.get('corpus.max_vertices') == constants.DEFAULT_CORPUS_MAX_VERTICES
        assert config.get('corpus.nothing', 'x') == 'x'

        config.set('decomp.depth', 3)
        saved = json.loads(config_path.read_text(encoding='utf-8'))
        assert saved['decomp']['depth'] == 3

        Config._instance = None
        assert Config().decomp.depth == 3


class TestHelpers:
    """Test cases for helper functions."""

    @pytest.mark.parametrize("text, expected", [
        ("1/3", Fraction(1, 3)),
        ("-4", Fraction(-4)),
        (" 6 / 4 ", Fraction(3, 2)),
        (7, Fraction(7)),
    ])
    def test_parse_rational(self, text, expected):
        """Test exact parsing of p/q strings."""
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["1.5", "x", "1/0", True, ""])
    def test_parse_rational_rejects(self, text):
        """Test malformed rationals raise ValueError."""
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_format_rational(self):
        """Test integers print without a denominator."""
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-1, 3)) == "-1/3"

    def test_format_ranges(self):
        """Test runs collapse into ranges."""
        assert format_ranges([16, 18, 19, 20, 28, 21]) == "16, 18-21, 28"
        assert format_ranges([]) == "{}"

    def test_format_duration(self):
        """Test duration formatting."""
        assert format_duration(5) == "5 s"
        assert format_duration(125) == "2 min 5 s"
        assert format_duration(3600) == "1 h"

    def test_binomial_pairs(self):
        """Test pair counts."""
        assert binomial_pairs(9) == 36
        assert binomial_pairs(1) == 0

    def test_unique_filename(self, tmp_path):
        """Test provenance text becomes a safe, unused file name."""
        first = get_unique_filename(tmp_path, "truncate(cp(3,5),v0)", ".json")
        assert first.name == "truncate_cp_3_5__v0.json"
        first.write_text("{}", encoding='utf-8')
        second = get_unique_filename(tmp_path, "truncate(cp(3,5),v0)", ".json")
        assert second.name == "truncate_cp_3_5__v0_1.json"

    def test_sanitize_empty(self):
        """Test a name made only of separators."""
        assert sanitize_filename("(){}") == "unnamed"


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
