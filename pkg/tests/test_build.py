"""Tests for the build script helpers."""

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from build import MAIN_SCRIPT, parse_seed, pyinstaller_command, write_portable_data
from src.database.catalog import Catalog


class TestPyInstallerCommand:
    """Command line handed to PyInstaller."""

    def test_console_one_file(self):
        """Test the default build is a one-file console app ending with the entry script."""
        cmd = pyinstaller_command()
        assert cmd[0] == "pyinstaller"
        assert "--console" in cmd
        assert "--onefile" in cmd
        assert cmd[-1] == MAIN_SCRIPT

    def test_onedir_debug(self):
        """Test --onedir and debug flags."""
        cmd = pyinstaller_command(onefile=False, debug=True)
        assert "--onedir" in cmd
        assert "--onefile" not in cmd
        assert cmd[cmd.index("--debug") + 1] == "imports"

    def test_networkx_submodules_collected(self):
        """Test networkx submodules are bundled."""
        cmd = pyinstaller_command()
        assert cmd[cmd.index("--collect-submodules") + 1] == "networkx"


class TestPortableData:
    """Data folder shipped next to the executable."""

    def test_parse_seed(self):
        """Test DIM:MAX_VERTICES parsing."""
        assert parse_seed("4:10") == (4, 10)

    def test_parse_seed_rejects_garbage(self):
        """Test a malformed seed stops the build."""
        with pytest.raises(SystemExit):
            parse_seed("four")

    def test_writes_config_and_catalog(self, tmp_path):
        """Test config.json holds every section and the catalog is seeded."""
        data_dir = tmp_path / "data"
        count = write_portable_data(data_dir, [(3, 6)])

        config = json.loads((data_dir / "config.json").read_text(encoding="utf-8"))
        assert set(config) == {"kernel", "search", "decomp", "corpus", "catalog"}
        assert count > 0
        catalog = Catalog(data_dir / "catalog.jsonl")
        catalog.load()
        assert len(catalog) == count

    def test_rerun_adds_no_duplicates(self, tmp_path):
        """Test seeding twice keeps one entry per polytope type."""
        data_dir = tmp_path / "data"
        first = write_portable_data(data_dir, [(3, 6)])
        assert write_portable_data(data_dir, [(3, 6)]) == first

    def test_no_seeds_gives_empty_catalog(self, tmp_path):
        """Test an unseeded build still ships an empty catalog file."""
        data_dir = tmp_path / "data"
        assert write_portable_data(data_dir, []) == 0
        assert (data_dir / "catalog.jsonl").read_text(encoding="utf-8") == ""


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
