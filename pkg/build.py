#!/usr/bin/env python3
"""
PolyForge Build Script
Builds the polyforge command-line executable using PyInstaller.

Usage:
    python build.py                       # One-file build for the current platform
    python build.py --onedir              # Build as a directory instead
    python build.py --debug               # Debug bootloader and import logging
    python build.py --portable --seed 3:10 --seed 4:10
                                          # Portable folder with config and a seeded catalog
"""

import json
import shutil
import subprocess
import sys
from dataclasses import asdict
from pathlib import Path

ROOT = Path(__file__).resolve().parent
sys.path.insert(0, str(ROOT))

from src.utils.constants import APP_NAME, APP_VERSION, EXIT_NEGATIVE, EXIT_SUCCESS

EXE_NAME = "polyforge"
MAIN_SCRIPT = "src/main.py"

PYINSTALLER_OPTS = [
    "--name", EXE_NAME,
    "--console",
    "--noconfirm",
    "--clean",
]

# networkx resolves its algorithm modules lazily
COLLECT_SUBMODULES = ["networkx"]
HIDDEN_IMPORTS = ["tqdm"]

# (arguments, expected exit code) run against the built executable
SMOKE_CHECKS = [
    (["--version"], EXIT_SUCCESS),
    (["witness", "--dim", "5", "--vertices", "9", "--edges", "26"], EXIT_SUCCESS),
    (["witness", "--dim", "5", "--vertices", "9", "--edges", "25"], EXIT_NEGATIVE),
]


def get_platform():
    if sys.platform == "win32":
        return "windows"
    if sys.platform == "darwin":
        return "macos"
    return "linux"


def executable_path(dist_path: Path) -> Path:
    suffix = ".exe" if get_platform() == "windows" else ""
    onefile = dist_path / f"{EXE_NAME}{suffix}"
    if onefile.exists():
        return onefile
    return dist_path / EXE_NAME / f"{EXE_NAME}{suffix}"


def clean_build():
    """Remove build/, dist/ and the generated spec file."""
    for name in ("build", "dist", f"{EXE_NAME}.spec"):
        path = ROOT / name
        if not path.exists():
            continue
        if path.is_file():
            path.unlink()
        else:
            shutil.rmtree(path)
        print(f"Cleaned: {name}")


def pyinstaller_command(onefile=True, debug=False):
    cmd = ["pyinstaller", *PYINSTALLER_OPTS, "--onefile" if onefile else "--onedir"]
    if debug:
        cmd.extend(["--debug", "imports", "--log-level", "DEBUG"])
    for package in COLLECT_SUBMODULES:
        cmd.extend(["--collect-submodules", package])
    for module in HIDDEN_IMPORTS:
        cmd.extend(["--hidden-import", module])
    if get_platform() == "macos":
        cmd.extend(["--osx-bundle-identifier", "org.polyforge.cli"])
    cmd.append(MAIN_SCRIPT)
    return cmd


def build_app(onefile=True, debug=False):
    """Run PyInstaller; True on success."""
    print(f"\n{'=' * 50}")
    print(f"Building {APP_NAME} v{APP_VERSION} ({get_platform()})")
    print(f"{'=' * 50}\n")

    clean_build()
    cmd = pyinstaller_command(onefile=onefile, debug=debug)
    print(f"Running: {' '.join(cmd)}\n")
    try:
        subprocess.run(cmd, check=True, cwd=ROOT)
    except subprocess.CalledProcessError as e:
        print(f"\nBuild failed with error: {e}")
        return False
    print(f"\nBuild successful: {executable_path(ROOT / 'dist')}")
    return True


def smoke_test(exe_path: Path):
    """Run a few CLI calls against the executable and compare exit codes."""
    ok = True
    for args, expected in SMOKE_CHECKS:
        completed = subprocess.run([str(exe_path), *args], capture_output=True, text=True)
        status = "ok" if completed.returncode == expected else "FAILED"
        print(f"  {status}: polyforge {' '.join(args)} -> {completed.returncode} (expected {expected})")
        if completed.returncode != expected:
            print(completed.stderr.strip())
            ok = False
    return ok


def parse_seed(text: str):
    """'d:max_vertices' as a pair of ints."""
    try:
        d, max_vertices = (int(part) for part in text.split(":"))
    except ValueError:
        raise SystemExit(f"--seed expects DIM:MAX_VERTICES, got {text!r}")
    return d, max_vertices


def write_portable_data(data_dir: Path, seeds):
    """Default config.json plus a catalog.jsonl seeded with named families."""
    from src.core.families import family_catalog
    from src.database.catalog import Catalog
    from src.utils.config import ConfigData

    data_dir.mkdir(parents=True, exist_ok=True)
    config = asdict(ConfigData())
    (data_dir / "config.json").write_text(json.dumps(config, indent=2), encoding="utf-8")

    catalog_path = data_dir / "catalog.jsonl"
    catalog_path.touch()
    catalog = Catalog(catalog_path)
    catalog.load()
    for d, max_vertices in seeds:
        added, duplicates = catalog.extend(family_catalog(d, max_vertices))
        print(f"  catalog d={d}, f0 <= {max_vertices}: {added} added, {duplicates} duplicates")
    return len(catalog)


def create_portable(seeds=()):
    """dist/<app>_Portable with the executable and a data folder next to it."""
    exe_path = executable_path(ROOT / "dist")
    if not exe_path.exists():
        print("Executable not found. Run build first.")
        return False

    portable_dir = ROOT / "dist" / f"{APP_NAME}_Portable"
    portable_dir.mkdir(exist_ok=True)
    if exe_path.parent == ROOT / "dist":
        shutil.copy2(exe_path, portable_dir / exe_path.name)
    else:
        shutil.copytree(exe_path.parent, portable_dir, dirs_exist_ok=True)
    entries = write_portable_data(portable_dir / "data", seeds)

    (portable_dir / "README.txt").write_text(f"""
{APP_NAME} v{APP_VERSION} - Portable Version

The 'data' folder next to the executable holds:
  config.json    kernel, search, decomposability and corpus settings
  catalog.jsonl  append-only catalog of polytopes ({entries} entries at build time)

Examples:
  {exe_path.name} construct pentasm 5 -o pentasm5.json
  {exe_path.name} witness --dim 5 --vertices 13 --edges 36
  {exe_path.name} corpus --dim 4 --max-vertices 10

Move the whole folder to keep the catalog with the executable.
""", encoding="utf-8")

    print(f"Portable version created: {portable_dir}")
    return True


def main():
    import argparse

    parser = argparse.ArgumentParser(description=f"Build {APP_NAME}")
    parser.add_argument("--onedir", action="store_true",
                        help="Build as directory instead of single file")
    parser.add_argument("--debug", action="store_true",
                        help="Build with debug bootloader and import logging")
    parser.add_argument("--portable", action="store_true",
                        help="Create portable version after build")
    parser.add_argument("--seed", action="append", default=[], metavar="DIM:MAX_VERTICES",
                        help="Seed the portable catalog with named families (repeatable)")
    parser.add_argument("--no-smoke", action="store_true",
                        help="Skip running the built executable")
    parser.add_argument("--clean", action="store_true",
                        help="Only clean build artifacts")
    args = parser.parse_args()

    if args.clean:
        clean_build()
        return 0

    if not build_app(onefile=not args.onedir, debug=args.debug):
        return 1
    if not args.no_smoke and not smoke_test(executable_path(ROOT / "dist")):
        return 1
    if args.portable and not create_portable([parse_seed(s) for s in args.seed]):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
