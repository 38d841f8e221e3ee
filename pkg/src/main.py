#!/usr/bin/env python3
"""
PolyForge - exact-arithmetic polytope toolkit
Entry point for the polyforge executable and `python src/main.py`.
"""

import sys
from pathlib import Path

# Frozen builds already carry the src package
if not getattr(sys, "frozen", False):
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent))


def main(argv=None) -> int:
    """Run the CLI; Ctrl-C during a long search exits with the error code."""
    from src.cli import run
    from src.utils.constants import EXIT_ERROR

    try:
        return run(argv)
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
