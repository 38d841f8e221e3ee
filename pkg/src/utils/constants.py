"""Constants for PolyForge application."""

import os
import sys
from pathlib import Path

# Application info
APP_NAME = "PolyForge"
APP_VERSION = "1.0.0"
APP_AUTHOR = "PolyForge Team"

# Determine data directory based on platform
def get_data_dir() -> Path:
    """Get the appropriate data directory for the current platform."""
    if sys.platform == "win32":
        base = Path(os.environ.get("APPDATA", Path.home()))
    elif sys.platform == "darwin":
        base = Path.home() / "Library" / "Application Support"
    else:
        base = Path(os.environ.get("XDG_DATA_HOME", Path.home() / ".local" / "share"))

    return base / APP_NAME

# Paths
DATA_DIR = get_data_dir()
CATALOG_PATH = DATA_DIR / "catalog.jsonl"
CONFIG_PATH = DATA_DIR / "config.json"

# Portable mode: a data folder next to the executable (or the checkout) wins
if getattr(sys, "frozen", False):
    PORTABLE_DATA_DIR = Path(sys.executable).parent / "data"
else:
    PORTABLE_DATA_DIR = Path(__file__).parent.parent.parent / "data"
if PORTABLE_DATA_DIR.exists():
    DATA_DIR = PORTABLE_DATA_DIR
    CATALOG_PATH = DATA_DIR / "catalog.jsonl"
    CONFIG_PATH = DATA_DIR / "config.json"

# Interchange format
FORMAT_VERSION = 1
DOCUMENT_KINDS = ("polytope", "report", "certificate", "verdict", "catalog-entry")

# Decomposability
DEFAULT_DECOMP_DEPTH = 1

# Witness search budgets
DEFAULT_MAX_STATES = 4000
DEFAULT_PUSH_FACETS = 3
DEFAULT_PUSH_LEVELS = 4

# Corpus defaults
DEFAULT_CORPUS_DEPTH = 1
DEFAULT_CORPUS_MAX_VERTICES = 16
CORPUS_MAX_DIM = 7
CORPUS_HARD_VERTEX_LIMIT = 40
DEFAULT_CORPUS_MAX_MEMBERS = 5000
CORPUS_MAX_DEPTH = 2

# Feasibility rule identifiers, in the order they are applied
RULE_EDGE_BOUNDS = "EdgeBounds"
RULE_EXCESS_GAP = "ExcessGap"
RULE_EXCESS_D1_DIM = "ExcessD1Dim"
RULE_TRIPLEX_LB = "TriplexLB"
RULE_PENTASM_LB = "PentasmLB"
RULE_FIVE_POLY_925 = "FivePoly925"
RULE_FIVE_POLY_1335 = "FivePoly1335"
RULE_FOUR_POLY_817 = "FourPoly817"
RULE_SIMPLE_CENSUS = "SimpleCensus"
RULE_SIMPLE5_CENSUS = "Simple5Census"

RULE_ORDER = (
    RULE_EDGE_BOUNDS,
    RULE_EXCESS_GAP,
    RULE_EXCESS_D1_DIM,
    RULE_TRIPLEX_LB,
    RULE_PENTASM_LB,
    RULE_FIVE_POLY_925,
    RULE_FIVE_POLY_1335,
    RULE_FOUR_POLY_817,
    RULE_SIMPLE_CENSUS,
    RULE_SIMPLE5_CENSUS,
)

# Rules recorded as axioms rather than derived by the rule layer
AXIOM_RULES = {
    RULE_FIVE_POLY_925: "classical result for 5-polytopes, not machine-verified",
    RULE_FIVE_POLY_1335: "classical result for 5-polytopes, not machine-verified",
    RULE_FOUR_POLY_817: "classical result for 4-polytopes, not machine-verified",
}

# Classical list of edge counts of 4-polytopes with few vertices
E4_TABLE = {
    5: frozenset({10}),
    6: frozenset(range(13, 16)),
    7: frozenset(range(15, 22)),
    8: frozenset({16}) | frozenset(range(18, 29)),
    9: frozenset(range(18, 37)),
    10: frozenset(range(21, 46)),
}

# CLI exit codes
EXIT_SUCCESS = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3

# Decomposability verdicts
VERDICT_DECOMPOSABLE = "Decomposable"
VERDICT_INDECOMPOSABLE = "Indecomposable"
VERDICT_UNKNOWN = "Unknown"

# Feasibility statuses
STATUS_FEASIBLE = "Feasible"
STATUS_INFEASIBLE = "Infeasible"
STATUS_UNKNOWN = "Unknown"
