"""
Command-line interface for PolyForge.

Exit codes: 0 success, 1 negative answer, 2 unknown, 3 error.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import __version__
from .utils import constants
from .utils.config import Config
from .utils.constants import EXIT_ERROR, EXIT_NEGATIVE, EXIT_SUCCESS, EXIT_UNKNOWN
from .utils.helpers import format_duration, format_ranges, get_unique_filename, progress_enabled, setup_logging

logger = logging.getLogger(__name__)


def _out(text: str = "") -> None:
    print(text)


def _load(path: str):
    from .core.importer import PolytopeImporter
    from .core.exceptions import InterchangeError

    result = PolytopeImporter().import_file(path)
    for warning in result.warnings:
        logger.warning("%s: %s", path, warning)
    if not result.success:
        raise InterchangeError(f"{path}: " + "; ".join(result.errors))
    return result.polytope


def _progress(args) -> bool:
    return progress_enabled(args.verbosity, Config().search.progress)


def _search(args):
    from .atlas.witness import WitnessSearch

    search = Config().search
    return WitnessSearch(max_states=search.max_states, push_facets=search.push_facets,
                         push_levels=search.push_levels, progress=_progress(args))


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_construct(args) -> int:
    from .core.exporter import PolytopeExporter, document, polytope_to_dict
    from .core.expressions import construct
    from .core.lattice import validate

    P = construct(args.expression, args.params)
    if Config().kernel.check_hull_output:
        report = validate(P)
        for check in report.failed():
            logger.warning("constructed %s fails %s: %s", P.provenance, check.name, check.witness)

    output = args.output
    if output is None and args.save:
        output = get_unique_filename(Path.cwd(), P.provenance, ".json")
    exporter = PolytopeExporter()
    if output is None:
        _out(exporter.to_text(document('polytope', polytope_to_dict(P))))
        return EXIT_SUCCESS
    result = exporter.export_polytope(P, str(output))
    if not result.success:
        logger.error("could not write %s: %s", output, result.error)
        return EXIT_ERROR
    _out(f"{P.provenance} written to {result.file_path}")
    return EXIT_SUCCESS


def cmd_analyze(args) -> int:
    from .core.analysis import analysis_report
    from .core.exporter import PolytopeExporter

    P = _load(args.file)
    report = analysis_report(P)
    if args.output:
        result = PolytopeExporter().export_report(P, report, args.output)
        if not result.success:
            logger.error("could not write %s: %s", args.output, result.error)
            return EXIT_ERROR
    if args.json:
        _out(json.dumps(report, indent=2))
        return EXIT_SUCCESS

    _out(f"{report['label']}  (d={report['dim']})")
    _out(f"  f-vector:      {tuple(report['f_vector'])}")
    _out(f"  excess:        {report['excess']['total']}  nonsimple vertices {report['excess']['nonsimple']}")
    _out(f"  simple:        {report['simple']}  semisimple: {report['semisimple']}  "
         f"super-Kirkman: {report['super_kirkman']}")
    _out(f"  pyramid fold:  {report['pyramid_fold']}")
    _out(f"  Shephard facets: {report['shephard_facets']}")
    if 'census_type' in report:
        _out(f"  census type:   {report['census_type']}")
    if 'structure' in report:
        _out(f"  structure:     {report['structure']['case']}")
    return EXIT_SUCCESS


def cmd_classify(args) -> int:
    from .core.decomp import classify, conflict_check
    from .core.exporter import PolytopeExporter

    P = _load(args.file)
    depth = args.depth if args.depth is not None else Config().decomp.depth
    certificate = classify(P, depth=depth)
    conflict = conflict_check(P)
    if conflict:
        logger.error("rule conflict: %s", conflict)
        return EXIT_ERROR
    if args.output:
        result = PolytopeExporter().export_certificate(P, certificate, args.output)
        if not result.success:
            logger.error("could not write %s: %s", args.output, result.error)
            return EXIT_ERROR
    _out(f"{P.label}: {certificate.verdict} ({certificate.evidence})")
    if certificate.reason:
        _out(f"  {certificate.reason}")
    if certificate.is_decomposable:
        return EXIT_SUCCESS
    return EXIT_NEGATIVE if certificate.is_indecomposable else EXIT_UNKNOWN


def cmd_verify_cert(args) -> int:
    from .core.decomp import verify_certificate
    from .core.importer import PolytopeImporter

    P, certificate = PolytopeImporter().load_certificate(args.file)
    outcome = verify_certificate(P, certificate)
    if outcome.valid:
        _out(f"certificate valid: {certificate.verdict} ({certificate.evidence})")
        return EXIT_SUCCESS
    _out(f"certificate invalid: {outcome.reason}")
    return EXIT_NEGATIVE


def cmd_iso(args) -> int:
    from .core.isomorphism import canonical_form, is_isomorphic

    P, Q = _load(args.first), _load(args.second)
    same = is_isomorphic(P, Q)
    if same:
        _out(f"isomorphic (digest {canonical_form(P).digest})")
        return EXIT_SUCCESS
    _out("not isomorphic")
    return EXIT_NEGATIVE


def cmd_witness(args) -> int:
    from .atlas.witness import witness
    from .core.exporter import PolytopeExporter, document

    verdict = witness(args.dim, args.vertices, args.edges, search=_search(args))
    if args.output:
        result = PolytopeExporter().export_document(document('verdict', verdict.to_dict()),
                                                    args.output)
        if not result.success:
            logger.error("could not write %s: %s", args.output, result.error)
            return EXIT_ERROR
    if args.json:
        _out(json.dumps(verdict.to_dict(), indent=2))
    else:
        line = f"{verdict.status}: (d={verdict.dim}, f0={verdict.f0}, f1={verdict.f1})"
        if verdict.rule:
            line += f" by {verdict.rule}"
        if verdict.witness:
            line += f" witness {verdict.witness}"
        if verdict.note:
            line += f" [{verdict.note}]"
        _out(line)
    if verdict.is_feasible:
        return EXIT_SUCCESS
    return EXIT_NEGATIVE if verdict.is_infeasible else EXIT_UNKNOWN


def cmd_table(args) -> int:
    from .atlas.tables import compare_with_reference, e_table

    started = time.monotonic()
    table = e_table(args.dim, args.max_vertices, search=_search(args), progress=_progress(args))
    if args.json:
        _out(json.dumps(table.to_dict(), indent=2))
    else:
        for row in table.rows:
            line = f"E({row.f0},{table.dim}) = {format_ranges(row.feasible)}"
            if row.unknown:
                line += f"   unknown: {format_ranges(row.unknown)}"
            _out(line)
    problems = compare_with_reference(table)
    for problem in problems:
        logger.error("table disagreement: %s", problem)
    logger.info("table finished in %s", format_duration(time.monotonic() - started))
    if problems:
        return EXIT_NEGATIVE
    if any(row.unknown for row in table.rows):
        return EXIT_UNKNOWN
    return EXIT_SUCCESS


def cmd_spectrum(args) -> int:
    from .atlas.tables import spectrum

    config = Config().corpus
    max_vertices = args.max_vertices or config.max_vertices
    values = spectrum(args.dim, max_vertices, depth=args.depth, progress=_progress(args))
    _out(f"excess spectrum d={args.dim}, f0 <= {max_vertices}: {format_ranges(values)}")
    gap = [x for x in values if 1 <= x <= args.dim - 3]
    if gap:
        logger.error("excess values inside the forbidden gap: %s", gap)
        return EXIT_ERROR
    return EXIT_SUCCESS


def cmd_corpus(args) -> int:
    from .atlas.corpus import generate_corpus
    from .database.catalog import Catalog

    config = Config()
    max_vertices = args.max_vertices or config.corpus.max_vertices
    path = Path(args.catalog) if args.catalog else config.catalog_path
    result = generate_corpus(args.dim, depth=args.depth, max_vertices=max_vertices,
                             max_members=config.corpus.max_members, progress=_progress(args))
    catalog = Catalog(path)
    loaded = catalog.load()
    added, duplicates = catalog.extend(result.members, progress=_progress(args))
    _out(f"corpus d={args.dim} depth {args.depth}: {len(result)} distinct polytopes; "
         f"{added} added to {path}, {duplicates} already present")
    if loaded.skipped:
        _out(f"  {loaded.skipped} corrupt catalog line(s) skipped")
    if result.partial:
        _out("  corpus is partial: " + "; ".join(result.warnings))
        return EXIT_UNKNOWN
    return EXIT_SUCCESS


def cmd_validate(args) -> int:
    from .core.lattice import validate

    P = _load(args.file)
    report = validate(P)
    if args.json:
        _out(json.dumps(report.to_dict(), indent=2))
    else:
        for check in report.checks:
            status = "ok" if check.passed else "FAILED"
            line = f"  {check.name:<12} {status}"
            if check.witness:
                line += f"  ({check.witness})"
            _out(line)
    return EXIT_SUCCESS if report.valid else EXIT_NEGATIVE


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyforge",
        description="Exact-arithmetic polytope constructions and feasibility atlas")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="More logging (repeat for debug)")
    parser.add_argument("-q", "--quiet", action="store_true", help="Warnings only")
    parser.add_argument("--config", help="Configuration file to use")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="Build a polytope from an expression or family")
    p.add_argument("expression", help="Provenance expression or family name")
    p.add_argument("params", nargs="*", help="Integer parameters for a family name")
    p.add_argument("-o", "--output", help="Output file")
    p.add_argument("--save", action="store_true",
                   help="Write to a file named after the expression in the current directory")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("analyze", help="Excess degree and structure report")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="Write a report document")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("classify", help="Decomposability verdict with certificate")
    p.add_argument("file")
    p.add_argument("--depth", type=int, help="Facet recursion depth")
    p.add_argument("-o", "--output", help="Write a certificate document")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("verify-cert", help="Replay a certificate document")
    p.add_argument("file")
    p.set_defaults(handler=cmd_verify_cert)

    p = sub.add_parser("iso", help="Combinatorial isomorphism test")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(handler=cmd_iso)

    p = sub.add_parser("witness", help="Is there a d-polytope with these counts?")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("-o", "--output", help="Write a verdict document")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_witness)

    p = sub.add_parser("table", help="Edge-count table E(v, d)")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("spectrum", help="Excess values achieved by the corpus")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--depth", type=int, default=constants.DEFAULT_CORPUS_DEPTH)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("corpus", help="Generate a corpus and store it in the catalog")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--depth", type=int, default=constants.DEFAULT_CORPUS_DEPTH)
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--catalog", help="Catalog file (JSONL)")
    p.set_defaults(handler=cmd_corpus)

    p = sub.add_parser("validate", help="Structural validation report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_validate)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch, and map failures to exit codes."""
    from .core.exceptions import PolyForgeError

    parser = build_parser()
    args = parser.parse_args(argv)
    args.verbosity = -1 if args.quiet else args.verbose
    setup_logging(args.verbosity)

    if args.config:
        constants.CONFIG_PATH = Path(args.config)
        Config._instance = None

    try:
        return args.handler(args)
    except (PolyForgeError, ValueError, OSError) as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
