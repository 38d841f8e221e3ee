"""Core logic module for PolyForge."""

from .models import FVector, HalfSpace, Polytope
from .kernel import convex_hull, hull_polytope
from .lattice import FaceLattice, ValidationReport, build_lattice, f_vector, validate
from .isomorphism import CanonicalForm, canonical_form, is_isomorphic
from .analysis import ExcessReport, StructureVerdict, excess, small_excess_structure
from .decomp import DecompCertificate, classify, verify_certificate
from .expressions import construct, evaluate, parse, render
from .importer import ImportResult, PolytopeImporter
from .exporter import ExportResult, PolytopeExporter

__all__ = [
    'FVector',
    'HalfSpace',
    'Polytope',
    'convex_hull',
    'hull_polytope',
    'FaceLattice',
    'ValidationReport',
    'build_lattice',
    'f_vector',
    'validate',
    'CanonicalForm',
    'canonical_form',
    'is_isomorphic',
    'ExcessReport',
    'StructureVerdict',
    'excess',
    'small_excess_structure',
    'DecompCertificate',
    'classify',
    'verify_certificate',
    'construct',
    'evaluate',
    'parse',
    'render',
    'ImportResult',
    'PolytopeImporter',
    'ExportResult',
    'PolytopeExporter',
]
