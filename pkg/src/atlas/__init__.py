"""Feasibility atlas: rules, witnesses, edge tables and corpora."""

from .feasibility import FeasibilityVerdict, feasibility
from .witness import WitnessSearch, replay, witness
from .tables import EdgeTable, TableRow, compare_with_reference, e_table, reference_table, spectrum
from .corpus import CorpusResult, generate_corpus

__all__ = [
    'FeasibilityVerdict',
    'feasibility',
    'WitnessSearch',
    'replay',
    'witness',
    'EdgeTable',
    'TableRow',
    'compare_with_reference',
    'e_table',
    'reference_table',
    'spectrum',
    'CorpusResult',
    'generate_corpus',
]
