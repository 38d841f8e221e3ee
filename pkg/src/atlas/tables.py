"""
Edge-count tables E(v, d) and excess spectra.

A table row lists, for one vertex count, the verdict of every edge count
between the degree bound and the Euler (or binomial) bound.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

from tqdm import tqdm

from ..utils.constants import E4_TABLE, STATUS_FEASIBLE, STATUS_INFEASIBLE, STATUS_UNKNOWN
from ..utils.helpers import binomial_pairs, format_ranges
from .corpus import CorpusResult, generate_corpus
from .feasibility import FeasibilityVerdict, edge_bounds
from .witness import WitnessSearch, default_search, replay

logger = logging.getLogger(__name__)

TABLE_DIMS = (3, 4, 5)


@dataclass
class TableRow:
    """Verdicts for every candidate edge count at one vertex count."""
    dim: int
    f0: int
    verdicts: Dict[int, FeasibilityVerdict] = field(default_factory=dict)

    def with_status(self, status: str) -> List[int]:
        return sorted(f1 for f1, v in self.verdicts.items() if v.status == status)

    @property
    def feasible(self) -> List[int]:
        return self.with_status(STATUS_FEASIBLE)

    @property
    def infeasible(self) -> List[int]:
        return self.with_status(STATUS_INFEASIBLE)

    @property
    def unknown(self) -> List[int]:
        return self.with_status(STATUS_UNKNOWN)

    def to_dict(self) -> dict:
        return {
            'f0': self.f0,
            'feasible': format_ranges(self.feasible),
            'infeasible': format_ranges(self.infeasible),
            'unknown': format_ranges(self.unknown),
            'entries': [self.verdicts[f1].to_dict() for f1 in sorted(self.verdicts)],
        }


@dataclass
class EdgeTable:
    dim: int
    max_vertices: int
    rows: List[TableRow] = field(default_factory=list)

    def row(self, f0: int) -> TableRow:
        for row in self.rows:
            if row.f0 == f0:
                return row
        raise KeyError(f"no row for f0={f0}")

    def to_dict(self) -> dict:
        return {'dim': self.dim, 'max_vertices': self.max_vertices,
                'rows': [row.to_dict() for row in self.rows]}


def reference_table(d: int, max_vertices: int) -> Dict[int, FrozenSet[int]]:
    """
    Known E(v, d) for d = 3, 4, 5.

    d = 3 is the classical region, d = 4 the classical list (with the
    interval [2v, C(v,2)] from eleven vertices on), d = 5 the theorem region.
    """
    if d not in TABLE_DIMS:
        raise ValueError(f"reference tables exist for d in {TABLE_DIMS}, got {d}")
    table: Dict[int, FrozenSet[int]] = {}
    for v in range(d + 1, max_vertices + 1):
        if d == 3:
            values = set(range(-(-3 * v // 2), 3 * v - 5))
        elif d == 4:
            values = set(E4_TABLE.get(v, range(2 * v, binomial_pairs(v) + 1)))
        else:
            values = set(range(-(-(5 * v + 3) // 2), binomial_pairs(v) + 1))
            if v == 6 or (v % 2 == 0 and v >= 10):
                values.add(5 * v // 2)
            values -= {25} if v == 9 else set()
            values -= {35} if v == 13 else set()
        table[v] = frozenset(values)
    return table


def e_table(d: int, max_vertices: int, search: Optional[WitnessSearch] = None,
            progress: bool = False) -> EdgeTable:
    """Verdict for every (f0, f1) with d+1 <= f0 <= max_vertices."""
    if d not in TABLE_DIMS:
        raise ValueError(f"edge tables are supported for d in {TABLE_DIMS}, got {d}")
    search = search or default_search()
    if d > 3:
        search.prepare(d, max_vertices)
    table = EdgeTable(dim=d, max_vertices=max_vertices)
    for f0 in tqdm(range(d + 1, max_vertices + 1), desc=f"E(v,{d})",
                   disable=not progress, leave=False):
        row = TableRow(dim=d, f0=f0)
        lower, upper = edge_bounds(d, f0)
        for f1 in range(lower, upper + 1):
            row.verdicts[f1] = search.find(d, f0, f1)
        table.rows.append(row)
        logger.info("E(%d,%d): feasible %s, unknown %s", f0, d,
                    format_ranges(row.feasible), format_ranges(row.unknown))
    return table


def compare_with_reference(table: EdgeTable) -> List[str]:
    """
    Disagreements with the reference table.

    An Infeasible verdict on a known value, or a Feasible verdict outside the
    known set, is a disagreement; Unknown entries never are. Every witness
    is also replayed.
    """
    reference = reference_table(table.dim, table.max_vertices)
    problems = []
    for row in table.rows:
        known = reference[row.f0]
        for f1, verdict in sorted(row.verdicts.items()):
            if verdict.is_infeasible and f1 in known:
                problems.append(f"({row.f0},{f1}) ruled out by {verdict.rule} but is known feasible")
            if verdict.is_feasible:
                if f1 not in known:
                    problems.append(f"({row.f0},{f1}) has witness {verdict.witness} "
                                    f"but is not in the reference set")
                check = replay(verdict.witness, table.dim, row.f0, f1)
                if not check.valid:
                    problems.append(f"({row.f0},{f1}): {check.reason}")
    return problems


def spectrum(d: int, max_vertices: int, corpus: Optional[CorpusResult] = None,
             depth: int = 1, progress: bool = False) -> List[int]:
    """Sorted excess degrees achieved by corpus members with at most max_vertices vertices."""
    if corpus is None:
        corpus = generate_corpus(d, depth=depth, max_vertices=max_vertices, progress=progress)
    values = corpus.excess_values(max_vertices)
    logger.info("excess spectrum d=%d up to %d vertices: %s", d, max_vertices, format_ranges(values))
    return values
