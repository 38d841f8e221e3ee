"""
Append-only catalog of combinatorial types.

Each line of the file is an interchange document of kind "catalog-entry":
either a full entry, or a provenance note naming an existing digest. Load
merges lines by digest, so a duplicate insert never rewrites the file.
"""

import json
import logging
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from tqdm import tqdm

from ..core.exporter import document
from ..core.importer import PolytopeImporter
from ..core.exceptions import InterchangeError
from ..core.models import Polytope
from .models import CatalogEntry

logger = logging.getLogger(__name__)

ENTRY_KIND = "catalog-entry"


@dataclass
class LoadResult:
    """Result of reading a catalog file."""
    success: bool
    entries: int = 0
    notes: int = 0
    skipped: int = 0
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


class Catalog:
    """
    Catalog backed by a JSONL file.

    All writes go through `_append`, which holds a lock, so concurrent
    producers share one writer.
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._entries: Dict[str, CatalogEntry] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, item: Union[str, Polytope]) -> bool:
        if isinstance(item, Polytope):
            item = CatalogEntry.from_polytope(item).digest
        return item in self._entries

    # ------------------------------------------------------------------
    # Reading
    # ------------------------------------------------------------------

    def load(self) -> LoadResult:
        """Read the file, skipping corrupt lines with a warning."""
        self._entries = {}
        result = LoadResult(success=True)
        if not self.path.exists():
            return result

        try:
            with open(self.path, 'r', encoding='utf-8') as f:
                lines = f.readlines()
        except OSError as e:
            result.success = False
            result.errors.append(f"Cannot read catalog {self.path}: {e}")
            return result

        for number, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                self._apply_line(line, result)
            except (InterchangeError, KeyError, TypeError, ValueError) as e:
                result.skipped += 1
                message = f"line {number}: skipped corrupt record ({e})"
                result.warnings.append(message)
                logger.warning("catalog %s %s", self.path, message)

        result.entries = len(self._entries)
        logger.info("catalog %s: %d entries, %d notes, %d skipped",
                    self.path, result.entries, result.notes, result.skipped)
        return result

    def _apply_line(self, line: str, result: LoadResult) -> None:
        doc = PolytopeImporter.check_container(json.loads(line))
        if doc['kind'] != ENTRY_KIND:
            raise InterchangeError(f"unexpected document kind {doc['kind']!r}")
        if 'entry' in doc:
            entry = CatalogEntry.from_dict(doc['entry'])
            existing = self._entries.get(entry.digest)
            if existing is None:
                self._entries[entry.digest] = entry
            else:
                for provenance in entry.provenances:
                    existing.add_provenance(provenance)
                existing.verdict = existing.verdict or entry.verdict
        elif 'note' in doc:
            note = doc['note']
            entry = self._entries.get(note['digest'])
            if entry is None:
                raise InterchangeError(f"note for unknown digest {note['digest']}")
            entry.add_provenance(note['provenance'])
            result.notes += 1
        else:
            raise InterchangeError("catalog record has neither entry nor note")

    def entries(self) -> List[CatalogEntry]:
        return list(self._entries.values())

    def get(self, digest: str) -> Optional[CatalogEntry]:
        return self._entries.get(digest)

    def find(self, dim: Optional[int] = None, f0: Optional[int] = None,
             f1: Optional[int] = None, excess: Optional[int] = None) -> List[CatalogEntry]:
        """Entries matching every given field."""
        matches = []
        for entry in self._entries.values():
            if dim is not None and entry.dim != dim:
                continue
            if f0 is not None and entry.f_vector[0] != f0:
                continue
            if f1 is not None and (len(entry.f_vector) < 2 or entry.f_vector[1] != f1):
                continue
            if excess is not None and entry.excess != excess:
                continue
            matches.append(entry)
        return matches

    # ------------------------------------------------------------------
    # Writing
    # ------------------------------------------------------------------

    def _append(self, records: Iterable[dict]) -> None:
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, 'a', encoding='utf-8') as f:
                for record in records:
                    f.write(json.dumps(record, ensure_ascii=False, separators=(',', ':')))
                    f.write('\n')

    def _records_for(self, entry: CatalogEntry) -> Tuple[bool, List[dict]]:
        existing = self._entries.get(entry.digest)
        if existing is None:
            self._entries[entry.digest] = entry
            return True, [document(ENTRY_KIND, {'entry': entry.to_dict()})]
        records = []
        for provenance in entry.provenances:
            if existing.add_provenance(provenance):
                records.append(document(ENTRY_KIND, {
                    'note': {'digest': entry.digest, 'provenance': provenance}}))
        return False, records

    def add_entry(self, entry: CatalogEntry) -> bool:
        """Insert an entry; True if its type was new."""
        is_new, records = self._records_for(entry)
        if records:
            self._append(records)
        return is_new

    def add(self, P: Polytope, verdict: Optional[str] = None) -> bool:
        return self.add_entry(CatalogEntry.from_polytope(P, verdict))

    def extend(self, polytopes: Iterable[Polytope], progress: bool = False) -> Tuple[int, int]:
        """
        Insert many polytopes in one write.

        Entries are written in (dim, f-vector, digest) order so the file
        does not depend on the order of the input. Returns (added, duplicates).
        """
        entries = [CatalogEntry.from_polytope(P)
                   for P in tqdm(list(polytopes), desc="catalog", disable=not progress, leave=False)]
        entries.sort(key=lambda e: (e.dim, e.f_vector, e.digest, e.provenance))
        added = duplicates = 0
        records: List[dict] = []
        for entry in entries:
            is_new, new_records = self._records_for(entry)
            records.extend(new_records)
            if is_new:
                added += 1
            else:
                duplicates += 1
        if records:
            self._append(records)
        logger.info("catalog %s: %d added, %d duplicates", self.path, added, duplicates)
        return added, duplicates
