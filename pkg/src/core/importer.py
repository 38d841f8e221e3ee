"""
Interchange document reader for PolyForge.

Reads the JSON container written by the exporter. Structural problems
(bad indices, unparsable coordinates) are errors; whether the incidences
really describe a polytope is left to lattice.validate.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from ..utils.constants import FORMAT_VERSION
from ..utils.helpers import detect_encoding, parse_rational
from .exceptions import ExpressionError, InterchangeError
from .exporter import FORMAT_TAG
from .models import Polytope

logger = logging.getLogger(__name__)


@dataclass
class ImportResult:
    """Result of an import operation."""
    success: bool
    polytope: Optional[Polytope] = None
    document: Optional[Dict[str, Any]] = None
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def polytope_from_dict(data: Dict[str, Any]) -> Polytope:
    """Build a Polytope from interchange fields; raises InterchangeError."""
    if not isinstance(data, dict):
        raise InterchangeError("polytope entry must be an object")
    try:
        dim = data['dim']
        facets = data['facets']
    except KeyError as e:
        raise InterchangeError(f"missing field {e.args[0]!r}") from e
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise InterchangeError(f"dim must be a nonnegative integer, got {dim!r}")
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise InterchangeError("facets must be a list of index lists")

    vertices = None
    if data.get('vertices') is not None:
        try:
            vertices = [[parse_rational(c) for c in point] for point in data['vertices']]
        except (TypeError, ValueError) as e:
            raise InterchangeError(f"bad coordinate: {e}") from e
        if vertices and len({len(p) for p in vertices}) != 1:
            raise InterchangeError("vertices have different ambient dimensions")

    num_vertices = data.get('num_vertices')
    if num_vertices is None:
        num_vertices = len(vertices) if vertices is not None else None
    for f in facets:
        for v in f:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InterchangeError(f"facet index {v!r} is not a nonnegative integer")
            if num_vertices is not None and v >= num_vertices:
                raise InterchangeError(f"facet index {v} out of range for {num_vertices} vertices")

    try:
        return Polytope.build(dim=dim, facets=facets, num_vertices=num_vertices,
                              vertices=vertices, name=str(data.get('name') or ""),
                              provenance=str(data.get('provenance') or ""))
    except ValueError as e:
        raise InterchangeError(str(e)) from e


class PolytopeImporter:
    """Read interchange documents."""

    def __init__(self, encoding: Optional[str] = None):
        self.encoding = encoding

    def read_document(self, file_path: str) -> Dict[str, Any]:
        """Parse and check the container; raises InterchangeError."""
        path = Path(file_path)
        if not path.exists():
            raise InterchangeError(f"File not found: {file_path}")
        encoding = self.encoding or detect_encoding(path)
        try:
            with open(path, 'r', encoding=encoding) as f:
                doc = json.load(f)
        except json.JSONDecodeError as e:
            raise InterchangeError(f"Invalid JSON: {e}") from e
        return self.check_container(doc)

    @staticmethod
    def check_container(doc: Any) -> Dict[str, Any]:
        if not isinstance(doc, dict):
            raise InterchangeError("document must be a JSON object")
        if doc.get('format') != FORMAT_TAG:
            raise InterchangeError(f"not a {FORMAT_TAG} document")
        version = doc.get('version')
        if version != FORMAT_VERSION:
            raise InterchangeError(f"unsupported format version {version!r}")
        if 'kind' not in doc:
            raise InterchangeError("document has no kind")
        return doc

    def import_text(self, text: str) -> ImportResult:
        try:
            doc = self.check_container(json.loads(text))
            return self._result(doc)
        except json.JSONDecodeError as e:
            return ImportResult(success=False, errors=[f"Invalid JSON: {e}"])
        except InterchangeError as e:
            return ImportResult(success=False, errors=[str(e)])

    def import_file(self, file_path: str) -> ImportResult:
        """
        Read a polytope from any document that carries one.

        Polytope documents hold the fields at top level; reports and
        certificates nest them under "polytope".
        """
        try:
            doc = self.read_document(file_path)
            return self._result(doc)
        except InterchangeError as e:
            return ImportResult(success=False, errors=[str(e)])
        except Exception as e:
            return ImportResult(success=False, errors=[f"Error importing file: {e}"])

    def _result(self, doc: Dict[str, Any]) -> ImportResult:
        warnings = []
        body = doc if doc['kind'] == 'polytope' else doc.get('polytope')
        if body is None:
            return ImportResult(success=False, document=doc,
                                errors=[f"{doc['kind']} document carries no polytope"])
        polytope = polytope_from_dict(body)
        if not polytope.is_realized:
            warnings.append("no realization; geometric operations are unavailable")
        if polytope.provenance:
            from .expressions import parse
            try:
                parse(polytope.provenance)
            except ExpressionError as e:
                warnings.append(f"provenance does not parse: {e}")
        return ImportResult(success=True, polytope=polytope, document=doc, warnings=warnings)

    def load_certificate(self, file_path: str) -> Tuple[Polytope, Any]:
        """Polytope and certificate from a certificate document."""
        from .decomp import DecompCertificate

        result = self.import_file(file_path)
        if not result.success:
            raise InterchangeError("; ".join(result.errors))
        doc = result.document
        if doc.get('kind') != 'certificate' or 'certificate' not in doc:
            raise InterchangeError("not a certificate document")
        return result.polytope, DecompCertificate.from_dict(doc['certificate'])
