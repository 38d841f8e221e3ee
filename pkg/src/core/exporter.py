"""
Interchange document writer for PolyForge.

Every file is a JSON object tagged with "format": "polyforge", a version
and a kind. Coordinates are written as exact "p/q" strings.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from ..utils.constants import APP_VERSION, DOCUMENT_KINDS, FORMAT_VERSION
from ..utils.helpers import format_rational
from .models import Polytope

logger = logging.getLogger(__name__)

FORMAT_TAG = "polyforge"


@dataclass
class ExportResult:
    """Result of an export operation."""
    success: bool
    file_path: str
    error: Optional[str] = None


def document(kind: str, body: Dict[str, Any]) -> Dict[str, Any]:
    """Wrap a body in the interchange container."""
    if kind not in DOCUMENT_KINDS:
        raise ValueError(f"Unknown document kind: {kind}")
    doc = {'format': FORMAT_TAG, 'version': FORMAT_VERSION, 'kind': kind}
    doc.update(body)
    return doc


def polytope_to_dict(P: Polytope) -> Dict[str, Any]:
    """Polytope fields in interchange form (without the container)."""
    data: Dict[str, Any] = {
        'dim': P.dim,
        'num_vertices': P.num_vertices,
        'facets': [sorted(f) for f in P.facets],
        'name': P.name,
        'provenance': P.provenance,
    }
    if P.is_realized:
        data['vertices'] = [[format_rational(c) for c in point] for point in P.vertices]
    return data


class PolytopeExporter:
    """Write polytopes, reports and certificates as interchange documents."""

    def __init__(self, encoding: str = 'utf-8', indent: Optional[int] = 2):
        self.encoding = encoding
        self.indent = indent

    def to_text(self, doc: Dict[str, Any]) -> str:
        return json.dumps(doc, indent=self.indent, ensure_ascii=False)

    def export_document(self, doc: Dict[str, Any], output_path: str) -> ExportResult:
        """Write any container document."""
        try:
            path = Path(output_path)
            if path.parent and not path.parent.exists():
                path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding=self.encoding) as f:
                f.write(self.to_text(doc))
                f.write('\n')
            logger.debug("wrote %s document to %s", doc.get('kind'), path)
            return ExportResult(success=True, file_path=str(path))
        except Exception as e:
            return ExportResult(success=False, file_path=str(output_path), error=str(e))

    def export_polytope(self, P: Polytope, output_path: str) -> ExportResult:
        return self.export_document(document('polytope', polytope_to_dict(P)), output_path)

    def export_report(self, P: Polytope, report: Dict[str, Any], output_path: str) -> ExportResult:
        body = {'polytope': polytope_to_dict(P), 'report': report,
                'generator': f"PolyForge {APP_VERSION}"}
        return self.export_document(document('report', body), output_path)

    def export_certificate(self, P: Polytope, certificate, output_path: str) -> ExportResult:
        """Certificate documents embed the polytope so they replay on their own."""
        body = {'polytope': polytope_to_dict(P), 'certificate': certificate.to_dict()}
        return self.export_document(document('certificate', body), output_path)
