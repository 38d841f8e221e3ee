"""Catalog record model for PolyForge."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..core.analysis import excess_degree, is_semisimple, is_simple, pyramid_structure, shephard_facets
from ..core.isomorphism import CanonicalForm, canonical_form
from ..core.lattice import f_vector
from ..core.models import Polytope


@dataclass
class CatalogEntry:
    """
    One combinatorial type in the catalog.

    The digest of the canonical form is the key; every provenance under
    which the type was inserted is kept in `provenances`.
    """
    digest: str
    dim: int
    num_vertices: int
    num_facets: int
    incidences: List[List[int]]
    f_vector: List[int]
    excess: int
    simple: bool
    semisimple: bool
    pyramid_fold: int
    shephard_count: int
    provenances: List[str] = field(default_factory=list)
    verdict: Optional[str] = None

    @property
    def provenance(self) -> str:
        return self.provenances[0] if self.provenances else ""

    @property
    def canonical(self) -> CanonicalForm:
        return CanonicalForm(dim=self.dim, num_vertices=self.num_vertices,
                             num_facets=self.num_facets,
                             incidences=tuple(tuple(p) for p in self.incidences))

    def to_polytope(self) -> Polytope:
        """Unrealized polytope in canonical labelling."""
        return self.canonical.to_polytope(name=self.provenance)

    def add_provenance(self, provenance: str) -> bool:
        if not provenance or provenance in self.provenances:
            return False
        self.provenances.append(provenance)
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            'digest': self.digest,
            'dim': self.dim,
            'num_vertices': self.num_vertices,
            'num_facets': self.num_facets,
            'incidences': self.incidences,
            'f_vector': self.f_vector,
            'excess': self.excess,
            'flags': {
                'simple': self.simple,
                'semisimple': self.semisimple,
                'pyramid_fold': self.pyramid_fold,
                'shephard_count': self.shephard_count,
            },
            'provenances': self.provenances,
            'verdict': self.verdict,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CatalogEntry':
        flags = data['flags']
        return cls(
            digest=data['digest'],
            dim=data['dim'],
            num_vertices=data['num_vertices'],
            num_facets=data['num_facets'],
            incidences=[list(p) for p in data['incidences']],
            f_vector=list(data['f_vector']),
            excess=data['excess'],
            simple=flags['simple'],
            semisimple=flags['semisimple'],
            pyramid_fold=flags['pyramid_fold'],
            shephard_count=flags['shephard_count'],
            provenances=list(data.get('provenances', [])),
            verdict=data.get('verdict'),
        )

    @classmethod
    def from_polytope(cls, P: Polytope, verdict: Optional[str] = None) -> 'CatalogEntry':
        form = canonical_form(P)
        return cls(
            digest=form.digest,
            dim=form.dim,
            num_vertices=form.num_vertices,
            num_facets=form.num_facets,
            incidences=[list(p) for p in form.incidences],
            f_vector=list(f_vector(P)),
            excess=excess_degree(P),
            simple=is_simple(P),
            semisimple=is_semisimple(P),
            pyramid_fold=pyramid_structure(P).fold,
            shephard_count=len(shephard_facets(P)),
            provenances=[P.provenance] if P.provenance else [],
            verdict=verdict,
        )
