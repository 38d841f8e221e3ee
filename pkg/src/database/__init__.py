"""Catalog storage for PolyForge."""

from .models import CatalogEntry
from .catalog import Catalog, LoadResult

__all__ = [
    'CatalogEntry',
    'Catalog',
    'LoadResult',
]
