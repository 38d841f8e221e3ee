"""Configuration management for PolyForge."""

import json
import logging
from pathlib import Path
from typing import Any, Optional
from dataclasses import dataclass, field, asdict

from . import constants

logger = logging.getLogger(__name__)


@dataclass
class KernelConfig:
    """Exact kernel settings."""
    check_hull_output: bool = False


@dataclass
class SearchConfig:
    """Witness search settings."""
    max_states: int = constants.DEFAULT_MAX_STATES
    push_facets: int = constants.DEFAULT_PUSH_FACETS
    push_levels: int = constants.DEFAULT_PUSH_LEVELS
    progress: bool = True


@dataclass
class DecompConfig:
    """Decomposability settings."""
    depth: int = constants.DEFAULT_DECOMP_DEPTH


@dataclass
class CorpusConfig:
    """Corpus generation settings."""
    max_vertices: int = constants.DEFAULT_CORPUS_MAX_VERTICES
    max_dim: int = constants.CORPUS_MAX_DIM
    depth: int = constants.DEFAULT_CORPUS_DEPTH
    max_members: int = constants.DEFAULT_CORPUS_MAX_MEMBERS


@dataclass
class CatalogConfig:
    """Catalog storage settings."""
    path: Optional[str] = None


@dataclass
class ConfigData:
    """Complete application configuration."""
    kernel: KernelConfig = field(default_factory=KernelConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    decomp: DecompConfig = field(default_factory=DecompConfig)
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    catalog: CatalogConfig = field(default_factory=CatalogConfig)


class Config:
    """Configuration manager backed by a JSON file."""

    _instance: Optional['Config'] = None
    _config: ConfigData

    def __new__(cls) -> 'Config':
        """Singleton pattern."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialize()
        return cls._instance

    def _initialize(self) -> None:
        """Initialize configuration."""
        self._config = ConfigData()
        self.load()

    def _ensure_dirs(self) -> None:
        """Ensure the config directory exists."""
        constants.CONFIG_PATH.parent.mkdir(parents=True, exist_ok=True)

    def load(self) -> None:
        """Load configuration from file."""
        path = constants.CONFIG_PATH
        if path.exists():
            try:
                with open(path, 'r', encoding='utf-8') as f:
                    data = json.load(f)
                self._apply_dict(data)
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                logger.warning("Error loading config %s: %s. Using defaults.", path, e)
                self._config = ConfigData()

    def save(self) -> None:
        """Save configuration to file."""
        self._ensure_dirs()
        data = self._to_dict()
        with open(constants.CONFIG_PATH, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, ensure_ascii=False)

    def _to_dict(self) -> dict:
        """Convert config to dictionary."""
        return {
            'kernel': asdict(self._config.kernel),
            'search': asdict(self._config.search),
            'decomp': asdict(self._config.decomp),
            'corpus': asdict(self._config.corpus),
            'catalog': asdict(self._config.catalog),
        }

    def _apply_dict(self, data: dict) -> None:
        """Apply dictionary to config."""
        if 'kernel' in data:
            self._config.kernel = KernelConfig(**data['kernel'])
        if 'search' in data:
            self._config.search = SearchConfig(**data['search'])
        if 'decomp' in data:
            self._config.decomp = DecompConfig(**data['decomp'])
        if 'corpus' in data:
            self._config.corpus = CorpusConfig(**data['corpus'])
        if 'catalog' in data:
            self._config.catalog = CatalogConfig(**data['catalog'])

    # Property accessors
    @property
    def kernel(self) -> KernelConfig:
        return self._config.kernel

    @property
    def search(self) -> SearchConfig:
        return self._config.search

    @property
    def decomp(self) -> DecompConfig:
        return self._config.decomp

    @property
    def corpus(self) -> CorpusConfig:
        return self._config.corpus

    @property
    def catalog(self) -> CatalogConfig:
        return self._config.catalog

    @property
    def catalog_path(self) -> Path:
        """Catalog location, falling back to the data directory."""
        if self._config.catalog.path:
            return Path(self._config.catalog.path)
        return constants.CATALOG_PATH

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value by key path (e.g., 'search.max_states')."""
        parts = key.split('.')
        obj = self._config
        for part in parts:
            if hasattr(obj, part):
                obj = getattr(obj, part)
            else:
                return default
        return obj

    def set(self, key: str, value: Any) -> None:
        """Set a configuration value by key path."""
        parts = key.split('.')
        obj = self._config
        for part in parts[:-1]:
            if hasattr(obj, part):
                obj = getattr(obj, part)
            else:
                return
        if hasattr(obj, parts[-1]):
            setattr(obj, parts[-1], value)
            self.save()
