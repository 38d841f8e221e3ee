"""Error hierarchy for PolyForge."""

from typing import Any, Optional


class PolyForgeError(Exception):
    """Base class for all PolyForge errors."""


class KernelError(PolyForgeError):
    """Degenerate input or a failed exact geometric step."""


class InvalidPolytopeError(PolyForgeError):
    """Incidence data that does not describe a polytope."""

    def __init__(self, message: str, check: str = "", witness: Optional[Any] = None):
        super().__init__(message)
        self.check = check
        self.witness = witness


class ConstructionError(PolyForgeError, ValueError):
    """Bad constructor parameters or a missing realization."""


class ExpressionError(PolyForgeError, ValueError):
    """Malformed provenance expression or unknown constructor name."""


class InterchangeError(PolyForgeError):
    """Malformed interchange document."""


class StructureError(PolyForgeError, ValueError):
    """Structure classification called outside its excess range."""


class CertificateError(PolyForgeError, ValueError):
    """A certificate step that does not replay, such as a broken cycle."""
