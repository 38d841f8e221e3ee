"""Utility module for PolyForge."""

from .config import Config
from .helpers import *
from .constants import *

__all__ = ['Config']
