"""Helper functions for PolyForge."""

import logging
import re
import sys
import unicodedata
from fractions import Fraction
from typing import Iterable, Optional
from pathlib import Path

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')


def parse_rational(text) -> Fraction:
    """Parse "p/q", "n" or an int into an exact Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"Not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise ValueError(f"Not a rational: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    if den == 0:
        raise ValueError(f"Zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Format a Fraction as "p/q", or "n" when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_ranges(values: Iterable[int]) -> str:
    """Format a set of integers as compact ranges, e.g. "16, 18-28"."""
    ordered = sorted(set(values))
    if not ordered:
        return "{}"
    parts = []
    start = prev = ordered[0]
    for v in ordered[1:]:
        if v == prev + 1:
            prev = v
            continue
        parts.append(f"{start}" if start == prev else f"{start}-{prev}")
        start = prev = v
    parts.append(f"{start}" if start == prev else f"{start}-{prev}")
    return ", ".join(parts)


def format_duration(seconds: float) -> str:
    """Format duration in seconds to human readable string."""
    seconds = int(seconds)
    if seconds < 60:
        return f"{seconds} s"
    elif seconds < 3600:
        minutes = seconds // 60
        secs = seconds % 60
        if secs:
            return f"{minutes} min {secs} s"
        return f"{minutes} min"
    else:
        hours = seconds // 3600
        minutes = (seconds % 3600) // 60
        if minutes:
            return f"{hours} h {minutes} min"
        return f"{hours} h"


def sanitize_filename(filename: str) -> str:
    """Sanitize string for use as filename."""
    # Remove or replace invalid characters
    invalid_chars = '<>:"/\\|?*^(){},'
    for char in invalid_chars:
        filename = filename.replace(char, '_')

    # Remove control characters
    filename = ''.join(c for c in filename if unicodedata.category(c) != 'Cc')

    if len(filename) > 200:
        filename = filename[:200]

    return filename.strip('_ ') or "unnamed"


def get_unique_filename(directory: Path, base_name: str, extension: str) -> Path:
    """Get unique filename in directory."""
    sanitized = sanitize_filename(base_name)
    path = directory / f"{sanitized}{extension}"

    counter = 1
    while path.exists():
        path = directory / f"{sanitized}_{counter}{extension}"
        counter += 1

    return path


def detect_encoding(file_path: Path) -> str:
    """Try to detect file encoding."""
    encodings = ['utf-8', 'utf-8-sig', 'utf-16', 'cp1252', 'iso-8859-1']

    for encoding in encodings:
        try:
            with open(file_path, 'r', encoding=encoding) as f:
                f.read()
            return encoding
        except (UnicodeDecodeError, UnicodeError):
            continue

    return 'utf-8'


def setup_logging(verbosity: int = 0, stream=None) -> None:
    """
    Configure the root logger once.

    verbosity: -1 quiet (warnings only), 0 info, 1 or more debug.
    """
    if verbosity < 0:
        level = logging.WARNING
    elif verbosity == 0:
        level = logging.INFO
    else:
        level = logging.DEBUG

    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, '_polyforge', False):
            root.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(
        '%(asctime)s %(levelname)s %(name)s: %(message)s'))
    handler._polyforge = True
    root.addHandler(handler)
    root.setLevel(level)


def progress_enabled(verbosity: Optional[int] = None, configured: bool = True) -> bool:
    """Progress bars show only when configured and not in quiet mode."""
    if not configured:
        return False
    if verbosity is not None and verbosity < 0:
        return False
    return logging.getLogger().getEffectiveLevel() <= logging.INFO


def binomial_pairs(n: int) -> int:
    """Number of unordered pairs among n items."""
    return n * (n - 1) // 2

