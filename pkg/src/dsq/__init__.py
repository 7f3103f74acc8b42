"""Disingquandles, G-families and coloring invariants of dichromatic singular links."""
from importlib.resources import files
from pathlib import Path

__version__ = "0.1.0"


def data_dir() -> Path:
    """Directory holding the shipped ``links/`` and ``structures/`` corpus."""
    return Path(str(files(__name__) / "data"))
