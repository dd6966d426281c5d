"""Delay and space transformations for enumeration algorithms, made measurable."""

from .core import (DONE, CostModel, EnumerationTrace, Enumerator, Poly, Snapshot,
                   check_incremental, detect_gaps, record_trace, resume, snapshot)

__version__ = "0.1.0"

__all__ = [
    "DONE", "CostModel", "EnumerationTrace", "Enumerator", "Poly", "Snapshot",
    "check_incremental", "detect_gaps", "record_trace", "resume", "snapshot",
]
