"""Colored noncrossing diagram categories, their tensor maps, and the laws of their main characters."""
from __future__ import annotations

from .colored import D, DBAR_INF, CategoryLabel, ColoredPartition, count_category, enumerate_category
from .errors import ArityMismatchError, BoundExceededError, ResourceLimitError
from .laws import DiscreteMeasure
from .moments import CumulantSequence, character_cumulants, character_moments
from .partitions import Partition, enumerate_nc

__version__ = "0.1.0"

__all__ = [
    "ArityMismatchError",
    "BoundExceededError",
    "CategoryLabel",
    "ColoredPartition",
    "CumulantSequence",
    "D",
    "DBAR_INF",
    "DiscreteMeasure",
    "Partition",
    "ResourceLimitError",
    "character_cumulants",
    "character_moments",
    "count_category",
    "enumerate_category",
    "enumerate_nc",
]
