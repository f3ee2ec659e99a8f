"""Hurwitz trees: validation, realizability checks and boundary normal forms."""

from ._core import (
    HurwitzError,
    Tree,
    boundary,
    criterion_small_partition,
    disk_bound,
    search_point,
    small_maximal_partition,
)

__all__ = [
    "HurwitzError",
    "Tree",
    "boundary",
    "criterion_small_partition",
    "disk_bound",
    "search_point",
    "small_maximal_partition",
]
