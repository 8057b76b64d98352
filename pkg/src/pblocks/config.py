"""Desk-scale resource ceilings.

All enumeration in this package is exact and therefore exponential in the
worst case.  The limits below keep runs at interactive scale; every limit is
configurable per call site.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    max_order: int = 5000
    max_p_subgroup_classes: int = 10_000
    max_chain_orbits: int = 100_000

    def __post_init__(self) -> None:
        if self.max_order < 1 or self.max_p_subgroup_classes < 1 or self.max_chain_orbits < 1:
            raise ValueError("ceilings must be positive")


DEFAULT_LIMITS = Limits()
