"""Exhaustive oracle: enumerate orientations with pruning."""

from __future__ import annotations

from typing import Optional

from ..instances import Instance, Orientation
from ..search import count_orientations, find_orientation


def solve_brute(inst: Instance, cap: Optional[int] = None) -> Optional[Orientation]:
    return find_orientation(inst, cap=cap)


def count_brute(inst: Instance, cap: Optional[int] = None) -> int:
    return count_orientations(inst, cap=cap)
