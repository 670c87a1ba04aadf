"""Polynomial solvers plus the brute-force oracle; all return an
orientation or None for unsatisfiable."""

from __future__ import annotations

from typing import Optional, Union

from ..classify import AlgorithmId, choose_algorithm
from ..instances import Instance, Orientation
from .affine import solve_affine
from .brute import count_brute, solve_brute
from .counting import solve_counting
from .gapfree import solve_gapfree
from .lp import solve_planar_alternator_lp, two_color_orient
from .monotone import solve_monotone
from .planar_k5 import solve_planar_k5
from .twosat import solve_2sat

SOLVERS = {
    AlgorithmId.TWO_SAT: solve_2sat,
    AlgorithmId.AFFINE: solve_affine,
    AlgorithmId.GAPFREE: solve_gapfree,
    AlgorithmId.MONOTONE_TOP_DOWN: lambda inst: solve_monotone(inst, "top_down"),
    AlgorithmId.MONOTONE_BOTTOM_UP: lambda inst: solve_monotone(inst, "bottom_up"),
    AlgorithmId.PLANAR_K5: solve_planar_k5,
    AlgorithmId.PLANAR_LP: solve_planar_alternator_lp,
    AlgorithmId.COUNTING: solve_counting,
    AlgorithmId.BRUTE: solve_brute,
}


class NoneKnown:
    """Marker: no implemented polynomial algorithm covers the instance."""

    def __repr__(self):
        return "NoneKnown"


NONE_KNOWN = NoneKnown()


def dispatch(
    inst: Instance, allow_brute: bool = False
) -> Union[Optional[Orientation], NoneKnown]:
    algo = choose_algorithm(inst)
    if algo is None:
        if allow_brute:
            return solve_brute(inst)
        return NONE_KNOWN
    return SOLVERS[algo](inst)


__all__ = [
    "AlgorithmId",
    "NONE_KNOWN",
    "NoneKnown",
    "SOLVERS",
    "count_brute",
    "dispatch",
    "choose_algorithm",
    "solve_2sat",
    "solve_affine",
    "solve_brute",
    "solve_counting",
    "solve_gapfree",
    "solve_monotone",
    "solve_planar_alternator_lp",
    "solve_planar_k5",
    "two_color_orient",
]
