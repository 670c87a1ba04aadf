"""Graph-orientation toolkit.

Decide whether a multigraph's edges can be directed so that every vertex's
local in/out pattern lies in its declared type; classify type sets as
polynomial or NP-complete; verify gadget simulations by enumeration; and
apply the machinery to curveless KPlumber puzzles and polyomino tiling.
"""

from .relations import (
    Alternator,
    Constant,
    CROSSOVER_RELATION,
    Equalizer,
    External,
    General,
    Relation,
    SYNCHRONIZER_RELATION,
    Symmetric,
    SymmetricSpec,
    Synchronizer,
    expand,
    i_in_j,
    sym,
)
from .instances import Instance, euler_check, faces, validate
from .gadgets import Gadget, derived_type, simulates, substitute

__all__ = [
    "Alternator",
    "Constant",
    "CROSSOVER_RELATION",
    "Equalizer",
    "External",
    "Gadget",
    "General",
    "Instance",
    "Relation",
    "SYNCHRONIZER_RELATION",
    "Symmetric",
    "SymmetricSpec",
    "Synchronizer",
    "derived_type",
    "euler_check",
    "expand",
    "faces",
    "i_in_j",
    "simulates",
    "substitute",
    "sym",
    "validate",
]
