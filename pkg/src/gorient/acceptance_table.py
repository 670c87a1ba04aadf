"""Curated classifier rows with their settled verdicts.

Each row pins a type set, the planarity flag, the expected tag, and (for
polynomial rows) the expected solver.  The suite runner re-derives every
verdict and compares.
"""

from __future__ import annotations

from typing import Optional

from .classify import AlgorithmId, GammaSpec, classify, gamma
from .relations import Alternator, Equalizer, SYNCHRONIZER_RELATION, expand, i_in_j, sym

SYNC = SYNCHRONIZER_RELATION
ALT4 = expand(Alternator(4))
EQ = lambda k: expand(Equalizer(k))

#: (label, gamma, planar, expected tag, expected algorithm or None)
ROWS: list[tuple[str, GammaSpec, bool, str, Optional[AlgorithmId]]] = [
    (
        "{0,3}-in-3 with 1-in-3",
        gamma([sym(3, [0, 3]), i_in_j(1, 3)]),
        False,
        "NP-complete",
        None,
    ),
    (
        "{0,3}-in-3 with 1-in-3, planar",
        gamma([sym(3, [0, 3]), i_in_j(1, 3)]),
        True,
        "NP-complete",
        None,
    ),
    (
        "{0,3}-in-3 with 2-in-3, planar",
        gamma([sym(3, [0, 3]), i_in_j(2, 3)]),
        True,
        "NP-complete",
        None,
    ),
    ("{0,3}-in-4 alone", gamma([sym(4, [0, 3])]), False, "NP-complete", None),
    ("{0,3}-in-4 alone, planar", gamma([sym(4, [0, 3])]), True, "NP-complete", None),
    ("{1,4}-in-4 alone", gamma([sym(4, [1, 4])]), False, "NP-complete", None),
    ("{0,3,4}-in-4 alone", gamma([sym(4, [0, 3, 4])]), False, "NP-complete", None),
    ("{0,1,4}-in-5 with constants", gamma([sym(5, [0, 1, 4])], has_constants=True), False, "NP-complete", None),
    (
        "{0,4}-in-4 with 1-in-4, constants",
        gamma([sym(4, [0, 4]), i_in_j(1, 4)], has_constants=True),
        False,
        "NP-complete",
        None,
    ),
    (
        "1-in-3 with a 3-equalizer, planar",
        gamma([i_in_j(1, 3)], duplicators=[EQ(3)]),
        True,
        "NP-complete",
        None,
    ),
    (
        "1-in-3 with a 4-equalizer, planar",
        gamma([i_in_j(1, 3)], duplicators=[EQ(4)]),
        True,
        "NP-complete",
        None,
    ),
    (
        "1-in-3 with a 5-equalizer, planar",
        gamma([i_in_j(1, 3)], duplicators=[EQ(5)]),
        True,
        "P",
        AlgorithmId.PLANAR_K5,
    ),
    (
        "1-in-3 with a 5-equalizer",
        gamma([i_in_j(1, 3)], duplicators=[EQ(5)]),
        False,
        "NP-complete",
        None,
    ),
    (
        "2-in-4 with a synchronizer",
        gamma([i_in_j(2, 4)], duplicators=[SYNC]),
        True,
        "NP-complete",
        None,
    ),
    (
        "1-in-4 and 3-in-4 with a synchronizer",
        gamma([i_in_j(1, 4), i_in_j(3, 4)], duplicators=[SYNC]),
        True,
        "NP-complete",
        None,
    ),
    (
        "1-in-4 with a synchronizer",
        gamma([i_in_j(1, 4)], duplicators=[SYNC]),
        True,
        "P",
        AlgorithmId.COUNTING,
    ),
    (
        "3-in-4 with a synchronizer",
        gamma([i_in_j(3, 4)], duplicators=[SYNC]),
        True,
        "P",
        AlgorithmId.COUNTING,
    ),
    (
        "0-in-3, 1-in-3, 3-in-3 with a synchronizer",
        gamma([i_in_j(0, 3), i_in_j(1, 3), i_in_j(3, 3)], duplicators=[SYNC]),
        False,
        "P",
        AlgorithmId.COUNTING,
    ),
    (
        "2-in-4 with alternators, planar",
        gamma([i_in_j(2, 4)], duplicators=[ALT4]),
        True,
        "P",
        AlgorithmId.PLANAR_LP,
    ),
    (
        "1-in-5 with alternators, planar",
        gamma([i_in_j(1, 5)], duplicators=[ALT4]),
        True,
        "P",
        AlgorithmId.PLANAR_LP,
    ),
    (
        "2-in-4 with alternators",
        gamma([i_in_j(2, 4)], duplicators=[ALT4]),
        False,
        "NP-complete",
        None,
    ),
    (
        "{1,4}-in-8 with {0,2}-in-2 (open)",
        gamma([sym(8, [1, 4]), sym(2, [0, 2])]),
        False,
        "Unknown",
        None,
    ),
    (
        "full {0,1,2}-in-2 with constants",
        gamma([sym(2, [0, 1, 2])], has_constants=True),
        False,
        "P",
        AlgorithmId.TWO_SAT,
    ),
    (
        "{1,3}-in-3 with {0,2}-in-2, constants",
        gamma([sym(3, [1, 3]), sym(2, [0, 2])], has_constants=True),
        False,
        "P",
        AlgorithmId.AFFINE,
    ),
    (
        "{0,2}-in-4 with constants (gap one)",
        gamma([sym(4, [0, 2])], has_constants=True),
        False,
        "P",
        AlgorithmId.GAPFREE,
    ),
    (
        "{1,2}-in-3 with constants (gapless)",
        gamma([sym(3, [1, 2])], has_constants=True),
        True,
        "P",
        AlgorithmId.GAPFREE,
    ),
    (
        "1-in-7 with {0,7}-in-7 and constants, planar",
        gamma([i_in_j(1, 7), sym(7, [0, 7])], has_constants=True),
        True,
        "P",
        AlgorithmId.PLANAR_K5,
    ),
    (
        "6-in-7 with {0,7}-in-7 and constants, planar",
        gamma([i_in_j(6, 7), sym(7, [0, 7])], has_constants=True),
        True,
        "P",
        AlgorithmId.PLANAR_K5,
    ),
    (
        "1-in-7 with {0,7}-in-7 and constants",
        gamma([i_in_j(1, 7), sym(7, [0, 7])], has_constants=True),
        False,
        "NP-complete",
        None,
    ),
    (
        "{0,3,4,5,6}-in-6 (top-down closed, gap of two)",
        gamma([sym(6, [0, 3, 4, 5, 6])]),
        False,
        "P",
        AlgorithmId.MONOTONE_TOP_DOWN,
    ),
    (
        "{0,1,2,3,6}-in-6 (bottom-up closed, gap of two)",
        gamma([sym(6, [0, 1, 2, 3, 6])]),
        False,
        "P",
        AlgorithmId.MONOTONE_BOTTOM_UP,
    ),
    (
        "trivial duplicators only",
        gamma([i_in_j(1, 2), sym(2, [0, 2])]),
        False,
        "P",
        AlgorithmId.TWO_SAT,
    ),
]


def curated_table() -> list[tuple[str, bool]]:
    out = []
    for label, g, planar, tag, algo in ROWS:
        verdict = classify(g, planar)
        ok = verdict.tag == tag and (algo is None or verdict.algorithm == algo)
        out.append((label, ok))
    return out
