"""Dichotomy classifiers: polynomial cases, hardness routes, open fragments.

Every verdict names either an implemented solver (P), a concrete gadget
route that lifts a known hard problem (NP-complete), or the open fragment
the input falls into (Unknown).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .instances import Instance
from .relations import (
    Alternator,
    Constant,
    Equalizer,
    General,
    Relation,
    Symmetric,
    SymmetricSpec,
    Synchronizer,
    bitstring,
    delta_gamma,
    duplicator_info,
    expand,
    is_affine,
    is_bijunctive,
    is_bottom_up_closed,
    is_symmetric,
    is_top_down_closed,
    max_gap,
    reverse_spec,
)


class AlgorithmId(str, Enum):
    TWO_SAT = "2sat"
    AFFINE = "affine"
    GAPFREE = "gapfree"
    MONOTONE_TOP_DOWN = "monotone-top-down"
    MONOTONE_BOTTOM_UP = "monotone-bottom-up"
    PLANAR_K5 = "planar-k5"
    PLANAR_LP = "planar-lp"
    COUNTING = "counting"
    BRUTE = "brute"


@dataclass(frozen=True)
class Verdict:
    tag: str  # "P" | "NP-complete" | "Unknown"
    planar: bool = False
    algorithm: Optional[AlgorithmId] = None
    case_label: str = ""
    route: str = ""
    note: str = ""

    @property
    def is_p(self) -> bool:
        return self.tag == "P"


def P(algorithm: AlgorithmId, case_label: str, planar: bool = False) -> Verdict:
    return Verdict("P", planar, algorithm, case_label)


def NPC(route: str, planar: bool = False) -> Verdict:
    return Verdict("NP-complete", planar, None, "", route)


def UNKNOWN(note: str, planar: bool = False) -> Verdict:
    return Verdict("Unknown", planar, None, "", "", note)


@dataclass(frozen=True)
class GammaSpec:
    """A set of vertex types offered to the classifier."""

    symmetric_types: frozenset[SymmetricSpec] = frozenset()
    duplicators: frozenset[Relation] = frozenset()
    has_constants: bool = False
    terminators: frozenset[int] = frozenset()  # signed f-terminators

    def __post_init__(self):
        object.__setattr__(self, "symmetric_types", frozenset(self.symmetric_types))
        object.__setattr__(self, "duplicators", frozenset(self.duplicators))
        object.__setattr__(self, "terminators", frozenset(self.terminators))
        for r in self.duplicators:
            if duplicator_info(r) is None:
                raise ValueError(f"{r!r} is not a duplicator")
        if 0 in self.terminators:
            raise ValueError("terminators carry a sign and exclude zero")


def gamma(
    symmetric_types: Iterable[SymmetricSpec] = (),
    duplicators: Iterable[Relation] = (),
    has_constants: bool = False,
    terminators: Iterable[int] = (),
) -> GammaSpec:
    return GammaSpec(
        frozenset(symmetric_types),
        frozenset(duplicators),
        has_constants,
        frozenset(terminators),
    )


# ---------------------------------------------------------------------------
# helpers


def terminator_via_self_loops(spec: SymmetricSpec) -> Optional[int]:
    """Signed terminator reachable by adding self-loops, if any.

    Each self-loop removes the extreme elements of S and shifts it down;
    the process ends at a terminator exactly when S has a unique element
    closest to half the degree.
    """
    cur = set(spec.in_set)
    j = spec.arity
    while True:
        if not cur:
            return None
        if cur == {0} and j >= 1:
            return -j
        if cur == {j} and j >= 1:
            return j
        if j < 2:
            return None
        cur = {i - 1 for i in cur if 1 <= i <= j - 1}
        j -= 2


def _derivable_terminators(g: GammaSpec) -> set[int]:
    out = set(g.terminators)
    if g.has_constants:
        out |= {1, -1}
    for spec in g.symmetric_types:
        j = spec.arity
        if spec.in_set == {j} and j >= 1:
            out.add(j)
        elif spec.in_set == {0} and j >= 1:
            out.add(-j)
        else:
            t = terminator_via_self_loops(spec)
            if t is not None:
                out.add(t)
    return out


def _all_bijunctive(g: GammaSpec) -> bool:
    rels = [expand(Symmetric(s)) for s in g.symmetric_types] + list(g.duplicators)
    return all(is_bijunctive(r) for r in rels)


def _all_affine(g: GammaSpec) -> bool:
    rels = [expand(Symmetric(s)) for s in g.symmetric_types] + list(g.duplicators)
    return all(is_affine(r) for r in rels)


def _sym_with_terminator_types(g: GammaSpec) -> frozenset[SymmetricSpec]:
    out = set(g.symmetric_types)
    for f in g.terminators:
        out.add(SymmetricSpec(abs(f), frozenset([f if f > 0 else 0])))
    if g.has_constants:
        out.add(SymmetricSpec(1, frozenset([1])))
        out.add(SymmetricSpec(1, frozenset([0])))
    return frozenset(out)


def _has_substring(spec: SymmetricSpec, pattern: str) -> bool:
    return pattern in bitstring(spec)


# ---------------------------------------------------------------------------
# classifiers


def classify_const(g: GammaSpec, planar: bool) -> Verdict:
    """Dichotomy for symmetric types with both constants available."""
    if g.duplicators and not all(
        is_symmetric(d) is not None for d in g.duplicators
    ):
        # nonzero-flow duplicators become pairs of equalizers; zero-flow
        # asymmetric ones (synchronizers) stay outside this fragment
        replaced = set(g.symmetric_types)
        for d in g.duplicators:
            info = duplicator_info(d)
            if info.net_flow == 0 and is_symmetric(d) is None:
                return UNKNOWN(
                    "synchronizer together with general symmetric types is "
                    "outside the classified fragment",
                    planar,
                )
            if info.net_flow:
                f = info.net_flow
                replaced.add(SymmetricSpec(2 * f, frozenset([0, 2 * f])))
                replaced.add(SymmetricSpec(3 * f, frozenset([0, 3 * f])))
        g = GammaSpec(frozenset(replaced), frozenset(), True, g.terminators)
    else:
        extra = {is_symmetric(d) for d in g.duplicators}
        g = GammaSpec(
            g.symmetric_types | {s for s in extra if s}, frozenset(), True, g.terminators
        )

    types = _sym_with_terminator_types(g)
    work = GammaSpec(types, frozenset(), True, frozenset())
    if _all_bijunctive(work):
        return P(AlgorithmId.TWO_SAT, "all types bijunctive", planar)
    if _all_affine(work):
        return P(AlgorithmId.AFFINE, "all types affine", planar)
    deltas = delta_gamma(types)
    if not deltas or max(deltas) <= 2:
        return P(AlgorithmId.GAPFREE, "no gaps of size 2 or more", planar)
    gcd = 0
    for d in deltas:
        gcd = math.gcd(gcd, d)
    if planar and gcd >= 5:
        if all(s.in_set <= {0, s.arity} or s.in_set == {1} for s in types):
            return P(
                AlgorithmId.PLANAR_K5,
                f"gcd of gaps {gcd} >= 5 with only terminators, equalizers and 1-in-j",
                planar,
            )
        if all(s.in_set <= {0, s.arity} or s.in_set == {s.arity - 1} for s in types):
            return P(
                AlgorithmId.PLANAR_K5,
                f"gcd of gaps {gcd} >= 5, reversed: only terminators, equalizers "
                "and (j-1)-in-j",
                planar,
            )
    if not planar:
        return NPC(
            "duplicators from gaps feed the clause-variable reduction for "
            "symmetric SAT with constants",
            planar,
        )
    return NPC(_planar_const_route(types, gcd), planar)


def _planar_const_route(types: frozenset[SymmetricSpec], gcd: int) -> str:
    if gcd == 1:
        return "gcd of gaps is 1: clause duplication is a no-op, no crossover needed"
    if gcd <= 4:
        eq = "3-equalizer" if gcd == 3 else "4-equalizer"
        if any(_has_substring(s, "0100") for s in types):
            case = "1-in-3 and 3-equalizer" if gcd == 3 else "1-in-3 and 4-equalizer"
            return f"crossover from {case} (via {eq} and a conditioned 1-in-3)"
        if any(_has_substring(s, "0010") for s in types):
            case = "2-in-3 reversed to 1-in-3"
            return f"crossover from {case} with the {eq}"
        return f"crossover via {eq} and an alternating-free bitstring"
    # gcd >= 5
    if any(_has_substring(s, "00100") for s in types):
        return "crossover from 2-in-4 and a synchronizer (2-in-4 by conditioning)"
    interesting = [
        s
        for s in types
        if not (s.in_set <= {0, s.arity} or s.in_set in ({1}, {s.arity - 1}))
    ]
    for s in interesting:
        bs = bitstring(s)
        if bs.startswith("01") and bs.endswith("10"):
            return "crossover from 1-in-3, 2-in-3 and a synchronizer ({1,j-1}-in-j)"
        if (bs.startswith("01") and bs.endswith("01")) or (
            bs.startswith("10") and bs.endswith("10")
        ):
            return "crossover from {1,j}-in-j and constants"
    return (
        "crossover from 1-in-3, 2-in-3 and a synchronizer "
        "(mixing 1-in-j with (j'-1)-in-j')"
    )


def classify_terminator(g: GammaSpec, planar: bool) -> Verdict:
    """Dichotomy when terminators (not constants) are or become available."""
    sym_ok = all(is_symmetric(d) is not None for d in g.duplicators)
    specs = set(g.symmetric_types)
    nontrivial_sync = False
    for d in g.duplicators:
        s = is_symmetric(d)
        if s is not None:
            specs.add(s)
        else:
            info = duplicator_info(d)
            if info.net_flow:
                specs.add(SymmetricSpec(2 * info.net_flow, frozenset([0, 2 * info.net_flow])))
                specs.add(SymmetricSpec(3 * info.net_flow, frozenset([0, 3 * info.net_flow])))
            else:
                nontrivial_sync = True
    if nontrivial_sync:
        return UNKNOWN(
            "synchronizer together with general symmetric types is outside "
            "the classified fragment",
            planar,
        )
    work = GammaSpec(frozenset(specs), frozenset(), False, g.terminators)
    all_types = _sym_with_terminator_types(work)

    if _all_bijunctive(GammaSpec(all_types)):
        return P(AlgorithmId.TWO_SAT, "all types bijunctive", planar)
    if _all_affine(GammaSpec(all_types)):
        return P(AlgorithmId.AFFINE, "all types affine", planar)
    deltas = delta_gamma(all_types)
    if not deltas or max(deltas) <= 2:
        return P(AlgorithmId.GAPFREE, "no gaps of size 2 or more", planar)
    if all(is_bottom_up_closed(s) for s in all_types):
        return P(AlgorithmId.MONOTONE_BOTTOM_UP, "all types bottom-up closed", planar)
    if all(is_top_down_closed(s) for s in all_types):
        return P(AlgorithmId.MONOTONE_TOP_DOWN, "all types top-down closed", planar)
    signs = {1 if f > 0 else -1 for f in _derivable_terminators(work)}
    if not signs:
        return UNKNOWN(
            "no terminator can be simulated and no easy case holds; this "
            "fragment of symmetric graph orientation is an open problem",
            planar,
        )
    # one sign plus a non-monotone type yields the other sign, so constants
    # are available up to grouping and the constant dichotomy decides
    return classify_const(work, planar)


def classify_iij_dup(
    types: Iterable[SymmetricSpec], dup: Relation, planar: bool
) -> Verdict:
    """Dichotomy for exact-in-degree types plus a nonzero-flow duplicator."""
    types = frozenset(types)
    info = duplicator_info(dup)
    if info is None or info.is_trivial or info.net_flow == 0:
        raise ValueError("need a non-trivial duplicator with nonzero net flow")
    for s in types:
        if len(s.in_set) != 1:
            raise ValueError(f"{s!r} is not an exact-in-degree type")
    f = info.net_flow
    if all(is_bijunctive(expand(Symmetric(s))) for s in types):
        return P(AlgorithmId.TWO_SAT, "all types bijunctive", planar)
    if planar and f >= 5:
        if all(next(iter(s.in_set)) in (0, 1, s.arity) for s in types):
            return P(
                AlgorithmId.PLANAR_K5,
                f"net flow {f} >= 5 with all in-degrees in {{0, 1, j}}",
                planar,
            )
        if all(next(iter(s.in_set)) in (0, s.arity - 1, s.arity) for s in types):
            return P(
                AlgorithmId.PLANAR_K5,
                f"net flow {f} >= 5, reversed: all in-degrees in {{0, j-1, j}}",
                planar,
            )
    half = [s for s in types if 2 * next(iter(s.in_set)) == s.arity and s.arity >= 4]
    if half:
        return NPC(
            "self-loops make a 2-in-4; crossover from 2-in-4 and a "
            "synchronizer simulated by the duplicator",
            planar,
        )
    eqs = frozenset(
        [
            SymmetricSpec(2 * f, frozenset([0, 2 * f])),
            SymmetricSpec(3 * f, frozenset([0, 3 * f])),
        ]
    )
    delegate = classify_const(GammaSpec(types | eqs, frozenset(), True), planar)
    if delegate.tag != "NP-complete":
        raise AssertionError("delegated dichotomy disagrees with the direct cases")
    return NPC(
        "self-loops give a terminator, equalizers replace the duplicator; "
        + delegate.route,
        planar,
    )


def classify_iij_sync(types: Iterable[SymmetricSpec], planar: bool) -> Verdict:
    """Dichotomy for exact-in-degree types plus a synchronizer."""
    types = frozenset(types)
    for s in types:
        if len(s.in_set) != 1:
            raise ValueError(f"{s!r} is not an exact-in-degree type")

    def i_of(s):
        return next(iter(s.in_set))

    if all(is_bijunctive(expand(Symmetric(s))) for s in types):
        return P(AlgorithmId.TWO_SAT, "all types bijunctive", planar)
    if all(2 * i_of(s) < s.arity or (i_of(s), s.arity) == (1, 2) for s in types):
        return P(
            AlgorithmId.COUNTING,
            "every type wants under half its edges inward: counting kills "
            "any strict vertex, the rest is 2-SAT",
            planar,
        )
    if all(2 * i_of(s) > s.arity or (i_of(s), s.arity) == (1, 2) for s in types):
        return P(
            AlgorithmId.COUNTING,
            "every type wants over half its edges inward: counting kills "
            "any strict vertex, the rest is 2-SAT",
            planar,
        )
    if all(i_of(s) in (0, 1, s.arity) for s in types):
        return P(
            AlgorithmId.COUNTING,
            "in-degrees within {0, 1, j}: terminators propagate away, then "
            "counting and 2-SAT",
            planar,
        )
    if all(i_of(s) in (0, s.arity - 1, s.arity) for s in types):
        return P(
            AlgorithmId.COUNTING,
            "in-degrees within {0, j-1, j}: terminators propagate away, then "
            "counting and 2-SAT",
            planar,
        )
    if any(2 * i_of(s) == s.arity and s.arity >= 4 for s in types):
        return NPC(
            "self-loops make a 2-in-4; crossover from 2-in-4 and the "
            "synchronizer",
            planar,
        )
    return NPC(
        "terminators from self-loops recover constants; conditioning yields "
        "1-in-3 and 2-in-3, crossover with the synchronizer",
        planar,
    )


def classify_iij_alt(types: Iterable[SymmetricSpec]) -> Verdict:
    """Exact-in-degree types with alternators: always polynomial planarly."""
    types = frozenset(types)
    for s in types:
        if len(s.in_set) != 1:
            raise ValueError(f"{s!r} is not an exact-in-degree type")
    return P(
        AlgorithmId.PLANAR_LP,
        "exact LP feasibility with face-potential rounding",
        True,
    )


def classify(g: GammaSpec, planar: bool) -> Verdict:
    """Dispatch a type set to the matching dichotomy."""
    unsat_free = frozenset(s for s in g.symmetric_types if s.in_set)
    g = GammaSpec(unsat_free, g.duplicators, g.has_constants, g.terminators)
    singletons = all(len(s.in_set) == 1 for s in g.symmetric_types)
    nonsym_dups = [d for d in g.duplicators if is_symmetric(d) is None]
    alternators = [
        d for d in nonsym_dups if duplicator_info(d).is_alternator
    ]
    zero_flow = [d for d in nonsym_dups if duplicator_info(d).net_flow == 0]
    nonzero = [
        d
        for d in g.duplicators
        if duplicator_info(d).net_flow and not duplicator_info(d).is_trivial
    ]
    if singletons and not g.has_constants and not g.terminators and nonsym_dups:
        if nonzero:
            # a nonzero-flow duplicator dominates the zero-flow helpers
            gcd = 0
            for d in nonzero:
                gcd = math.gcd(gcd, duplicator_info(d).net_flow)
            proxy = SymmetricSpec(gcd, frozenset([0, gcd])) if gcd >= 3 else None
            dup = (
                expand(Symmetric(proxy))
                if proxy
                else next(iter(nonzero))
            )
            return classify_iij_dup(g.symmetric_types, dup, planar)
        if len(zero_flow) == len(nonsym_dups) and not all(
            duplicator_info(d).is_alternator for d in nonsym_dups
        ):
            return classify_iij_sync(g.symmetric_types, planar)
        if alternators and planar:
            return classify_iij_alt(g.symmetric_types)
        if alternators:
            # without planarity alternators behave like synchronizers
            return classify_iij_sync(g.symmetric_types, planar)
    if g.has_constants:
        return classify_const(g, planar)
    return classify_terminator(g, planar)


# ---------------------------------------------------------------------------
# instance-level dispatch


def choose_algorithm(inst: Instance) -> Optional[AlgorithmId]:
    """First applicable solver for a concrete instance, or None."""
    rels = {v: inst.vertex_relation(v) for v in inst.vertices}
    if all(is_bijunctive(r) for r in rels.values()):
        return AlgorithmId.TWO_SAT
    if all(is_affine(r) for r in rels.values()):
        return AlgorithmId.AFFINE
    specs = {v: is_symmetric(r) for v, r in rels.items()}
    if all(s is not None for s in specs.values()):
        if all(max_gap(s) <= 1 for s in specs.values()):
            return AlgorithmId.GAPFREE
        if all(is_top_down_closed(s) for s in specs.values()):
            return AlgorithmId.MONOTONE_TOP_DOWN
        if all(is_bottom_up_closed(s) for s in specs.values()):
            return AlgorithmId.MONOTONE_BOTTOM_UP
    if inst.rotation is not None:
        eq_sizes = set()
        k5_ok = True
        for v, s in specs.items():
            if s is None:
                k5_ok = False
                break
            j = s.arity
            if not s.in_set or s.in_set in ({0}, {j}) or s.in_set == {1}:
                continue
            if s.in_set == {0, j} and j >= 3:
                eq_sizes.add(j)
                continue
            k5_ok = False
            break
        if k5_ok and len(eq_sizes) <= 1 and all(k >= 5 for k in eq_sizes):
            return AlgorithmId.PLANAR_K5
        lp_ok = all(
            isinstance(k, Alternator)
            or (specs[v] is not None and len(specs[v].in_set) == 1)
            for v, k in inst.vertices.items()
        )
        if lp_ok:
            return AlgorithmId.PLANAR_LP
    return None
