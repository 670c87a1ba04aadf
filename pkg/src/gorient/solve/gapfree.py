"""Degree-prescription solver for symmetric types with gaps of size <= 1.

Orientations are encoded as perfect matchings.  Every port contributes one
rail node; every edge one chooser node adjacent to its two rails.  A chooser
covers exactly one rail (that endpoint reads the edge as outgoing), so the
other rail must be covered by one of the vertex's in-absorbers (that
endpoint reads it as incoming) - each edge is therefore oriented exactly
once and no spurious matchings exist.  A vertex with admissible in-degrees
{lo, lo+2, ..., hi} gets lo mandatory absorbers plus hi-lo optional
absorbers that can pair off among themselves, which pins the in-degree to
that parity interval exactly.

Exact values and parity intervals are thus one matching call.  Sets with a
full-interval run or parity-mixing holes (such as {1,2,4}) provably have no
single perfect-matching pool gadget, so the solver branches over the
parity-interval pieces of every such set, one matching call per branch.
"""

from __future__ import annotations

import itertools
from typing import Optional

from ..instances import Instance, Orientation, validate
from ..relations import SymmetricSpec, max_gap
from .matching import max_matching
from .monotone import _spec_of

Piece = tuple[int, int]  # (lo, hi) with hi - lo even: {lo, lo+2, ..., hi}


def split_parity_pieces(spec: SymmetricSpec) -> list[Piece]:
    """Minimal cover of S by parity intervals (steps of two)."""
    pieces: list[Piece] = []
    for parity in (0, 1):
        elems = sorted(i for i in spec.in_set if i % 2 == parity)
        i = 0
        while i < len(elems):
            lo = hi = elems[i]
            i += 1
            while i < len(elems) and elems[i] == hi + 2:
                hi = elems[i]
                i += 1
            pieces.append((lo, hi))
    return pieces


class _Graph:
    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def node(self) -> int:
        self.n += 1
        return self.n - 1

    def join(self, a: int, b: int) -> None:
        self.edges.append((a, b))


def _encode(inst: Instance, choice: dict):
    """Matching graph for one parity-piece assignment."""
    g = _Graph()
    rail: dict = {}
    for v in inst.vertices:
        for p in range(inst.arity(v)):
            rail[(v, p)] = g.node()
    chooser: dict[int, int] = {}
    for e, ((u, pu), (v, pv)) in enumerate(inst.edges):
        t = g.node()
        chooser[e] = t
        g.join(t, rail[(u, pu)])
        g.join(t, rail[(v, pv)])
    for v in inst.vertices:
        lo, hi = choice[v]
        rails = [rail[(v, p)] for p in range(inst.arity(v))]
        mandatory = [g.node() for _ in range(lo)]
        optional = [g.node() for _ in range(hi - lo)]
        for a in mandatory + optional:
            for r in rails:
                g.join(r, a)
        g.edges.extend(itertools.combinations(optional, 2))
    return g, rail, chooser


BRANCH_CAP = 4096


def solve_gapfree(inst: Instance) -> Optional[Orientation]:
    specs: dict = {}
    for v, kind in inst.vertices.items():
        spec = _spec_of(kind)
        if spec is None:
            raise ValueError(f"vertex {v!r} is not symmetric")
        if max_gap(spec) > 1:
            raise ValueError(f"vertex {v!r} has a gap of size 2 or more")
        specs[v] = spec
    if any(not s.in_set for s in specs.values()):
        return None
    pieces = {v: split_parity_pieces(s) for v, s in specs.items()}
    order = list(inst.vertices)
    n_branches = 1
    for v in order:
        n_branches *= len(pieces[v])
    if n_branches > BRANCH_CAP:
        raise ValueError(
            f"{n_branches} parity branches exceed the cap; instance too mixed"
        )
    for combo in itertools.product(*(pieces[v] for v in order)):
        choice = dict(zip(order, combo))
        g, rail, chooser = _encode(inst, choice)
        if g.n % 2:
            continue
        match = max_matching(g.n, g.edges)
        if any(m == -1 for m in match):
            continue
        orient = []
        for e, ((u, pu), (v, pv)) in enumerate(inst.edges):
            picked = match[chooser[e]]
            # the chooser covers the rail of the endpoint the edge leaves
            if picked == rail[(u, pu)]:
                orient.append(1)
            elif picked == rail[(v, pv)]:
                orient.append(0)
            else:
                raise AssertionError("edge chooser not matched to a rail")
        orient = tuple(orient)
        bad = validate(inst, orient)
        if bad:
            raise AssertionError(f"matching produced an invalid orientation at {bad}")
        return orient
    return None
