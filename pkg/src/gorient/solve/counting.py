"""Forced-edge propagation plus in-degree counting, finishing with 2-SAT.

Covers the polynomial cases where every vertex wants at most (or at least)
half of its edges inward: terminators propagate away, a strict vertex then
forces unsatisfiability by counting, and what remains is bijunctive.
"""

from __future__ import annotations

from typing import Optional

from ..instances import Instance, Orientation
from ..relations import General, Relation, is_bijunctive
from .twosat import solve_2sat


def _compatible(rel: Relation, mask: int, bits: int) -> list[int]:
    return [w for w in rel.allowed if w & mask == bits]


def propagate_forced(inst: Instance) -> Optional[dict[int, int]]:
    """Fix every edge whose direction is forced by unit propagation.

    Returns the fixed edges, or None if a vertex loses all its words.
    """
    relations = {v: inst.vertex_relation(v) for v in inst.vertices}
    assigned = {v: [0, 0] for v in inst.vertices}
    fixed: dict[int, int] = {}
    queue = list(inst.vertices)
    while queue:
        v = queue.pop()
        rel = relations[v]
        mask, bits = assigned[v]
        words = _compatible(rel, mask, bits)
        if not words:
            return None
        for p in range(rel.arity):
            if (mask >> p) & 1:
                continue
            vals = {(w >> p) & 1 for w in words}
            if len(vals) > 1:
                continue
            bit = vals.pop()
            e, side = inst.endpoint_at(v, p)
            d = bit if side == 1 else 1 - bit
            if fixed.setdefault(e, d) != d:
                return None
            # commit the bit at both endpoints
            for vid, port, s in (
                (inst.edges[e][0][0], inst.edges[e][0][1], 0),
                (inst.edges[e][1][0], inst.edges[e][1][1], 1),
            ):
                b = d if s == 1 else 1 - d
                m2, b2 = assigned[vid]
                if not (m2 >> port) & 1:
                    assigned[vid][0] |= 1 << port
                    assigned[vid][1] |= b << port
                    if vid != v:
                        queue.append(vid)
            mask, bits = assigned[v]
    return fixed


def solve_counting(inst: Instance) -> Optional[Orientation]:
    """Propagate forced edges, apply the in-degree counting bound, 2-SAT rest."""
    fixed = propagate_forced(inst)
    if fixed is None:
        return None
    free_edges = [e for e in range(len(inst.edges)) if e not in fixed]
    total_min = 0
    total_max = 0
    reduced: dict = {}
    for v in inst.vertices:
        rel = inst.vertex_relation(v)
        mask = bits = 0
        for p in range(rel.arity):
            e, side = inst.endpoint_at(v, p)
            if e in fixed:
                mask |= 1 << p
                bit = fixed[e] if side == 1 else 1 - fixed[e]
                bits |= bit << p
        words = _compatible(rel, mask, bits)
        if not words:
            return None
        free_mask = ((1 << rel.arity) - 1) ^ mask
        counts = [bin(w & free_mask).count("1") for w in words]
        total_min += min(counts)
        total_max += max(counts)
        reduced[v] = Relation(rel.arity, frozenset(words))
    if total_max < len(free_edges) or total_min > len(free_edges):
        return None
    if not all(is_bijunctive(rel) for rel in reduced.values()):
        raise ValueError("residual instance is not bijunctive; out of scope")
    shadow = Instance(
        {v: General(reduced[v]) for v in inst.vertices}, inst.edges, None
    )
    return solve_2sat(shadow, fixed)
