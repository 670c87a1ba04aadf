"""Greedy solver for all-top-down-closed (or all-bottom-up-closed) types.

Half-edge labels temporarily allow an edge to count inward at both ends
(bidirected) or neither (undirected); repairs reverse paths and walks
without disturbing other vertices' in-degrees.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from ..instances import Instance, Orientation
from ..relations import (
    Constant,
    Equalizer,
    General,
    Symmetric,
    SymmetricSpec,
    is_bottom_up_closed,
    is_symmetric,
    is_top_down_closed,
    reverse_spec,
)


def _spec_of(kind) -> Optional[SymmetricSpec]:
    match kind:
        case Symmetric(spec):
            return spec
        case Constant(direction):
            return SymmetricSpec(1, frozenset([1 if direction == "in" else 0]))
        case Equalizer(k):
            return SymmetricSpec(k, frozenset([0, k]))
        case General(rel):
            return is_symmetric(rel)
    return None


def _require_spec(inst: Instance, v, mode: str) -> SymmetricSpec:
    spec = _spec_of(inst.vertices[v])
    if spec is None:
        raise ValueError(f"vertex {v!r} is not symmetric")
    ok = is_top_down_closed(spec) if mode == "top_down" else is_bottom_up_closed(spec)
    if not ok:
        raise ValueError(f"vertex {v!r} is not {mode.replace('_', '-')} closed")
    return spec


def solve_monotone(inst: Instance, mode: str = "top_down") -> Optional[Orientation]:
    if mode == "bottom_up":
        flipped = Instance(
            {
                v: Symmetric(reverse_spec(_require_spec(inst, v, "bottom_up")))
                for v in inst.vertices
            },
            inst.edges,
            inst.rotation,
        )
        sol = solve_monotone(flipped, "top_down")
        return None if sol is None else tuple(1 - d for d in sol)
    if mode != "top_down":
        raise ValueError("mode must be 'top_down' or 'bottom_up'")

    specs = {v: _require_spec(inst, v, "top_down") for v in inst.vertices}
    if any(not s.in_set for s in specs.values()):
        return None

    n_edges = len(inst.edges)
    # half[e] = [bit at endpoint A, bit at endpoint B]; 1 = counts inward there
    half = [[0, 0] for _ in range(n_edges)]

    def is_loop(e: int) -> bool:
        (a, _), (b, _) = inst.edges[e]
        return a == b

    def state(e: int) -> str:
        a, b = half[e]
        return "bi" if a and b else ("un" if not a and not b else "dir")

    def head(e: int):
        (u, _), (v, _) = inst.edges[e]
        return v if half[e][1] else u

    def tail(e: int):
        (u, _), (v, _) = inst.edges[e]
        return u if half[e][1] else v

    # initial assignment: exactly max S ports inward at every vertex,
    # splitting self-loops one-in-one-out whenever the budget allows
    for v, spec in specs.items():
        budget = max(spec.in_set)
        loops: list[int] = []
        singles: list[int] = []
        for p in range(spec.arity):
            e, side = inst.endpoint_at(v, p)
            if is_loop(e):
                if side == 0:
                    loops.append(e)
            else:
                singles.append((e, side))
        split = min(len(loops), budget)
        rest = budget - split
        single_ins = min(rest, len(singles))
        double = rest - single_ins
        for i, e in enumerate(loops):
            if i < split - double:
                half[e] = [1, 0]
            elif i < split:
                half[e] = [1, 1]
            else:
                half[e] = [0, 0]
        for i, (e, side) in enumerate(singles):
            half[e][side] = 1 if i < single_ins else 0

    # --- repair undirected edges -------------------------------------------
    round_guard = 0
    while True:
        round_guard += 1
        if round_guard > 2 * n_edges + 2:
            raise AssertionError("undirected repair failed to make progress")
        undirected = [e for e in range(n_edges) if state(e) == "un"]
        if not undirected:
            break
        # Flipping one half of an undirected edge adds an in at the pending
        # vertex; BFS pushes that +1 backwards along directed edges until a
        # bidirected edge absorbs it.  No BFS path means the in-flow is
        # already maximal somewhere and the instance is unsatisfiable.
        parent: dict = {}
        queue: deque = deque()
        for e in undirected:
            (u, _), (v, _) = inst.edges[e]
            for pend, side in ((v, 1), (u, 0)):
                if pend not in parent:
                    parent[pend] = ("start", e, side)
                    queue.append(pend)
        goal = None
        while queue and goal is None:
            x = queue.popleft()
            for p in range(specs[x].arity):
                e, _ = inst.endpoint_at(x, p)
                st = state(e)
                if st == "bi":
                    goal = (x, e)
                    break
                if st == "dir" and not is_loop(e) and head(e) == x:
                    y = tail(e)
                    if y not in parent:
                        parent[y] = ("step", e, x)
                        queue.append(y)
        if goal is None:
            return None
        x, e_bi = goal
        # absorb the +1: flip the bidirected edge's half at x outward
        if is_loop(e_bi):
            half[e_bi][1] = 0
        else:
            (u, _), (v, _) = inst.edges[e_bi]
            half[e_bi][0 if u == x else 1] = 0
        # walk parents back to the starting undirected edge, reversing steps
        while True:
            tag, e, info = parent[x]
            if tag == "start":
                half[e][info] = 1
                break
            half[e][0] ^= 1
            half[e][1] ^= 1
            x = info

    return _finish_bidirected(inst, specs, half)


def _finish_bidirected(inst, specs, half) -> Optional[Orientation]:
    n_edges = len(inst.edges)

    def is_loop(e):
        (a, _), (b, _) = inst.edges[e]
        return a == b

    def state(e):
        a, b = half[e]
        return "bi" if a and b else ("un" if not a and not b else "dir")

    def tail(e):
        (u, _), (v, _) = inst.edges[e]
        return u if half[e][1] else v

    guard = 0
    while True:
        guard += 1
        if guard > 2 * n_edges + 2:
            raise AssertionError("bidirected repair failed to make progress")
        bi = [e for e in range(n_edges) if state(e) == "bi"]
        if not bi:
            break
        e0 = bi[0]
        (u, _), (v, _) = inst.edges[e0]
        used = {e0}
        walk = [(e0, v if not is_loop(e0) else u)]
        cur = walk[0][1]
        while True:
            nxt = None
            for p in range(specs[cur].arity):
                e, _ = inst.endpoint_at(cur, p)
                if e in used:
                    continue
                st = state(e)
                if is_loop(e):
                    if st in ("dir", "bi"):
                        nxt = (e, cur)
                        break
                    continue
                (a, _), (b, _) = inst.edges[e]
                other = b if a == cur else a
                if st == "bi" or (st == "dir" and tail(e) == cur):
                    nxt = (e, other)
                    break
            if nxt is None:
                break
            used.add(nxt[0])
            walk.append(nxt)
            cur = nxt[1]
        t = max(i for i, (e, _) in enumerate(walk) if state(e) == "bi")
        e_t, moved_to = walk[t]
        if is_loop(e_t):
            half[e_t][1] = 0
        else:
            (a, _), (b, _) = inst.edges[e_t]
            half[e_t][1 if moved_to == b else 0] = 0
        for e, _ in walk[t + 1 :]:
            if is_loop(e):
                continue
            half[e][0] ^= 1
            half[e][1] ^= 1

    return tuple(half[e][1] for e in range(n_edges))
