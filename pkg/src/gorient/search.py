"""Backtracking enumeration of satisfying orientations (the exact oracle)."""

from __future__ import annotations

import os
from typing import Iterator, Optional, Sequence

from .instances import Instance, Orientation

DEFAULT_EDGE_CAP = 24


class EnumerationCapError(RuntimeError):
    pass


def edge_cap(cap: Optional[int] = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("GO_ENUM_CAP")
    return int(env) if env else DEFAULT_EDGE_CAP


class _Searcher:
    """Assign edge directions with per-vertex candidate-word pruning."""

    def __init__(self, inst: Instance, order: Optional[Sequence[int]] = None):
        self.inst = inst
        self.order = list(order) if order is not None else self._default_order()
        self.relations = {v: inst.vertex_relation(v) for v in inst.vertices}
        # per-vertex partial assignment: (mask of assigned ports, their bits)
        self.assigned: dict = {v: [0, 0] for v in inst.vertices}

    def _default_order(self) -> list[int]:
        # BFS over shared vertices so consecutive edges interact
        inst = self.inst
        adj: dict = {}
        for idx, ((u, _), (v, _)) in enumerate(inst.edges):
            adj.setdefault(u, []).append(idx)
            adj.setdefault(v, []).append(idx)
        seen: set[int] = set()
        order: list[int] = []
        for start in range(len(inst.edges)):
            if start in seen:
                continue
            queue = [start]
            seen.add(start)
            while queue:
                e = queue.pop()
                order.append(e)
                (u, _), (v, _) = inst.edges[e]
                for w in (u, v):
                    for e2 in adj[w]:
                        if e2 not in seen:
                            seen.add(e2)
                            queue.append(e2)
        return order

    def _viable(self, vid) -> bool:
        mask, bits = self.assigned[vid]
        return any(w & mask == bits for w in self.relations[vid].allowed)

    def _set(self, vid, port: int, bit: int) -> None:
        self.assigned[vid][0] |= 1 << port
        if bit:
            self.assigned[vid][1] |= 1 << port

    def _unset(self, vid, port: int) -> None:
        self.assigned[vid][0] &= ~(1 << port)
        self.assigned[vid][1] &= ~(1 << port)

    def solutions(
        self, fixed: Optional[dict[int, int]] = None
    ) -> Iterator[Orientation]:
        inst = self.inst
        if any(r.is_empty for r in self.relations.values()):
            return
        choice: list[Optional[int]] = [None] * len(inst.edges)
        fixed = fixed or {}

        def place(e: int, d: int) -> bool:
            (u, p), (v, q) = inst.edges[e]
            self._set(u, p, 1 - d)
            self._set(v, q, d)
            if self._viable(u) and self._viable(v):
                return True
            self._unset(u, p)
            self._unset(v, q)
            return False

        def remove(e: int) -> None:
            (u, p), (v, q) = inst.edges[e]
            self._unset(u, p)
            self._unset(v, q)

        def rec(i: int) -> Iterator[Orientation]:
            if i == len(self.order):
                yield tuple(choice)  # type: ignore[arg-type]
                return
            e = self.order[i]
            dirs = (fixed[e],) if e in fixed else (1, 0)
            for d in dirs:
                if place(e, d):
                    choice[e] = d
                    yield from rec(i + 1)
                    choice[e] = None
                    remove(e)

        yield from rec(0)


def iter_orientations(
    inst: Instance,
    fixed: Optional[dict[int, int]] = None,
    cap: Optional[int] = None,
) -> Iterator[Orientation]:
    if len(inst.edges) > edge_cap(cap):
        raise EnumerationCapError(
            f"instance has {len(inst.edges)} edges, enumeration cap is {edge_cap(cap)}"
        )
    yield from _Searcher(inst).solutions(fixed)


def find_orientation(
    inst: Instance,
    fixed: Optional[dict[int, int]] = None,
    cap: Optional[int] = None,
) -> Optional[Orientation]:
    for o in iter_orientations(inst, fixed, cap):
        return o
    return None


def count_orientations(inst: Instance, cap: Optional[int] = None) -> int:
    return sum(1 for _ in iter_orientations(inst, cap=cap))
