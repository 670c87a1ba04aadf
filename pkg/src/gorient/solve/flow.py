"""Integral feasibility of node-arc systems with bounds (exact max-flow)."""

from __future__ import annotations

import sys
from collections import deque
from typing import Optional


class Dinic:
    def __init__(self, n: int):
        self.n = n
        self.graph: list[list[list[int]]] = [[] for _ in range(n)]
        if sys.getrecursionlimit() < 4 * n + 1000:
            sys.setrecursionlimit(4 * n + 1000)

    def add_edge(self, u: int, v: int, cap: int) -> int:
        self.graph[u].append([v, cap, len(self.graph[v])])
        self.graph[v].append([u, 0, len(self.graph[u]) - 1])
        return len(self.graph[u]) - 1

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for v, cap, _ in self.graph[u]:
                    if cap > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        q.append(v)
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u: int, pushed: int) -> int:
                if u == t:
                    return pushed
                while it[u] < len(self.graph[u]):
                    edge = self.graph[u][it[u]]
                    v, cap, rev = edge
                    if cap > 0 and level[v] == level[u] + 1:
                        d = dfs(v, min(pushed, cap))
                        if d > 0:
                            edge[1] -= d
                            self.graph[v][rev][1] += d
                            return d
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 60)
                if not pushed:
                    break
                flow += pushed


def node_arc_feasible(
    arcs: list[tuple[Optional[int], Optional[int], int, int]],
    demand: dict[int, int],
    n_rows: int,
) -> Optional[list[int]]:
    """Integral x with lo <= x_a <= hi and, per row, out-minus-in sums equal
    the demand.

    Each arc is (tail row, head row, lo, hi): x contributes +x at its tail
    row and -x at its head row; a missing side attaches to a free node whose
    imbalance is fixed by global conservation.  Standard lower-bound
    circulation via one max-flow.
    """
    free = n_rows
    src, snk = n_rows + 1, n_rows + 2
    dinic = Dinic(n_rows + 3)
    excess = {r: -b for r, b in demand.items()}  # inflow surplus required
    # conservation fixes the free node's demand to balance the real rows
    excess[free] = sum(demand.values())

    def node(r: Optional[int]) -> int:
        return free if r is None else r

    def bump(r: int, d: int) -> None:
        excess[r] = excess.get(r, 0) + d

    arc_edges = []
    for tail, head, lo, hi in arcs:
        if lo > hi:
            return None
        t_, h_ = node(tail), node(head)
        # shifting x = lo + f moves lo units from tail to head
        bump(t_, lo)
        bump(h_, -lo)
        arc_edges.append((t_, h_, lo, dinic.add_edge(t_, h_, hi - lo)))
    total = 0
    for r, b in excess.items():
        # b > 0: node must absorb b units (send them to the sink)
        if b > 0:
            dinic.add_edge(r, snk, b)
        elif b < 0:
            dinic.add_edge(src, r, -b)
            total += -b
    if dinic.max_flow(src, snk) != total:
        return None
    out = []
    for t_, h_, lo, idx in arc_edges:
        rev = dinic.graph[t_][idx][2]
        used = dinic.graph[h_][rev][1]
        out.append(lo + used)
    return out
