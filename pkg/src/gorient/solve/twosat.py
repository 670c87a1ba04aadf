"""2-SAT solver for instances whose vertex types are all bijunctive."""

from __future__ import annotations

from typing import Optional

from ..instances import Instance, Orientation
from ..relations import Relation, is_bijunctive


class _TwoSat:
    """Implication-graph 2-SAT; variable i has literals 2i (true), 2i+1 (false)."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(2 * n)]

    @staticmethod
    def _neg(lit: int) -> int:
        return lit ^ 1

    def add_clause(self, a: int, b: int) -> None:
        self.adj[self._neg(a)].append(b)
        self.adj[self._neg(b)].append(a)

    def add_unit(self, a: int) -> None:
        self.add_clause(a, a)

    def solve(self) -> Optional[list[bool]]:
        n2 = 2 * self.n
        index = [0] * n2
        low = [0] * n2
        on_stack = [False] * n2
        comp = [-1] * n2
        stack: list[int] = []
        counter = [1]
        ncomp = [0]

        def strongconnect(root: int) -> None:
            work = [(root, 0)]
            while work:
                v, pi = work[-1]
                if pi == 0:
                    index[v] = low[v] = counter[0]
                    counter[0] += 1
                    stack.append(v)
                    on_stack[v] = True
                recurse = False
                for i in range(pi, len(self.adj[v])):
                    w = self.adj[v][i]
                    if index[w] == 0:
                        work[-1] = (v, i + 1)
                        work.append((w, 0))
                        recurse = True
                        break
                    if on_stack[w]:
                        low[v] = min(low[v], index[w])
                if recurse:
                    continue
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp[0]
                        if w == v:
                            break
                    ncomp[0] += 1
                work.pop()
                if work:
                    u, _ = work[-1]
                    low[u] = min(low[u], low[v])

        for v in range(n2):
            if index[v] == 0:
                strongconnect(v)
        out = []
        for i in range(self.n):
            if comp[2 * i] == comp[2 * i + 1]:
                return None
            # components pop in reverse topological order; pick the later one
            out.append(comp[2 * i] < comp[2 * i + 1])
        return out


def two_clauses_of(rel: Relation) -> list[tuple[int, int]]:
    """Clauses over <=2 port literals ((pos mask, neg mask)) that every
    allowed word satisfies, whose conjunction equals the relation.

    Raises if the relation is not an intersection of 2-clauses (i.e. not
    bijunctive)."""
    clauses = []
    lits = [(1 << p, 0) for p in range(rel.arity)] + [
        (0, 1 << p) for p in range(rel.arity)
    ]
    for i, (p1, n1) in enumerate(lits):
        for p2, n2 in lits[i:]:
            pos, neg = p1 | p2, n1 | n2
            if pos & neg:
                continue
            if all((w & pos) or (~w & neg) for w in rel.allowed):
                clauses.append((pos, neg))
    count = sum(
        1
        for w in range(1 << rel.arity)
        if all((w & pos) or (~w & neg) for pos, neg in clauses)
    )
    if count != len(rel.allowed):
        raise ValueError("relation is not expressible by 2-clauses")
    return clauses


def solve_2sat(inst: Instance, fixed: Optional[dict[int, int]] = None) -> Optional[Orientation]:
    """Solve via implication-graph SCCs; variable e is true when edge e runs A->B."""
    relations = {v: inst.vertex_relation(v) for v in inst.vertices}
    for v, rel in relations.items():
        if not is_bijunctive(rel):
            raise ValueError(f"vertex {v!r} has a non-bijunctive type")
        if rel.is_empty:
            return None
    sat = _TwoSat(len(inst.edges))

    def literal(vid, port) -> int:
        e, side = inst.endpoint_at(vid, port)
        # bit is 1 (edge into vid) when: side 1 and var true, or side 0 and var false
        return 2 * e if side == 1 else 2 * e + 1

    for v, rel in relations.items():
        if rel.arity == 0:
            continue
        for pos, neg in two_clauses_of(rel):
            lits = [literal(v, p) for p in range(rel.arity) if (pos >> p) & 1]
            lits += [literal(v, p) ^ 1 for p in range(rel.arity) if (neg >> p) & 1]
            if len(lits) == 1:
                sat.add_unit(lits[0])
            else:
                sat.add_clause(lits[0], lits[1])
    if fixed:
        for e, d in fixed.items():
            sat.add_unit(2 * e if d else 2 * e + 1)
    model = sat.solve()
    if model is None:
        return None
    return tuple(1 if model[e] else 0 for e in range(len(inst.edges)))
