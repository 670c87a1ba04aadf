"""Planar solver for unsatisfiable / terminator / k-equalizer / 1-in-j mixes.

Repeatedly finds an edge whose orientation agrees across all solutions,
fixes it, and deletes it; reduction rules contract 1-in-2 vertices, merge
adjacent 1-in-j vertices, splice away adjacent equalizer pairs (preserving
the embedding), and for k = 5 search for the forced local structure of
five degree-4 faces around an equalizer.  The residual graph is affine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..instances import Instance, Orientation, euler_check, validate
from ..relations import Constant, Equalizer, General, Symmetric, is_symmetric, sym
from .affine import solve_affine

Dart = tuple[int, int]  # (edge id, side)


@dataclass
class _WG:
    """Mutable working graph with rotations and edge provenance."""

    kind: dict = field(default_factory=dict)  # vid -> unsat|in|out|eq|one
    rot: dict = field(default_factory=dict)  # vid -> list of darts
    ends: dict = field(default_factory=dict)  # eid -> (u, v)
    trace: dict = field(default_factory=dict)  # eid -> (parent eid, flip)
    next_eid: int = 0
    next_vid: int = 0

    def copy(self) -> "_WG":
        return _WG(
            dict(self.kind),
            {v: list(r) for v, r in self.rot.items()},
            dict(self.ends),
            dict(self.trace),
            self.next_eid,
            self.next_vid,
        )

    def arity(self, v) -> int:
        return len(self.rot[v])

    def other_end(self, dart: Dart):
        e, s = dart
        return self.ends[e][1 - s]

    def new_edge(self, u, v, parent: tuple[int, int]) -> int:
        e = self.next_eid
        self.next_eid += 1
        self.ends[e] = (u, v)
        self.trace[e] = parent
        return e

    def is_loop(self, e: int) -> bool:
        u, v = self.ends[e]
        return u == v

    def delete_edge(self, e: int) -> None:
        u, v = self.ends.pop(e)
        self.trace.pop(e, None)
        for w in {u, v}:
            self.rot[w] = [d for d in self.rot[w] if d[0] != e]

    def replace_dart(self, vid, old: Dart, new: Dart) -> None:
        r = self.rot[vid]
        r[r.index(old)] = new

    def drop_vertex(self, vid) -> None:
        del self.kind[vid]
        del self.rot[vid]


def _reclassify(wg: _WG, v) -> None:
    """Normalize degenerate kinds after arity changes."""
    k = wg.kind[v]
    j = wg.arity(v)
    if k == "one" and j == 1:
        wg.kind[v] = "in"
    elif k == "one" and j == 0:
        wg.kind[v] = "unsat"
    elif k == "eq" and j == 0:
        wg.drop_vertex(v)
    elif k in ("in", "out") and j == 0:
        wg.drop_vertex(v)


def _fix_into(wg: _WG, e: int, receiver) -> Optional[tuple[int, int]]:
    """Translate 'edge e points into receiver' to (parent eid, parent dir)."""
    u, v = wg.ends[e]
    d = 1 if receiver == v else 0
    pe, flip = wg.trace[e]
    return pe, d ^ flip


def _faces(wg: _WG):
    """Face walks as dart sequences; dart (e, s) is read as leaving ends[e][s]."""
    pos: dict[Dart, tuple] = {}
    for v, r in wg.rot.items():
        for i, dart in enumerate(r):
            pos[dart] = (v, i)

    def next_dart(d: Dart) -> Dart:
        e, s = d
        arrive = (e, 1 - s)  # dart slot at the target vertex
        v, i = pos[arrive]
        r = wg.rot[v]
        return r[(i + 1) % len(r)]

    walks = []
    seen = set()
    for e in wg.ends:
        for s in (0, 1):
            start = (e, s)
            if start in seen:
                continue
            walk = []
            cur = start
            while True:
                walk.append(cur)
                seen.add(cur)
                cur = next_dart(cur)
                if cur == start:
                    break
            walks.append(tuple(walk))
    return walks


def _find_forced(wg: _WG, k: int, depth: int = 0):
    """('unsat',) | ('forced', parent-eid, dir) | None when no 1-in-j>=3 left."""
    if depth > 4 * (len(wg.ends) + len(wg.kind)) + 8:
        raise AssertionError("reduction recursion failed to terminate")
    if any(kind == "unsat" for kind in wg.kind.values()):
        return ("unsat",)
    # terminators with self-loops can never be satisfied
    for v, kind in wg.kind.items():
        if kind in ("in", "out"):
            if any(wg.is_loop(e) for e, _ in wg.rot[v]):
                return ("unsat",)
    # rule: a terminator fixes all its edges
    for v, kind in wg.kind.items():
        if kind in ("in", "out") and wg.rot[v]:
            e, s = wg.rot[v][0]
            recv = v if kind == "in" else wg.other_end((e, s))
            return ("forced",) + _fix_into(wg, e, recv)
    # rule: contract 1-in-2 vertices
    for v, kind in wg.kind.items():
        if kind == "one" and wg.arity(v) == 2:
            return _contract_one_in_two(wg, v, k, depth)
    # rule: self-loop on an equalizer
    for v, kind in wg.kind.items():
        if kind == "eq" and any(wg.is_loop(e) for e, _ in wg.rot[v]):
            return ("unsat",)
    # rule: self-loop on a 1-in-j (j >= 3) forces the other edges outward;
    # two or more loops already overshoot the single inward edge
    for v, kind in wg.kind.items():
        if kind == "one":
            n_loops = len({e for e, _ in wg.rot[v] if wg.is_loop(e)})
            if n_loops >= 2:
                return ("unsat",)
            if n_loops == 1:
                for e, s in wg.rot[v]:
                    if not wg.is_loop(e):
                        return ("forced",) + _fix_into(wg, e, wg.other_end((e, s)))
    # rule: merge adjacent 1-in-j vertices
    for e, (u, v) in list(wg.ends.items()):
        if u != v and wg.kind.get(u) == "one" and wg.kind.get(v) == "one":
            return _merge_ones(wg, e, k, depth)
    # rule: parallel edges between an equalizer and a 1-in-j point at the eq
    for v, kind in wg.kind.items():
        if kind != "eq":
            continue
        seen_neighbor: dict = {}
        for e, s in wg.rot[v]:
            w = wg.other_end((e, s))
            if wg.kind.get(w) == "one":
                if w in seen_neighbor:
                    return ("forced",) + _fix_into(wg, e, v)
                seen_neighbor[w] = e
    # rule: splice away an adjacent equalizer pair
    for e, (u, v) in list(wg.ends.items()):
        if u != v and wg.kind.get(u) == "eq" and wg.kind.get(v) == "eq":
            return _splice_equalizers(wg, e, k, depth)
    if not any(kind == "one" and wg.arity(v) >= 3 for v, kind in wg.kind.items()):
        return None
    if k == 5:
        found = _degree4_face_structure(wg)
        if found is not None:
            blue = found
            e, s = wg.rot[blue][0]
            return ("forced",) + _fix_into(wg, e, blue)
    raise AssertionError(
        "no reduction rule applies; contradicts the planar structure lemma"
    )


def _contract_one_in_two(wg: _WG, v, k: int, depth: int):
    d1, d2 = wg.rot[v]
    if d1[0] == d2[0]:
        # a 1-in-2 consisting of a single self-loop is always satisfied
        sub = wg.copy()
        sub.delete_edge(d1[0])
        sub.drop_vertex(v)
        return _find_forced(sub, k, depth + 1)
    sub = wg.copy()
    (e1, s1), (e2, s2) = d1, d2
    x = sub.other_end((e1, s1))
    y = sub.other_end((e2, s2))
    # new edge oriented x->y exactly when e1 ran x->v
    pe, flip = sub.trace[e1]
    x_side = 1 - s1
    new_flip = flip ^ (0 if x_side == 0 else 1)
    dart_x = (e1, x_side)
    dart_y = (e2, 1 - s2)
    ne = sub.new_edge(x, y, (pe, new_flip))
    sub.replace_dart(x, dart_x, (ne, 0))
    sub.replace_dart(y, dart_y, (ne, 1))
    del sub.ends[e1], sub.trace[e1]
    del sub.ends[e2], sub.trace[e2]
    sub.drop_vertex(v)
    res = _find_forced(sub, k, depth + 1)
    return res


def _merge_ones(wg: _WG, e: int, k: int, depth: int):
    u, v = wg.ends[e]
    sub = wg.copy()
    su = sub.rot[u].index((e, 0)) if (e, 0) in sub.rot[u] else sub.rot[u].index((e, 1))
    du = sub.rot[u][su]
    dv = (e, 1 - du[1])
    sv = sub.rot[v].index(dv)
    merged = ("m", sub.next_vid)
    sub.next_vid += 1
    ru = sub.rot[u]
    rv = sub.rot[v]
    new_rot = [ru[(su + 1 + i) % len(ru)] for i in range(len(ru) - 1)] + [
        rv[(sv + 1 + i) % len(rv)] for i in range(len(rv) - 1)
    ]
    sub.kind[merged] = "one"
    sub.rot[merged] = new_rot
    del sub.ends[e], sub.trace[e]
    sub.drop_vertex(u)
    sub.drop_vertex(v)
    for dart in new_rot:
        e2, s2 = dart
        a, b = sub.ends[e2]
        ends = list(sub.ends[e2])
        ends[s2] = merged
        sub.ends[e2] = tuple(ends)
    _reclassify(sub, merged)
    return _find_forced(sub, k, depth + 1)


def _splice_equalizers(wg: _WG, e_star: int, k: int, depth: int):
    u, v = wg.ends[e_star]
    sub = wg.copy()
    du = next(d for d in sub.rot[u] if d[0] == e_star)
    dv = (e_star, 1 - du[1])
    iu = sub.rot[u].index(du)
    iv = sub.rot[v].index(dv)
    ru, rv = sub.rot[u], sub.rot[v]
    # neighbors of u after the shared edge, in rotation order, skipping
    # parallel u-v edges; neighbors of v in reverse rotation order likewise
    u_list = []
    for i in range(1, len(ru)):
        d = ru[(iu + i) % len(ru)]
        if sub.other_end(d) != v:
            u_list.append(d)
    v_list = []
    for i in range(1, len(rv)):
        d = rv[(iv - i) % len(rv)]
        if sub.other_end(d) != u:
            v_list.append(d)
    if len(u_list) != len(v_list):
        raise AssertionError("equalizer splice lists out of step")
    pe, flip = sub.trace[e_star]
    into_u_flip = flip ^ (0 if sub.ends[e_star][1] == u else 1)
    pairs = []
    for dxu, dxv in zip(u_list, v_list):
        x = sub.other_end(dxu)
        y = sub.other_end(dxv)
        # new edge x->y corresponds to the shared edge pointing into u
        ne = sub.new_edge(x, y, (pe, into_u_flip))
        sub.replace_dart(x, (dxu[0], 1 - dxu[1]), (ne, 0))
        sub.replace_dart(y, (dxv[0], 1 - dxv[1]), (ne, 1))
        pairs.append((dxu[0], dxv[0]))
    for old_e in {d[0] for d in sub.rot[u]} | {d[0] for d in sub.rot[v]}:
        sub.ends.pop(old_e, None)
        sub.trace.pop(old_e, None)
    sub.drop_vertex(u)
    sub.drop_vertex(v)
    return _find_forced(sub, k, depth + 1)


def _degree4_face_structure(wg: _WG):
    """Find a 5-equalizer whose faces are quads with two non-adjacent
    degree-3 neighbors; return the forced all-in outer vertex."""
    walks = _faces(wg)
    face_len: dict[Dart, int] = {}
    for walk in walks:
        for d in walk:
            face_len[d] = len(walk)
    corner: dict[tuple, object] = {}
    for v, kind in wg.kind.items():
        if kind != "eq" or wg.arity(v) != 5:
            continue
        r = wg.rot[v]
        ok = True
        mids = []
        corners = []
        for t in range(5):
            e, s = r[t]
            mids.append(wg.other_end((e, s)))
            # face between rotation slots t and t+1 contains the dart (e, s)
            # leaving v at slot t+1's predecessor... use the dart leaving v
            leave = r[(t + 1) % 5]
            if face_len[leave] != 4:
                ok = False
                break
            # walk two steps from the leaving dart to find the far corner
            walk_dart = leave
            # find walk and position
        if not ok:
            continue
        # corner vertex between slots t and t+1: two steps along the face
        corners = []
        pos: dict[Dart, tuple] = {}
        for w, rr in wg.rot.items():
            for i, dart in enumerate(rr):
                pos[dart] = (w, i)

        def next_dart(d):
            e, s = d
            w, i = pos[(e, 1 - s)]
            rr = wg.rot[w]
            return rr[(i + 1) % len(rr)]

        for t in range(5):
            leave = r[(t + 1) % 5]
            d2 = next_dart(leave)
            corner_v = wg.other_end(d2)
            corners.append(corner_v)
        deg3 = [t for t in range(5) if wg.kind.get(mids[t]) == "one" and wg.arity(mids[t]) == 3]
        for a in deg3:
            for b in deg3:
                if (b - a) % 5 == 3:
                    # long arc a -> a+1 -> a+2 -> b; blue corner between
                    # slots a+1 and a+2
                    blue = corners[(a + 1) % 5]
                    if wg.kind.get(blue) == "eq":
                        return blue
    return None


def _build_wg(inst: Instance) -> tuple[_WG, Optional[int]]:
    wg = _WG()
    k: Optional[int] = None
    for v, kind in inst.vertices.items():
        spec = None
        match kind:
            case Symmetric(sp):
                spec = sp
            case Constant(direction):
                wg.kind[v] = "in" if direction == "in" else "out"
            case Equalizer(kk):
                wg.kind[v] = "eq"
                if kk >= 3:
                    if k is not None and k != kk:
                        raise ValueError("multiple equalizer sizes present")
                    k = kk
            case General(rel):
                spec = is_symmetric(rel)
                if spec is None:
                    raise ValueError(f"vertex {v!r} outside the solver's scope")
            case _:
                raise ValueError(f"vertex {v!r} outside the solver's scope")
        if spec is not None:
            j = spec.arity
            s = set(spec.in_set)
            if not s:
                wg.kind[v] = "unsat"
            elif s == {0, j} and j >= 2:
                wg.kind[v] = "eq"
                if j >= 3:
                    if k is not None and k != j:
                        raise ValueError("multiple equalizer sizes present")
                    k = j
            elif s == {0}:
                wg.kind[v] = "out"
            elif s == {j}:
                wg.kind[v] = "in"
            elif s == {1}:
                wg.kind[v] = "one"
            elif s == {0, 1} and j == 1:
                # unconstrained degree-1 stub: model as a 1-in-2 with a spare
                raise ValueError("free vertices are outside the solver's scope")
            else:
                raise ValueError(f"vertex {v!r} outside the solver's scope")
        wg.rot[v] = []
    for e, ((a, pa), (b, pb)) in enumerate(inst.edges):
        wg.ends[e] = (a, b)
        wg.trace[e] = (e, 0)
    wg.next_eid = len(inst.edges)
    for v in inst.vertices:
        order = inst.rotation[v]
        darts = []
        for p in order:
            e, side = inst.endpoint_at(v, p)
            darts.append((e, side))
        wg.rot[v] = darts
    for v in list(wg.kind):
        if v in wg.kind:
            _reclassify(wg, v)
    return wg, k


def _apply_fix(wg: _WG, e: int, d: int) -> None:
    u, v = wg.ends[e]
    receiver = v if d == 1 else u
    sender = u if d == 1 else v
    wg.delete_edge(e)
    for w, incoming in ((receiver, True), (sender, False)):
        if w not in wg.kind:
            continue
        kind = wg.kind[w]
        if kind == "one":
            wg.kind[w] = "out" if incoming else "one"
        elif kind == "eq":
            wg.kind[w] = "in" if incoming else "out"
        elif kind == "in" and not incoming:
            wg.kind[w] = "unsat"
        elif kind == "out" and incoming:
            wg.kind[w] = "unsat"
        _reclassify(wg, w)
        if receiver == sender:
            break  # self-loop: endpoints coincide, adjust once


def solve_planar_k5(inst: Instance, k: Optional[int] = None) -> Optional[Orientation]:
    """Forced-edge elimination for terminator/equalizer/1-in-j planar graphs."""
    if inst.rotation is None:
        raise ValueError("the planar reduction solver needs a rotation system")
    if not euler_check(inst):
        raise ValueError("rotation system is not a planar embedding")
    wg, found_k = _build_wg(inst)
    if k is None:
        k = found_k
    if found_k is not None and found_k < 5:
        raise ValueError(f"equalizer size {found_k} is below the solvable range")
    fixed: dict[int, int] = {}
    while True:
        if any(kind == "unsat" for kind in wg.kind.values()):
            return None
        if not any(
            kind == "one" and wg.arity(v) >= 3 for v, kind in wg.kind.items()
        ):
            break
        res = _find_forced(wg, k or 5)
        if res is None:
            break
        if res[0] == "unsat":
            return None
        _, pe, d = res
        if pe in fixed:
            raise AssertionError("edge fixed twice")
        fixed[pe] = d
        _apply_fix(wg, pe, d)
    # residual: terminators, equalizers, 1-in-<=2 vertices; all affine
    kinds = {}
    ports: dict = {}
    edges = []
    emap = []
    for v in wg.kind:
        ports[v] = 0
    for e, (u, v) in wg.ends.items():
        pu = ports[u]
        ports[u] += 1
        pv = ports[v]
        ports[v] += 1
        edges.append(((u, pu), (v, pv)))
        emap.append(e)
    for v, kind in wg.kind.items():
        j = ports[v]
        if kind == "in":
            kinds[v] = Symmetric(sym(j, [j]))
        elif kind == "out":
            kinds[v] = Symmetric(sym(j, [0]))
        elif kind == "eq":
            kinds[v] = Equalizer(j)
        elif kind == "one":
            kinds[v] = Symmetric(sym(j, [1]))
        else:
            return None
    residual = Instance(kinds, tuple(edges), None)
    sol = solve_affine(residual)
    if sol is None:
        return None
    orient: list[Optional[int]] = [None] * len(inst.edges)
    for pe, d in fixed.items():
        orient[pe] = d
    for i, e in enumerate(emap):
        pe, flip = wg.trace[e]
        orient[pe] = sol[i] ^ flip
    result = tuple(orient)  # type: ignore[arg-type]
    bad = validate(inst, result)
    if bad:
        raise AssertionError(f"reduction produced an invalid orientation at {bad}")
    return result
