"""Gadgets: sub-instances with external half-edges and derived vertex types."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .instances import Edge, Instance, VertexId, faces
from .relations import (
    Constant,
    Equalizer,
    External,
    General,
    Relation,
    SYNCHRONIZER_RELATION,
    SymmetricSpec,
    Symmetric,
    VertexKind,
    duplicator_info,
    expand,
    kind_arity,
)
from .search import edge_cap, find_orientation


@dataclass(frozen=True)
class Gadget:
    """An instance whose External vertices stand for ports of a simulated type."""

    instance: Instance
    externals: tuple[VertexId, ...]
    outer_face: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "externals", tuple(self.externals))
        marked = {
            v for v, k in self.instance.vertices.items() if isinstance(k, External)
        }
        if len(set(self.externals)) != len(self.externals):
            raise ValueError("duplicate external vertex")
        if set(self.externals) != marked:
            raise ValueError("externals must list exactly the External vertices")
        if self.outer_face is not None:
            boundary = faces(self.instance)[self.outer_face]
            on_face = set()
            for e, _ in boundary:
                on_face.add(self.instance.edges[e][0][0])
                on_face.add(self.instance.edges[e][1][0])
            if not set(self.externals) <= on_face:
                raise ValueError("all external vertices must lie on the outer face")

    @property
    def arity(self) -> int:
        return len(self.externals)


def _external_fix(g: Gadget, word: int) -> Optional[dict[int, int]]:
    """Edge directions realizing the external word (bit 1 = into the interior).

    None when the word is contradictory, which happens for an edge joining
    two external vertices directly.
    """
    fixed: dict[int, int] = {}
    for k, x in enumerate(g.externals):
        e, side = g.instance.endpoint_at(x, 0)
        inward = (word >> k) & 1
        # side 0: x is endpoint A, so direction A->B (1) leaves x
        want = inward if side == 0 else 1 - inward
        if fixed.setdefault(e, want) != want:
            return None
    return fixed


def derived_type(g: Gadget, cap: Optional[int] = None) -> Relation:
    """The relation on the externals realized by the gadget, by enumeration."""
    if len(g.instance.edges) > edge_cap(cap):
        raise ValueError(
            f"gadget has {len(g.instance.edges)} edges, over the enumeration cap"
        )
    words = set()
    for word in range(1 << g.arity):
        fixed = _external_fix(g, word)
        if fixed is None:
            continue
        if find_orientation(g.instance, fixed, cap=cap) is not None:
            words.add(word)
    return Relation(g.arity, frozenset(words))


def simulates(g: Gadget, target: Relation, cap: Optional[int] = None) -> bool:
    """Exact equality w.r.t. the recorded external ordering."""
    return derived_type(g, cap) == target


# ---------------------------------------------------------------------------
# constructions


def equalizer_from_gap(spec: SymmetricSpec, a: int, k: int) -> Gadget:
    """Pad an S-in-j vertex with constants across a gap to get a k-equalizer.

    Needs a, a+k in S and nothing in between; attaches a edges forced inward
    and j-(a+k) edges forced outward.
    """
    j = spec.arity
    if not (a in spec.in_set and a + k in spec.in_set):
        raise ValueError(f"gap endpoints {a},{a + k} must lie in S")
    if any(a + t in spec.in_set for t in range(1, k)):
        raise ValueError(f"S has elements strictly inside the gap ({a},{a + k})")
    vertices: dict[VertexId, VertexKind] = {"c": Symmetric(spec)}
    edges: list[Edge] = []
    for t in range(k):
        vertices[f"x{t}"] = External()
        edges.append(((f"x{t}", 0), ("c", t)))
    port = k
    for t in range(a):
        vertices[f"in{t}"] = Constant("out")  # pushes its edge into the center
        edges.append(((f"in{t}", 0), ("c", port)))
        port += 1
    for t in range(j - (a + k)):
        vertices[f"out{t}"] = Constant("in")  # pulls its edge out of the center
        edges.append(((f"out{t}", 0), ("c", port)))
        port += 1
    g = Gadget(Instance(vertices, tuple(edges)), tuple(f"x{t}" for t in range(k)))
    if derived_type(g) != expand(Equalizer(k)):
        raise AssertionError("equalizer construction failed self-verification")
    return g


def _heavy_word(dup: Relation) -> int:
    """The satisfying word with at least as many ins as outs (max tie-break)."""
    a, b = sorted(dup.allowed)
    return b if bin(b).count("1") * 2 >= dup.arity else a


def synchronizer_from(dup: Relation) -> Gadget:
    """Build a synchronizer gadget from a non-trivial non-alternator duplicator.

    Opposite-direction port pairs are annihilated with self-loops; for net
    flow f >= 3 the two reduced copies are joined by f-2 edges, for f = 1, 2
    by one or two edges, and for f = 0 a single reduced copy of degree 4 is
    already a synchronizer up to port order.
    """
    info = duplicator_info(dup)
    if info is None or info.is_trivial or info.is_alternator:
        raise ValueError("need a non-trivial, non-alternator duplicator")
    f = info.net_flow
    w = _heavy_word(dup)
    ones = [p for p in range(dup.arity) if (w >> p) & 1]
    zeros = [p for p in range(dup.arity) if not (w >> p) & 1]
    residual = f if f >= 3 else (3 if f == 1 else 4)
    n_loops = (dup.arity - residual) // 2
    loop_pairs = list(zip(ones[len(ones) - n_loops :], zeros[:n_loops]))
    free_ones = ones[: len(ones) - n_loops]
    free_zeros = zeros[n_loops:]

    vertices: dict[VertexId, VertexKind]
    edges: list[Edge]
    if f == 0:
        # the reduced degree-4 duplicator is itself the synchronizer
        vertices = {"u": General(dup)}
        edges = [(("u", a), ("u", b)) for a, b in loop_pairs]
        names = []
        for i, p in enumerate(free_ones + free_zeros):
            x = f"x{i}"
            vertices[x] = External()
            edges.append(((x, 0), ("u", p)))
            names.append(x)
    else:
        # externals are two same-direction ports on each copy
        ext = free_ones[:2]
        connect = free_ones[2:] + free_zeros
        vertices = {"u": General(dup), "v": General(dup)}
        edges = []
        for name in ("u", "v"):
            edges.extend(((name, a), (name, b)) for a, b in loop_pairs)
        edges.extend((("u", p), ("v", p)) for p in connect)
        names = []
        for side in ("u", "v"):
            for i, p in enumerate(ext):
                x = f"{side}x{i}"
                vertices[x] = External()
                edges.append(((x, 0), (side, p)))
                names.append(x)
    g = Gadget(Instance(vertices, tuple(edges)), tuple(names))
    if derived_type(g) != SYNCHRONIZER_RELATION:
        raise AssertionError("synchronizer construction failed self-verification")
    return g


@dataclass(frozen=True)
class DuplicatorSet:
    members: tuple[Relation, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("duplicator set must be non-empty")
        for r in self.members:
            if duplicator_info(r) is None:
                raise ValueError(f"{r!r} is not a duplicator")

    @property
    def infos(self):
        return [duplicator_info(r) for r in self.members]

    @property
    def has_nontrivial(self) -> bool:
        return any(not i.is_trivial for i in self.infos)

    @property
    def all_alternators(self) -> bool:
        return all(i.is_alternator for i in self.infos)


def can_simulate_netflow(ds: DuplicatorSet, f: int) -> bool:
    """Whether the set simulates a duplicator of net flow +-f.

    For f = 0 the target is read as a synchronizer (the useful flavor),
    except that a trivial-only set still counts the bare edge 1-in-2.
    """
    if f < 0:
        raise ValueError("net flow must be non-negative")
    infos = ds.infos
    if not ds.has_nontrivial:
        return f == 0 or any(i.net_flow == f for i in infos)
    if ds.all_alternators:
        return False
    g = 0
    for i in infos:
        g = math.gcd(g, i.net_flow)
    return f % g == 0 if g else f == 0


# ---------------------------------------------------------------------------
# substitution


def substitute(host: Instance, vertex: VertexId, g: Gadget) -> Instance:
    """Replace a host vertex by the gadget's interior.

    Port k of the host vertex is wired to external k of the gadget.
    Satisfiability is preserved whenever the gadget's derived type equals
    the vertex's expanded kind.
    """
    j = kind_arity(host.vertices[vertex])
    if j != g.arity:
        raise ValueError(f"vertex arity {j} != gadget arity {g.arity}")
    ext_index = {x: k for k, x in enumerate(g.externals)}
    rename = {v: ("sub", vertex, v) for v in g.instance.vertices if v not in ext_index}

    vertices: dict[VertexId, VertexKind] = {
        v: k for v, k in host.vertices.items() if v != vertex
    }
    vertices.update({rename[v]: g.instance.vertices[v] for v in rename})

    edges: list[Edge] = []
    # per replaced port: what hangs on the host side and on the gadget side
    host_link: list = [None] * j
    gadget_link: list = [None] * j
    for (u, p), (v, q) in host.edges:
        if u == vertex and v == vertex:
            host_link[p] = ("chain", q)
            host_link[q] = ("chain", p)
        elif u == vertex:
            host_link[p] = ("end", (v, q))
        elif v == vertex:
            host_link[q] = ("end", (u, p))
        else:
            edges.append(((u, p), (v, q)))
    for (u, p), (v, q) in g.instance.edges:
        ku, kv = ext_index.get(u), ext_index.get(v)
        if ku is not None and kv is not None:
            gadget_link[ku] = ("chain", kv)
            gadget_link[kv] = ("chain", ku)
        elif ku is not None:
            gadget_link[ku] = ("end", (rename[v], q))
        elif kv is not None:
            gadget_link[kv] = ("end", (rename[u], p))
        else:
            edges.append(((rename[u], p), (rename[v], q)))

    # Each port joins its host side to its gadget side; self-loops and
    # pass-through externals chain ports together.  Walk each chain from a
    # concrete endpoint to the opposite one and emit a single edge.  Closed
    # chains (a host self-loop into a pass-through pair) constrain nothing
    # and are dropped.
    consumed: set[tuple[int, str]] = set()
    for k in range(j):
        for side in ("host", "gadget"):
            link = host_link if side == "host" else gadget_link
            tag, payload = link[k]
            if tag != "end" or (k, side) in consumed:
                continue
            consumed.add((k, side))
            start = payload
            cur, cur_side = k, ("gadget" if side == "host" else "host")
            while True:
                l = host_link if cur_side == "host" else gadget_link
                tag2, payload2 = l[cur]
                consumed.add((cur, cur_side))
                if tag2 == "end":
                    edges.append((start, payload2))
                    break
                cur = payload2
                consumed.add((cur, cur_side))
                cur_side = "gadget" if cur_side == "host" else "host"

    rotation = None
    if host.rotation is not None and g.instance.rotation is not None:
        rotation = {v: host.rotation[v] for v in vertices if v in host.rotation}
        for old, new in rename.items():
            rotation[new] = g.instance.rotation[old]
    return Instance(vertices, tuple(edges), rotation)
