"""Instances: multigraphs with typed vertices, orientations, rotation systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .relations import (
    Alternator,
    External,
    Relation,
    VertexKind,
    alternator_relation,
    expand,
    kind_arity,
    word_to_str,
)

VertexId = Hashable
Endpoint = tuple[VertexId, int]
Edge = tuple[Endpoint, Endpoint]
# A dart is a directed edge occurrence: (edge index, dir); dir 0 = A->B.
Dart = tuple[int, int]


@dataclass(frozen=True)
class Instance:
    vertices: dict[VertexId, VertexKind]
    edges: tuple[Edge, ...]
    rotation: Optional[dict[VertexId, tuple[int, ...]]] = None
    _ports: dict[Endpoint, tuple[int, int]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self):
        object.__setattr__(self, "vertices", dict(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        ports: dict[Endpoint, tuple[int, int]] = {}
        for idx, ((u, p), (v, q)) in enumerate(self.edges):
            for vid, port, side in ((u, p, 0), (v, q, 1)):
                if vid not in self.vertices:
                    raise ValueError(f"edge {idx} uses unknown vertex {vid!r}")
                if not 0 <= port < kind_arity(self.vertices[vid]):
                    raise ValueError(f"edge {idx}: port {port} out of range at {vid!r}")
                key = (vid, port)
                if key in ports:
                    raise ValueError(f"port {key} used twice")
                ports[key] = (idx, side)
        for vid, kind in self.vertices.items():
            for p in range(kind_arity(kind)):
                if (vid, p) not in ports:
                    raise ValueError(f"port ({vid!r}, {p}) is unused")
        if self.rotation is not None:
            rot = {k: tuple(v) for k, v in self.rotation.items()}
            object.__setattr__(self, "rotation", rot)
            for vid, kind in self.vertices.items():
                order = rot.get(vid)
                if order is None:
                    raise ValueError(f"rotation missing for vertex {vid!r}")
                if sorted(order) != list(range(kind_arity(kind))):
                    raise ValueError(f"rotation at {vid!r} is not a port permutation")
        object.__setattr__(self, "_ports", ports)

    # -- structure helpers ------------------------------------------------

    def arity(self, vid: VertexId) -> int:
        return kind_arity(self.vertices[vid])

    def endpoint_at(self, vid: VertexId, port: int) -> tuple[int, int]:
        """Return (edge index, side) occupying the given port."""
        return self._ports[(vid, port)]

    def vertex_relation(self, vid: VertexId) -> Relation:
        """Expanded relation; alternators follow the rotation when present."""
        kind = self.vertices[vid]
        if isinstance(kind, Alternator) and self.rotation is not None:
            return alternator_relation(kind.degree, self.rotation[vid])
        if isinstance(kind, External):
            return Relation(1, frozenset([0, 1]))
        return expand(kind)

    def components(self) -> list[set[VertexId]]:
        parent: dict[VertexId, VertexId] = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, _), (v, _) in self.edges:
            parent[find(u)] = find(v)
        groups: dict[VertexId, set[VertexId]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    def relabeled(self, mapping: Mapping[VertexId, VertexId]) -> "Instance":
        m = lambda v: mapping.get(v, v)
        return Instance(
            {m(v): k for v, k in self.vertices.items()},
            tuple(((m(u), p), (m(v), q)) for (u, p), (v, q) in self.edges),
            None
            if self.rotation is None
            else {m(v): r for v, r in self.rotation.items()},
        )


Orientation = tuple[int, ...]  # per edge: 1 = A->B (into endpoint B), 0 = B->A


def port_bit(inst: Instance, orientation: Sequence[int], vid: VertexId, port: int) -> int:
    """1 iff the edge at this port points into the vertex."""
    e, side = inst.endpoint_at(vid, port)
    return orientation[e] if side == 1 else 1 - orientation[e]


def induced_word(inst: Instance, orientation: Sequence[int], vid: VertexId) -> int:
    w = 0
    for p in range(inst.arity(vid)):
        w |= port_bit(inst, orientation, vid, p) << p
    return w


def validate(inst: Instance, orientation: Sequence[int]) -> list[VertexId]:
    """Ids of vertices whose induced port word is not allowed."""
    if len(orientation) != len(inst.edges):
        raise ValueError("orientation must assign every edge")
    bad = []
    for vid in inst.vertices:
        rel = inst.vertex_relation(vid)
        if induced_word(inst, orientation, vid) not in rel.allowed:
            bad.append(vid)
    return bad


# ---------------------------------------------------------------------------
# rotation systems and faces


def dart_source(inst: Instance, dart: Dart) -> Endpoint:
    e, d = dart
    return inst.edges[e][0] if d == 0 else inst.edges[e][1]


def dart_target(inst: Instance, dart: Dart) -> Endpoint:
    e, d = dart
    return inst.edges[e][1] if d == 0 else inst.edges[e][0]


def next_dart(inst: Instance, dart: Dart) -> Dart:
    """Face traversal step: leave the arrival vertex at the rotation-next port."""
    v, p = dart_target(inst, dart)
    order = inst.rotation[v]
    idx = order.index(p)
    p_next = order[(idx + 1) % len(order)]
    e, side = inst.endpoint_at(v, p_next)
    return (e, 0 if side == 0 else 1)


def faces(inst: Instance) -> list[tuple[Dart, ...]]:
    """Face walks of the embedding given by the rotation system."""
    if inst.rotation is None:
        raise ValueError("faces() needs a rotation system")
    out: list[tuple[Dart, ...]] = []
    seen: set[Dart] = set()
    for e in range(len(inst.edges)):
        for d in (0, 1):
            start = (e, d)
            if start in seen:
                continue
            walk = []
            cur = start
            while True:
                walk.append(cur)
                seen.add(cur)
                cur = next_dart(inst, cur)
                if cur == start:
                    break
            out.append(tuple(walk))
    return out


def euler_check(inst: Instance) -> bool:
    """V - E + F = 2 on every connected component (sphere convention)."""
    if inst.rotation is None:
        raise ValueError("euler_check() needs a rotation system")
    all_faces = faces(inst)
    comp_of: dict[VertexId, int] = {}
    comps = inst.components()
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    n_edges = [0] * len(comps)
    n_faces = [0] * len(comps)
    for (u, _), _ in inst.edges:
        n_edges[comp_of[u]] += 1
    for walk in all_faces:
        v, _ = dart_source(inst, walk[0])
        n_faces[comp_of[v]] += 1
    for i, comp in enumerate(comps):
        f = n_faces[i] if n_edges[i] else 1
        if len(comp) - n_edges[i] + f != 2:
            return False
    return True


def face_of_dart(inst: Instance) -> dict[Dart, int]:
    """Map each dart to the index of its face walk."""
    mapping: dict[Dart, int] = {}
    for i, walk in enumerate(faces(inst)):
        for dart in walk:
            mapping[dart] = i
    return mapping
