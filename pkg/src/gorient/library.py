"""Shipped gadget constructions and their verification suite."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from .formats import parse_gadget_text
from .gadgets import Gadget, derived_type, synchronizer_from
from .instances import Edge, Instance, VertexId
from .relations import (
    Alternator,
    CROSSOVER_RELATION,
    Equalizer,
    External,
    General,
    Relation,
    SYNCHRONIZER_RELATION,
    Symmetric,
    Synchronizer,
    VertexKind,
    duplicator_info,
    expand,
    i_in_j,
)


def load_gadget(name: str) -> Gadget:
    text = resources.files("gorient.data.gadgets").joinpath(name).read_text()
    return parse_gadget_text(text)


def _expand_sym(i: int, j: int) -> Relation:
    return expand(Symmetric(i_in_j(i, j)))


def one_in_two() -> Relation:
    return _expand_sym(1, 2)


# ---------------------------------------------------------------------------
# duplicator linking


def chain_duplicators(parts: list[tuple[Relation, int]]) -> Gadget:
    """Link duplicator copies through synchronizers into one larger duplicator.

    ``parts`` lists (duplicator, sign); each copy is used with the state of
    net flow sign*f, and consecutive copies share a synchronizer so all
    copies switch state together.  The derived gadget is a duplicator with
    net flow +-sum(sign_i * f_i).
    """
    if not parts:
        raise ValueError("need at least one duplicator")
    vertices: dict[VertexId, VertexKind] = {}
    edges: list[Edge] = []
    externals: list[VertexId] = []
    ext_n = 0

    def expose(vid: VertexId, port: int) -> None:
        nonlocal ext_n
        x = f"x{ext_n}"
        ext_n += 1
        vertices[x] = External()
        edges.append(((x, 0), (vid, port)))
        externals.append(x)

    # For each copy pick a "plus" witness word (heaviest); a negative sign
    # flips the copy's state relative to the others.  Copy i reserves one
    # hook port per link it sits on (left link i-1, right link i); remaining
    # ports are exposed.
    n = len(parts)
    witness: list[int] = []
    left_hook: list[Optional[int]] = []
    right_hook: list[Optional[int]] = []
    for idx, (dup, sign) in enumerate(parts):
        if sign not in (-1, 1):
            raise ValueError("sign must be +-1")
        if duplicator_info(dup) is None:
            raise ValueError(f"{dup!r} is not a duplicator")
        name = f"d{idx}"
        vertices[name] = General(dup)
        a, b = sorted(dup.allowed)
        w = b if bin(b).count("1") * 2 >= dup.arity else a
        if sign < 0:
            w ^= (1 << dup.arity) - 1
        witness.append(w)
        port = 0
        lh = rh = None
        if idx > 0:
            lh, port = port, port + 1
        if idx < n - 1:
            rh, port = port, port + 1
        if dup.arity < port:
            raise ValueError(f"duplicator {idx} too small for its links")
        left_hook.append(lh)
        right_hook.append(rh)
        for p in range(port, dup.arity):
            expose(name, p)

    # Synchronizer between consecutive copies: ports 0,1 point in together,
    # 2,3 out together.  A hook whose witness bit is 1 wants its edge into
    # the copy, i.e. out of the synchronizer, so it takes an out rail.
    for idx in range(n - 1):
        s = f"s{idx}"
        vertices[s] = Synchronizer()
        used = []
        for vid, port in ((f"d{idx}", right_hook[idx]), (f"d{idx + 1}", left_hook[idx + 1])):
            bit = (witness[int(vid[1:])] >> port) & 1
            pool = (2, 3) if bit else (0, 1)
            sp = pool[0] if pool[0] not in used else pool[1]
            used.append(sp)
            edges.append(((s, sp), (vid, port)))
        for sp in range(4):
            if sp not in used:
                expose(s, sp)
    return Gadget(Instance(vertices, tuple(edges)), tuple(externals))


def cross_paths_through_synchronizer(
    g: Gadget, port_a: int, port_b: int
) -> Gadget:
    """Join two externals of a duplicator gadget back through a synchronizer.

    The synchronizer plays the crossing point of two wires: each wire enters
    one in-together port and leaves the paired out-together port, so both
    wires flip together with the gadget.  The two consumed externals are
    replaced by the synchronizer's far rails.
    """
    if port_a == port_b:
        raise ValueError("need two distinct external ports")
    inst, externals = g.instance, list(g.externals)
    xa, xb = externals[port_a], externals[port_b]
    vertices = dict(inst.vertices)
    del vertices[xa], vertices[xb]
    s = ("cross", len(inst.vertices))
    vertices[s] = Synchronizer()
    edges = []
    for (u, p), (v, q) in inst.edges:
        if u in (xa, xb) or v in (xa, xb):
            other, port = ((v, q) if u in (xa, xb) else (u, p))
            sp = 0 if (u == xa or v == xa) else 1
            edges.append(((s, sp), (other, port)))
        else:
            edges.append(((u, p), (v, q)))
    na, nb = f"xc{len(externals)}", f"xc{len(externals) + 1}"
    vertices[na] = External()
    vertices[nb] = External()
    edges.append(((na, 0), (s, 2)))
    edges.append(((nb, 0), (s, 3)))
    new_ext = [e for e in externals if e not in (xa, xb)] + [na, nb]
    return Gadget(Instance(vertices, tuple(edges)), tuple(new_ext))


# ---------------------------------------------------------------------------
# manifest


@dataclass(frozen=True)
class Construction:
    name: str
    build: Callable[[], Gadget]
    target: Relation
    cap: Optional[int] = None


def _file(name: str) -> Callable[[], Gadget]:
    return lambda: load_gadget(name)


def shipped_constructions() -> list[Construction]:
    eq = lambda k: expand(Equalizer(k))
    out: list[Construction] = [
        Construction(
            "crossover_from_2in4_sync",
            _file("crossover_from_2in4_sync.gad"),
            CROSSOVER_RELATION,
        ),
        Construction(
            "two_in_4_from_1in3_2in3",
            _file("two_in_4_from_1in3_2in3.gad"),
            _expand_sym(2, 4),
        ),
        Construction(
            "two_in_3_from_1j_in_j_const",
            _file("two_in_3_from_1j_in_j_const.gad"),
            _expand_sym(2, 3),
        ),
        Construction(
            "crossover_from_1in3_3eq",
            _file("crossover_from_1in3_3eq.gad"),
            CROSSOVER_RELATION,
        ),
        Construction(
            "two_in_3_from_1in3_4eq",
            _file("two_in_3_from_1in3_4eq.gad"),
            _expand_sym(2, 3),
        ),
        Construction(
            "sync_from_two_3eq", _file("sync_from_two_3eq.gad"), SYNCHRONIZER_RELATION
        ),
        Construction(
            "sync_from_netflow1_pair",
            _file("sync_from_netflow1_pair.gad"),
            SYNCHRONIZER_RELATION,
        ),
        Construction(
            "sync_from_netflow2_pair",
            _file("sync_from_netflow2_pair.gad"),
            SYNCHRONIZER_RELATION,
        ),
        Construction(
            "edge_subdiv_1in2_chain",
            _file("edge_subdiv_1in2_chain.gad"),
            one_in_two(),
        ),
        Construction(
            "edge_subdiv_01in2_alternators",
            _file("edge_subdiv_01in2_alternators.gad"),
            one_in_two(),
            cap=32,
        ),
    ]
    # programmatic synchronizer builders over representative duplicators
    for label, dup in (
        ("sync_built_from_3eq", eq(3)),
        ("sync_built_from_4eq", eq(4)),
        ("sync_built_from_netflow1_deg5", Relation.from_strings(["11010", "00101"])),
    ):
        out.append(
            Construction(label, lambda d=dup: synchronizer_from(d), SYNCHRONIZER_RELATION)
        )
    return out


def verify_construction(c: Construction) -> tuple[bool, str]:
    g = c.build()
    got = derived_type(g, cap=c.cap)
    ok = got == c.target
    return ok, f"{c.name}: {'ok' if ok else f'derived {got!r} != target {c.target!r}'}"


def verify_all() -> list[tuple[str, bool, str]]:
    out = []
    for c in shipped_constructions():
        ok, msg = verify_construction(c)
        out.append((c.name, ok, msg))
    return out
