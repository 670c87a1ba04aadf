"""Text and JSON formats for instances, gadgets, and type expressions."""

from __future__ import annotations

import json
from typing import Optional

from .gadgets import Gadget
from .instances import Edge, Instance, VertexId
from .relations import (
    Alternator,
    CROSSOVER_RELATION,
    Constant,
    Equalizer,
    External,
    General,
    Relation,
    SYNCHRONIZER_RELATION,
    Symmetric,
    SymmetricSpec,
    Synchronizer,
    VertexKind,
    str_to_word,
    word_to_str,
)


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_type(expr: str) -> Relation:
    """Parse a vertex-type expression into a Relation.

    Accepts 'crossover', 'sync', 'eqK', 'altK', 'I-in-J', '{a,b}-in-J',
    'const-in'/'const-out', and 'words:w1;w2;...'.
    """
    from .relations import expand

    s = expr.strip().lower()
    if s == "crossover":
        return CROSSOVER_RELATION
    if s in ("sync", "synchronizer"):
        return SYNCHRONIZER_RELATION
    if s.startswith("eq"):
        return expand(Equalizer(int(s[2:])))
    if s.startswith("alt"):
        return expand(Alternator(int(s[3:])))
    if s == "const-in":
        return Relation(1, frozenset([1]))
    if s == "const-out":
        return Relation(1, frozenset([0]))
    if s.startswith("words:"):
        return Relation.from_strings(s[6:].split(";"))
    if "-in-" in s:
        left, right = s.split("-in-")
        j = int(right)
        left = left.strip()
        if left.startswith("{"):
            body = left.strip("{}").strip()
            in_set = [int(t) for t in body.split(",")] if body else []
        else:
            in_set = [int(left)]
        return expand(Symmetric(SymmetricSpec(j, frozenset(in_set))))
    raise ValueError(f"cannot parse type expression {expr!r}")


def _format_kind(kind: VertexKind) -> str:
    match kind:
        case Symmetric(spec):
            s = ",".join(str(i) for i in sorted(spec.in_set))
            return f"sym {spec.arity} S={s}"
        case General(rel):
            words = ";".join(rel.to_strings()) if rel.arity else ("-" if rel.allowed else "")
            return f"gen {rel.arity} allowed={words}"
        case Equalizer(k):
            return f"eq {k}"
        case Synchronizer():
            return "sync"
        case Alternator(degree):
            return f"alt {degree}"
        case Constant(direction):
            return f"const {direction}"
        case External():
            raise ValueError("External vertices are written as 'external' lines")
    raise TypeError(f"unknown kind {kind!r}")


def _parse_kind(tokens: list[str], line_no: int) -> VertexKind:
    tag = tokens[0]
    try:
        if tag == "sym":
            j = int(tokens[1])
            body = tokens[2]
            if not body.startswith("S="):
                raise ValueError("expected S=...")
            vals = body[2:]
            in_set = [int(t) for t in vals.split(",")] if vals else []
            return Symmetric(SymmetricSpec(j, frozenset(in_set)))
        if tag == "gen":
            j = int(tokens[1])
            body = tokens[2]
            if not body.startswith("allowed="):
                raise ValueError("expected allowed=...")
            val = body[8:]
            if j == 0:
                words = frozenset([0]) if val == "-" else frozenset()
                return General(Relation(0, words))
            words = [w for w in val.split(";") if w]
            if any(len(w) != j for w in words):
                raise ValueError(f"word length != arity {j}")
            return General(Relation(j, frozenset(str_to_word(w) for w in words)))
        if tag == "eq":
            return Equalizer(int(tokens[1]))
        if tag == "sync":
            return Synchronizer()
        if tag == "alt":
            return Alternator(int(tokens[1]))
        if tag == "const":
            return Constant(tokens[1])
    except (IndexError, ValueError) as exc:
        raise ParseError(line_no, f"bad vertex declaration: {exc}") from exc
    raise ParseError(line_no, f"unknown vertex kind {tag!r}")


def _parse_endpoint(token: str, line_no: int) -> tuple[str, int]:
    if "." not in token:
        raise ParseError(line_no, f"endpoint {token!r} must be <vertex>.<port>")
    vid, _, port = token.rpartition(".")
    try:
        return vid, int(port)
    except ValueError as exc:
        raise ParseError(line_no, f"bad port in {token!r}") from exc


def parse_instance_text(text: str) -> Instance:
    inst, externals, outer = _parse_body(text)
    if externals:
        raise ValueError("instance file contains gadget-only 'external' lines")
    return inst


def parse_gadget_text(text: str) -> Gadget:
    inst, externals, outer = _parse_body(text)
    return Gadget(inst, tuple(externals), outer)


def _parse_body(text: str):
    vertices: dict[VertexId, VertexKind] = {}
    edges: list[Edge] = []
    rotation: dict[VertexId, tuple[int, ...]] = {}
    externals: list[str] = []
    outer: Optional[int] = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        cmd = tokens[0]
        if cmd == "vertex":
            if len(tokens) < 3:
                raise ParseError(line_no, "vertex needs an id and a kind")
            vid = tokens[1]
            if vid in vertices:
                raise ParseError(line_no, f"duplicate vertex {vid!r}")
            vertices[vid] = _parse_kind(tokens[2:], line_no)
        elif cmd == "external":
            if len(tokens) != 2:
                raise ParseError(line_no, "external needs exactly an id")
            vid = tokens[1]
            if vid in vertices:
                raise ParseError(line_no, f"duplicate vertex {vid!r}")
            vertices[vid] = External()
            externals.append(vid)
        elif cmd == "edge":
            if len(tokens) != 3:
                raise ParseError(line_no, "edge needs two endpoints")
            a = _parse_endpoint(tokens[1], line_no)
            b = _parse_endpoint(tokens[2], line_no)
            edges.append((a, b))
        elif cmd == "rot":
            if len(tokens) < 2:
                raise ParseError(line_no, "rot needs a vertex id")
            try:
                rotation[tokens[1]] = tuple(int(t) for t in tokens[2:])
            except ValueError as exc:
                raise ParseError(line_no, f"bad rotation: {exc}") from exc
        elif cmd == "outer":
            if len(tokens) != 2:
                raise ParseError(line_no, "outer needs a face index")
            outer = int(tokens[1])
        else:
            raise ParseError(line_no, f"unknown declaration {cmd!r}")
    try:
        inst = Instance(vertices, tuple(edges), rotation or None)
    except ValueError as exc:
        raise ValueError(f"inconsistent instance: {exc}") from exc
    return inst, externals, outer


def instance_to_text(inst: Instance, externals: tuple = (), outer=None) -> str:
    lines = []
    ext = set(externals)
    for vid, kind in inst.vertices.items():
        if vid in ext:
            continue
        lines.append(f"vertex {vid} {_format_kind(kind)}")
    for vid in externals:
        lines.append(f"external {vid}")
    for (u, p), (v, q) in inst.edges:
        lines.append(f"edge {u}.{p} {v}.{q}")
    if inst.rotation is not None:
        for vid, order in inst.rotation.items():
            lines.append(f"rot {vid} {' '.join(str(p) for p in order)}")
    if outer is not None:
        lines.append(f"outer {outer}")
    return "\n".join(lines) + "\n"


def gadget_to_text(g: Gadget) -> str:
    return instance_to_text(g.instance, g.externals, g.outer_face)


# ---------------------------------------------------------------------------
# JSON mirror


def _kind_to_json(kind: VertexKind):
    match kind:
        case Symmetric(spec):
            return {"kind": "sym", "arity": spec.arity, "S": sorted(spec.in_set)}
        case General(rel):
            return {"kind": "gen", "arity": rel.arity, "allowed": rel.to_strings()}
        case Equalizer(k):
            return {"kind": "eq", "k": k}
        case Synchronizer():
            return {"kind": "sync"}
        case Alternator(degree):
            return {"kind": "alt", "degree": degree}
        case Constant(direction):
            return {"kind": "const", "direction": direction}
        case External():
            return {"kind": "external"}
    raise TypeError(f"unknown kind {kind!r}")


def _kind_from_json(obj) -> VertexKind:
    tag = obj["kind"]
    if tag == "sym":
        return Symmetric(SymmetricSpec(obj["arity"], frozenset(obj["S"])))
    if tag == "gen":
        words = frozenset(str_to_word(w) for w in obj["allowed"])
        return General(Relation(obj["arity"], words))
    if tag == "eq":
        return Equalizer(obj["k"])
    if tag == "sync":
        return Synchronizer()
    if tag == "alt":
        return Alternator(obj["degree"])
    if tag == "const":
        return Constant(obj["direction"])
    if tag == "external":
        return External()
    raise ValueError(f"unknown kind tag {tag!r}")


def instance_to_json(inst: Instance, externals: tuple = (), outer=None) -> str:
    doc = {
        "vertices": {str(v): _kind_to_json(k) for v, k in inst.vertices.items()},
        "edges": [[[str(u), p], [str(v), q]] for (u, p), (v, q) in inst.edges],
        "rotation": None
        if inst.rotation is None
        else {str(v): list(r) for v, r in inst.rotation.items()},
    }
    if externals:
        doc["externals"] = [str(v) for v in externals]
    if outer is not None:
        doc["outer"] = outer
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_instance_json(text: str) -> Instance:
    doc = json.loads(text)
    vertices = {v: _kind_from_json(k) for v, k in doc["vertices"].items()}
    edges = tuple(((u, p), (v, q)) for (u, p), (v, q) in doc["edges"])
    rotation = doc.get("rotation")
    if rotation is not None:
        rotation = {v: tuple(r) for v, r in rotation.items()}
    return Instance(vertices, edges, rotation)


def parse_gadget_json(text: str) -> Gadget:
    doc = json.loads(text)
    inst = parse_instance_json(text)
    return Gadget(inst, tuple(doc.get("externals", ())), doc.get("outer"))


def orientation_to_lines(inst: Instance, orientation) -> list[str]:
    out = []
    for e, ((u, p), (v, q)) in enumerate(inst.edges):
        if orientation[e]:
            out.append(f"{u}.{p} -> {v}.{q}")
        else:
            out.append(f"{v}.{q} -> {u}.{p}")
    return out
