"""Instances, rotation systems, faces, validation, and the file formats."""

from __future__ import annotations

import pytest

from gorient.formats import (
    gadget_to_text,
    instance_to_json,
    instance_to_text,
    parse_gadget_text,
    parse_instance_json,
    parse_instance_text,
    parse_type,
    ParseError,
)
from gorient.instances import (
    Instance,
    euler_check,
    faces,
    induced_word,
    validate,
)
from gorient.relations import (
    Alternator,
    Constant,
    Equalizer,
    External,
    General,
    Relation,
    Symmetric,
    i_in_j,
    sym,
)


def triangle():
    verts = {i: Symmetric(i_in_j(1, 2)) for i in range(3)}
    edges = [((0, 0), (1, 1)), ((1, 0), (2, 1)), ((2, 0), (0, 1))]
    rot = {i: (0, 1) for i in range(3)}
    return Instance(verts, edges, rot)


def test_port_invariants():
    with pytest.raises(ValueError):
        Instance({0: Symmetric(i_in_j(1, 2))}, [((0, 0), (0, 0))])
    with pytest.raises(ValueError):
        Instance({0: Symmetric(i_in_j(1, 2))}, [((0, 0), (0, 2))])
    with pytest.raises(ValueError):
        Instance({0: Symmetric(i_in_j(1, 1))}, [])


def test_faces_triangle():
    tri = triangle()
    fs = faces(tri)
    assert sorted(len(f) for f in fs) == [3, 3]
    assert euler_check(tri)
    assert sum(len(f) for f in fs) == 2 * len(tri.edges)


def test_faces_loop_and_k5():
    loop = Instance(
        {0: Symmetric(sym(2, [0, 1, 2]))}, [((0, 0), (0, 1))], {0: (0, 1)}
    )
    assert len(faces(loop)) == 2
    assert euler_check(loop)
    import itertools

    kverts = {i: Symmetric(sym(4, range(5))) for i in range(5)}
    ports = {i: 0 for i in range(5)}
    kedges = []
    for a, b in itertools.combinations(range(5), 2):
        kedges.append(((a, ports[a]), (b, ports[b])))
        ports[a] += 1
        ports[b] += 1
    k5 = Instance(kverts, kedges, {i: (0, 1, 2, 3) for i in range(5)})
    assert not euler_check(k5)


def test_face_length_sum_matches_double_edges():
    inst = Instance(
        {0: Symmetric(sym(4, [2])), 1: Symmetric(sym(2, [1])), 2: Symmetric(sym(2, [1

]))},
        [((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (2, 0)), ((0, 3), (2, 1))],
        {0: (0, 1, 2, 3), 1: (0, 1), 2: (0, 1)},
    )
    assert sum(len(f) for f in faces(inst)) == 2 * len(inst.edges)


def test_validate_examples():
    inst = Instance(
        {"a": Symmetric(i_in_j(1, 1)), "b": Symmetric(i_in_j(0, 1))},
        [(("a", 0), ("b", 0))],
    )
    # edge must point into the 1-in-1 side: endpoint A is 'a', so direction 0
    assert validate(inst, (0,)) == []
    assert set(validate(inst, (1,))) == {"a", "b"}
    tri = triangle()
    assert validate(tri, (1, 1, 1)) == []
    assert validate(tri, (1, 1, 0)) != []


def test_alternator_respects_rotation():
    inst = Instance(
        {0: Alternator(4), 1: Symmetric(sym(1, [0, 1])), 2: Symmetric(sym(1, [0, 1])),
         3: Symmetric(sym(1, [0, 1])), 4: Symmetric(sym(1, [0, 1]))},
        [((0, p), (p + 1, 0)) for p in range(4)],
        {0: (0, 2, 1, 3), 1: (0,), 2: (0,), 3: (0,), 4: (0,)},
    )
    # direction 1 leaves vertex 0, so (1,1,0,0) reads ports 2,3 inward
    word = induced_word(inst, (1, 1, 0, 0), 0)
    assert word == 0b1100
    # in rotation order 0,2,1,3 the bits 0,1,0,1 alternate
    assert validate(inst, (1, 1, 0, 0)) == []
    assert validate(inst, (1, 0, 1, 0)) != []


def test_text_roundtrip():
    text = """# demo instance
vertex a sym 3 S=0,3
vertex b eq 3
vertex c sync
vertex d alt 4
vertex e gen 2 allowed=01;10
vertex f const in
edge a.0 b.0
edge a.1 b.1
edge a.2 b.2
edge c.0 d.0
edge c.1 d.1
edge c.2 d.2
edge c.3 d.3
edge e.0 e.1
edge f.0 g.0
external g
"""
    g = parse_gadget_text(text)
    again = parse_gadget_text(gadget_to_text(g))
    assert again.instance.vertices == g.instance.vertices
    assert again.instance.edges == g.instance.edges
    assert again.externals == g.externals


def test_json_roundtrip():
    tri = triangle()
    doc = instance_to_json(tri)
    back = parse_instance_json(doc)
    assert len(back.edges) == 3
    assert back.rotation is not None


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_instance_text("vertex a sym 2 S=1\nedge a.0\n")
    assert "line 2" in str(exc.value)
    with pytest.raises(ParseError) as exc:
        parse_instance_text("vertex a wat 2\n")
    assert "line 1" in str(exc.value)
    # semantic errors (port out of range) surface as plain ValueError
    with pytest.raises(ValueError):
        parse_instance_text("vertex a sym 2 S=1\nedge a.0 a.9\n")


def test_parse_type_expressions():
    assert parse_type("1-in-3").arity == 3
    assert parse_type("{0,3}-in-4").arity == 4
    assert parse_type("eq3").to_strings() == ["000", "111"]
    assert parse_type("sync").arity == 4
    assert parse_type("alt4").to_strings() == ["0101", "1010"]
    assert parse_type("crossover").arity == 4
    assert parse_type("words:110;001") == Relation.from_strings(["110", "001"])
