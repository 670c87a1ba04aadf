"""Gadget enumeration, constructions, and substitution."""

from __future__ import annotations

import random

import pytest

from gorient.gadgets import (
    DuplicatorSet,
    Gadget,
    can_simulate_netflow,
    derived_type,
    equalizer_from_gap,
    simulates,
    substitute,
    synchronizer_from,
)
from gorient.instances import Instance
from gorient.relations import (
    Alternator,
    CROSSOVER_RELATION,
    Equalizer,
    External,
    General,
    Relation,
    SYNCHRONIZER_RELATION,
    Symmetric,
    expand,
    expand_symmetric,
    i_in_j,
    is_symmetric,
    sym,
)
from gorient.search import find_orientation

from util import random_instance


def two_one_in_three() -> Gadget:
    verts = {
        "a": Symmetric(i_in_j(1, 3)),
        "b": Symmetric(i_in_j(1, 3)),
        "x0": External(),
        "x1": External(),
        "x2": External(),
        "x3": External(),
    }
    edges = [
        (("a", 0), ("b", 0)),
        (("x0", 0), ("a", 1)),
        (("x1", 0), ("a", 2)),
        (("x2", 0), ("b", 1)),
        (("x3", 0), ("b", 2)),
    ]
    return Gadget(Instance(verts, edges), ("x0", "x1", "x2", "x3"))


def test_derived_type_examples():
    assert is_symmetric(derived_type(two_one_in_three())) == i_in_j(1, 4)
    bare = Gadget(
        Instance({"x0": External(), "x1": External()}, [(("x0", 0), ("x1", 0))]),
        ("x0", "x1"),
    )
    assert is_symmetric(derived_type(bare)) == i_in_j(1, 2)


def test_derived_type_single_vertex_identity():
    rel = Relation.from_strings(["110", "011", "000"])
    verts = {"c": General(rel), "x0": External(), "x1": External(), "x2": External()}
    edges = [(("x0", 0), ("c", 0)), (("x1", 0), ("c", 1)), (("x2", 0), ("c", 2))]
    g = Gadget(Instance(verts, edges), ("x0", "x1", "x2"))
    assert derived_type(g) == rel


def test_derived_type_invariant_under_relabeling():
    g = two_one_in_three()
    inst2 = g.instance.relabeled({"a": "z9", "b": "q"})
    g2 = Gadget(inst2, g.externals)
    assert derived_type(g2) == derived_type(g)


def test_simulates_requires_exact_port_order():
    g = two_one_in_three()
    assert simulates(g, expand_symmetric(i_in_j(1, 4)))
    assert not simulates(g, expand(Equalizer(4)))


def test_equalizer_from_gap_examples():
    assert derived_type(equalizer_from_gap(sym(3, [0, 3]), 0, 3)) == expand(Equalizer(3))
    assert derived_type(equalizer_from_gap(sym(5, [0, 1, 4]), 1, 3)) == expand(
        Equalizer(3)
    )
    assert derived_type(equalizer_from_gap(sym(2, [0, 2]), 0, 2)) == expand(Equalizer(2))
    with pytest.raises(ValueError):
        equalizer_from_gap(sym(5, [0, 1, 4]), 0, 3)


def test_synchronizer_from_cases():
    for dup in (
        expand(Equalizer(3)),
        expand(Equalizer(5)),
        Relation.from_strings(["110", "001"]),
        Relation.from_strings(["11010", "00101"]),
        Relation.from_strings(["1110", "0001"]),
        Relation.from_strings(["110100", "001011"]),
    ):
        g = synchronizer_from(dup)
        assert derived_type(g) == SYNCHRONIZER_RELATION
    with pytest.raises(ValueError):
        synchronizer_from(expand(Alternator(4)))
    with pytest.raises(ValueError):
        synchronizer_from(expand_symmetric(i_in_j(1, 2)))


def test_can_simulate_netflow():
    eqs = DuplicatorSet((expand(Equalizer(2)), expand(Equalizer(3))))
    assert can_simulate_netflow(eqs, 1)
    alt_only = DuplicatorSet((expand(Alternator(4)),))
    assert not can_simulate_netflow(alt_only, 0)
    trivial = DuplicatorSet((expand_symmetric(i_in_j(1, 2)),))
    assert not can_simulate_netflow(trivial, 3)
    assert can_simulate_netflow(trivial, 0)
    syncs = DuplicatorSet((SYNCHRONIZER_RELATION,))
    assert can_simulate_netflow(syncs, 0)
    assert not can_simulate_netflow(syncs, 1)
    mixed = DuplicatorSet((expand(Equalizer(4)), expand(Equalizer(6))))
    assert can_simulate_netflow(mixed, 2)
    assert not can_simulate_netflow(mixed, 3)


def test_substitute_identity():
    host = Instance(
        {0: Symmetric(i_in_j(1, 2)), 1: Symmetric(i_in_j(1, 2)), 2: Symmetric(i_in_j(1, 2))},
        [((0, 0), (1, 1)), ((1, 0), (2, 1)), ((2, 0), (0, 1))],
    )
    single = Gadget(
        Instance(
            {"c": Symmetric(i_in_j(1, 2)), "x0": External(), "x1": External()},
            [(("x0", 0), ("c", 0)), (("x1", 0), ("c", 1))],
        ),
        ("x0", "x1"),
    )
    out = substitute(host, 1, single)
    assert len(out.edges) == 3
    assert (find_orientation(out) is None) == (find_orientation(host) is None)


def test_substitute_path_of_one_in_two():
    host = Instance(
        {0: Symmetric(i_in_j(1, 2)), 1: Symmetric(i_in_j(1, 2)), 2: Symmetric(i_in_j(1, 2))},
        [((0, 0), (1, 1)), ((1, 0), (2, 1)), ((2, 0), (0, 1))],
    )
    path = Gadget(
        Instance(
            {
                "p": Symmetric(i_in_j(1, 2)),
                "q": Symmetric(i_in_j(1, 2)),
                "x0": External(),
                "x1": External(),
            },
            [(("x0", 0), ("p", 0)), (("p", 1), ("q", 0)), (("q", 1), ("x1", 0))],
        ),
        ("x0", "x1"),
    )
    out = substitute(host, 0, path)
    assert find_orientation(out) is not None


def test_substitute_preserves_satisfiability_randomly():
    rng = random.Random(99)
    gadget = two_one_in_three()
    menu = [
        Symmetric(i_in_j(1, 4)),
        Symmetric(i_in_j(1, 2)),
        Symmetric(sym(1, [0, 1])),
        Symmetric(sym(2, [0, 2])),
    ]
    tried = 0
    while tried < 60:
        host = random_instance(rng, menu, max_v=4, max_e=8)
        target = next(
            (v for v, k in host.vertices.items() if k == Symmetric(i_in_j(1, 4))), None
        )
        if target is None:
            continue
        tried += 1
        out = substitute(host, target, gadget)
        assert (find_orientation(out) is None) == (find_orientation(host) is None)


def test_substitute_arity_mismatch():
    host = Instance(
        {0: Symmetric(i_in_j(1, 2)), 1: Symmetric(i_in_j(1, 2))},
        [((0, 0), (1, 1)), ((1, 0), (0, 1))],
    )
    with pytest.raises(ValueError):
        substitute(host, 0, two_one_in_three())
