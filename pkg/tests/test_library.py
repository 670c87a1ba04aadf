"""Shipped gadget constructions verify against their declared targets."""

from __future__ import annotations

import pytest

from gorient.gadgets import Gadget, derived_type
from gorient.instances import Instance
from gorient.library import (
    chain_duplicators,
    cross_paths_through_synchronizer,
    load_gadget,
    shipped_constructions,
    verify_construction,
)
from gorient.relations import Equalizer, duplicator_info, expand


@pytest.mark.parametrize(
    "construction", shipped_constructions(), ids=lambda c: c.name
)
def test_shipped_construction(construction):
    ok, msg = verify_construction(construction)
    assert ok, msg


def test_corrupted_gadget_detected():
    g = load_gadget("crossover_from_2in4_sync.gad")
    # drop one synchronizer edge and rewire it to a fresh free stub
    inst = g.instance
    edges = list(inst.edges)
    (u, p), (v, q) = edges[10]
    from gorient.relations import External, Symmetric, sym

    verts = dict(inst.vertices)
    verts["spare"] = Symmetric(sym(1, [0, 1]))
    verts["spare2"] = Symmetric(sym(1, [0, 1]))
    edges[10] = ((u, p), ("spare", 0))
    edges.append((("spare2", 0), (v, q)))
    broken = Gadget(Instance(verts, edges), g.externals)
    from gorient.relations import CROSSOVER_RELATION

    assert derived_type(broken) != CROSSOVER_RELATION


EQ = lambda k: expand(Equalizer(k))


@pytest.mark.parametrize(
    "parts,flow",
    [
        ([(EQ(3), 1)], 3),
        ([(EQ(3), 1), (EQ(3), -1)], 0),
        ([(EQ(3), 1), (EQ(2), -1)], 1),
        ([(EQ(4), 1), (EQ(3), -1)], 1),
        ([(EQ(4), 1), (EQ(2), -1)], 2),
        ([(EQ(3), 1), (EQ(4), -1), (EQ(4), 1)], 3),
        ([(EQ(4), 1), (EQ(4), -1), (EQ(4), 1)], 4),
        ([(EQ(2), 1), (EQ(2), 1)], 4),
    ],
)
def test_duplicator_chains_have_predicted_net_flow(parts, flow):
    g = chain_duplicators(parts)
    info = duplicator_info(derived_type(g))
    assert info is not None
    assert info.net_flow == abs(flow)


def test_crossing_paths_preserves_duplicator():
    g = chain_duplicators([(EQ(4), 1), (EQ(4), -1), (EQ(3), 1)])
    before = duplicator_info(derived_type(g))
    crossed = cross_paths_through_synchronizer(g, 0, 1)
    after = duplicator_info(derived_type(crossed))
    assert after is not None
    assert after.net_flow == before.net_flow
