"""Shared random-instance generators for the test suite."""

from __future__ import annotations

import random

import networkx as nx

from gorient.instances import Instance, euler_check
from gorient.relations import (
    Alternator,
    Symmetric,
    VertexKind,
    kind_arity,
    sym,
)


def random_instance(
    rng: random.Random, menu: list[VertexKind], max_v: int = 5, max_e: int = 10
) -> Instance:
    """Random multigraph (loops allowed) with kinds drawn from the menu."""
    for _ in range(400):
        nv = rng.randint(1, max_v)
        kinds = {i: rng.choice(menu) for i in range(nv)}
        stubs = [(v, p) for v in kinds for p in range(kind_arity(kinds[v]))]
        if len(stubs) % 2:
            continue
        rng.shuffle(stubs)
        edges = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        if len(edges) > max_e:
            continue
        return Instance(kinds, edges)
    raise RuntimeError("generator failed to produce an instance")


def random_planar_instance(
    rng: random.Random,
    kind_for_degree,
    max_n: int = 7,
    max_e: int = 12,
    p: float = 0.5,
):
    """Random simple planar instance with an embedding-derived rotation.

    kind_for_degree(rng, degree) supplies the vertex kind.
    """
    for _ in range(80):
        n = rng.randint(2, max_n)
        G = nx.gnp_random_graph(n, p, seed=rng.randint(0, 10**9))
        if G.number_of_edges() == 0 or G.number_of_edges() > max_e:
            continue
        if any(d == 0 for _, d in G.degree):
            continue
        ok, emb = nx.check_planarity(G)
        if not ok:
            continue
        kinds = {}
        rot = {}
        portmap = {}
        for v in G.nodes:
            nbrs = list(emb.neighbors_cw_order(v))
            for i, w in enumerate(nbrs):
                portmap[(v, w)] = i
            rot[v] = tuple(range(len(nbrs)))
            kinds[v] = kind_for_degree(rng, len(nbrs))
        edges = [((u, portmap[(u, v)]), (v, portmap[(v, u)])) for u, v in G.edges]
        inst = Instance(kinds, edges, rot)
        if not euler_check(inst):
            continue
        return inst
    return None


def lp_kind(rng: random.Random, degree: int) -> VertexKind:
    choices: list[VertexKind] = [Symmetric(sym(degree, [rng.randint(0, degree)]))]
    if degree % 2 == 0:
        choices += [Alternator(degree), Symmetric(sym(degree, [degree // 2]))]
    return rng.choice(choices)
