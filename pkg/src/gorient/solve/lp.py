"""Planar solver for i-in-j plus alternator vertices: exact LP + rounding.

Feasibility of the edge-variable linear program decides satisfiability;
a feasible rational point is rounded to +-1 values by repeatedly moving
along a direction derived from a dual face potential, and the leftover
zero-valued subgraph is oriented by two-coloring its dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..instances import (
    Instance,
    Orientation,
    euler_check,
    face_of_dart,
    faces,
    validate,
)
from ..relations import Alternator, Constant, Symmetric, SymmetricSpec
from .simplex import feasible_point

ZERO = Fraction(0)
ONE = Fraction(1)


def _sum_target(kind) -> Optional[int]:
    """(j - i) - i for an exact-in-degree vertex, None for alternators."""
    match kind:
        case Symmetric(spec):
            if len(spec.in_set) != 1:
                raise ValueError(f"not a single-valued symmetric type: {spec!r}")
            (i,) = spec.in_set
            return spec.arity - 2 * i
        case Constant(direction):
            return -1 if direction == "in" else 1
        case Alternator(_):
            return None
    raise ValueError(f"unsupported vertex kind for the LP solver: {kind!r}")


@dataclass
class LpSystem:
    """Edge variables in [-1,1] with vertex-sum and alternation rows."""

    inst: Instance
    rows: list[dict[int, int]] = field(default_factory=list)
    rhs: list[int] = field(default_factory=list)
    solution: Optional[list[Fraction]] = None

    def edge_coeff(self, vid, port) -> tuple[int, int]:
        """(edge, sign) so that x at this port equals sign * x_edge."""
        e, side = self.inst.endpoint_at(vid, port)
        # x_e = +1 means the edge leaves endpoint A; at A the port value is
        # +x_e (outgoing counts +1 there), at B it is -x_e
        return e, (1 if side == 0 else -1)

    def check(self, x: list[Fraction]) -> bool:
        return all(
            sum((Fraction(c) * x[e] for e, c in row.items()), ZERO) == b
            for row, b in zip(self.rows, self.rhs)
        ) and all(-ONE <= v <= ONE for v in x)


def build_system(inst: Instance) -> LpSystem:
    sys = LpSystem(inst)
    for v, kind in inst.vertices.items():
        target = _sum_target(kind)
        if target is not None:
            row: dict[int, int] = {}
            for p in range(inst.arity(v)):
                e, sign = sys.edge_coeff(v, p)
                row[e] = row.get(e, 0) + sign
            sys.rows.append({e: c for e, c in row.items() if c})
            sys.rhs.append(target)
        else:
            order = inst.rotation[v] if inst.rotation else tuple(range(inst.arity(v)))
            e0, s0 = sys.edge_coeff(v, order[0])
            for t, p in enumerate(order[1:], start=1):
                e, s = sys.edge_coeff(v, p)
                # x(port t) = (-1)^t x(port 0); ports read outgoing as +1,
                # so alternation means consecutive ports negate
                row = {e0: s0}
                sign = -1 if t % 2 else 1
                row[e] = row.get(e, 0) - sign * s
                sys.rows.append({e: c for e, c in row.items() if c})
                sys.rhs.append(0)
    keep = [(r, b) for r, b in zip(sys.rows, sys.rhs) if r or b]
    sys.rows = [r for r, _ in keep]
    sys.rhs = [b for _, b in keep]
    return sys


def _propagate_bounds(
    sys: LpSystem, lower: list[Fraction], upper: list[Fraction]
) -> bool:
    """Interval-tighten bounds under the equality rows; False if infeasible."""
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > 4 * (len(sys.rows) + len(lower)) + 8:
            break
        for row, b in zip(sys.rows, sys.rhs):
            lo_sum = ZERO
            hi_sum = ZERO
            for e, c in row.items():
                if c > 0:
                    lo_sum += c * lower[e]
                    hi_sum += c * upper[e]
                else:
                    lo_sum += c * upper[e]
                    hi_sum += c * lower[e]
            if lo_sum > b or hi_sum < b:
                return False
            for e, c in row.items():
                if c > 0:
                    others_hi = hi_sum - c * upper[e]
                    others_lo = lo_sum - c * lower[e]
                    new_lo = (b - others_hi) / c
                    new_hi = (b - others_lo) / c
                else:
                    others_hi = hi_sum - c * lower[e]
                    others_lo = lo_sum - c * upper[e]
                    new_lo = (b - others_lo) / c
                    new_hi = (b - others_hi) / c
                if new_lo > lower[e]:
                    lower[e] = new_lo
                    changed = True
                if new_hi < upper[e]:
                    upper[e] = new_hi
                    changed = True
                if lower[e] > upper[e]:
                    return False
    return True


class _SignedUnion:
    """Union-find tracking x_e = sign * x_root."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.sign = [1] * n

    def find(self, e: int) -> tuple[int, int]:
        if self.parent[e] == e:
            return e, 1
        root, s = self.find(self.parent[e])
        self.sign[e] *= s
        self.parent[e] = root
        return root, self.sign[e]

    def union(self, a: int, b: int, rel: int) -> Optional[int]:
        """Impose x_a = rel * x_b; returns a variable forced to 0, if any."""
        ra, sa = self.find(a)
        rb, sb = self.find(b)
        # x_a = sa x_ra, x_b = sb x_rb; want sa x_ra = rel sb x_rb
        if ra == rb:
            if sa != rel * sb:
                return ra
            return None
        self.parent[ra] = rb
        self.sign[ra] = rel * sb * sa  # so that sa * sign[ra] = rel * sb
        return None


def lp_feasible(sys: LpSystem) -> Optional[list[Fraction]]:
    n = len(sys.inst.edges)
    uf = _SignedUnion(n)
    pinned: dict[int, Fraction] = {}
    kept: list[tuple[dict[int, int], Fraction]] = []
    for row, b in zip(sys.rows, sys.rhs):
        items = list(row.items())
        if len(items) == 1:
            e, c = items[0]
            want = Fraction(b, c)
            if pinned.setdefault(e, want) != want:
                return None
        elif len(items) == 2 and b == 0 and all(abs(c) == 1 for _, c in items):
            (e1, c1), (e2, c2) = items
            zeroed = uf.union(e1, e2, -c1 * c2)
            if zeroed is not None:
                pinned[zeroed] = ZERO
        else:
            kept.append((row, Fraction(b)))

    pin_root: dict[int, Fraction] = {}
    for e, val in pinned.items():
        r, s = uf.find(e)
        want = val * s  # x_e = s * x_r  =>  x_r = val * s (s in {1,-1})
        if pin_root.setdefault(r, want) != want:
            return None
    for r, val in pin_root.items():
        if not -ONE <= val <= ONE:
            return None

    rows2: list[dict[int, int]] = []
    rhs2: list[Fraction] = []
    for row, b in kept:
        acc: dict[int, int] = {}
        for e, c in row.items():
            r, s = uf.find(e)
            if r in pin_root:
                b -= c * s * pin_root[r]
            else:
                acc[r] = acc.get(r, 0) + c * s
        acc = {r: c for r, c in acc.items() if c}
        if not acc:
            if b != 0:
                return None
            continue
        rows2.append(acc)
        rhs2.append(b)

    roots = sorted({uf.find(e)[0] for e in range(n)} - set(pin_root))
    index = {r: i for i, r in enumerate(roots)}
    lower = [-ONE] * len(roots)
    upper = [ONE] * len(roots)
    shadow = LpSystem(sys.inst)
    shadow.rows = [{index[r]: c for r, c in row.items()} for row in rows2]
    shadow.rhs = rhs2
    if not _propagate_bounds(shadow, lower, upper):
        return None
    vals: list[Optional[Fraction]] = [
        lower[i] if lower[i] == upper[i] else None for i in range(len(roots))
    ]
    free = [i for i in range(len(roots)) if vals[i] is None]
    if free:
        comp = {i: i for i in free}

        def find(a):
            while comp[a] != a:
                comp[a] = comp[comp[a]]
                a = comp[a]
            return a

        res_rows = []
        res_rhs = []
        for row, b in zip(shadow.rows, shadow.rhs):
            r = {i: c for i, c in row.items() if vals[i] is None}
            if not r:
                continue
            b2 = b - sum(c * vals[i] for i, c in row.items() if vals[i] is not None)
            res_rows.append(r)
            res_rhs.append(b2)
            es = list(r)
            for e2 in es[1:]:
                comp[find(es[0])] = find(e2)
        groups: dict[int, list[int]] = {}
        for i in free:
            groups.setdefault(find(i), []).append(i)
        for root, members in groups.items():
            sel_rows = []
            sel_rhs = []
            for r, b2 in zip(res_rows, res_rhs):
                if find(next(iter(r))) == root:
                    sel_rows.append(r)
                    sel_rhs.append(b2)
            point = _component_feasible(members, sel_rows, sel_rhs, lower, upper)
            if point is None:
                return None
            for i, val in zip(members, point):
                vals[i] = val

    out = []
    for e in range(n):
        r, s = uf.find(e)
        base = pin_root[r] if r in pin_root else vals[index[r]]
        out.append(s * base)
    if not sys.check(out):
        raise AssertionError("LP point violates the system")
    return out


def _component_feasible(members, rows, rhs, lower, upper):
    """Feasible point for one residual component.

    Vertex-sum systems are node-arc incidence matrices, so when every
    coefficient is a lone +-1 pair the component is solved by one exact
    max-flow; alternator-coupled residuals fall back to the rational
    simplex.
    """
    from .flow import node_arc_feasible

    occurrences: dict[int, list[tuple[int, int]]] = {e: [] for e in members}
    flow_ok = all(b == int(b) for b in rhs)
    for i, row in enumerate(rows):
        for e, c in row.items():
            if c not in (1, -1):
                flow_ok = False
            occurrences[e].append((i, c))
    if flow_ok:
        for e in members:
            occ = occurrences[e]
            if len(occ) > 2 or (len(occ) == 2 and occ[0][1] == occ[1][1]):
                flow_ok = False
                break
            if lower[e].denominator != 1 or upper[e].denominator != 1:
                flow_ok = False
                break
    if flow_ok:
        arcs = []
        for e in members:
            occ = occurrences[e]
            tail = next((i for i, c in occ if c == 1), None)
            head = next((i for i, c in occ if c == -1), None)
            arcs.append((tail, head, int(lower[e]), int(upper[e])))
        demand = {i: int(b) for i, b in enumerate(rhs)}
        point = node_arc_feasible(arcs, demand, len(rows))
        if point is None:
            return None
        return [Fraction(v) for v in point]
    dense = [[Fraction(r.get(e, 0)) for e in members] for r in rows]
    return feasible_point(
        dense,
        [Fraction(b) for b in rhs],
        [lower[e] for e in members],
        [upper[e] for e in members],
    )


@dataclass
class FacePotential:
    """Rational face potentials mod 1 with the derived step direction."""

    pi: dict[int, Fraction]
    y: list[int]
    epsilon: Fraction


def _face_potentials(inst: Instance, x: list[Fraction]) -> dict[int, Fraction]:
    fod = face_of_dart(inst)
    n_faces = 1 + max(fod.values())
    pi: dict[int, Fraction] = {}
    adj: dict[int, list[tuple[int, int]]] = {f: [] for f in range(n_faces)}
    for e in range(len(inst.edges)):
        left = fod[(e, 0)]
        right = fod[(e, 1)]
        adj[left].append((right, e))
        adj[right].append((left, -e - 1))
    for root in range(n_faces):
        if root in pi:
            continue
        pi[root] = ZERO
        stack = [root]
        while stack:
            f = stack.pop()
            for g, tag in adj[f]:
                e = tag if tag >= 0 else -tag - 1
                delta = x[e] if tag >= 0 else -x[e]
                val = (pi[f] + delta) % 1
                if g not in pi:
                    pi[g] = val
                    stack.append(g)
                elif pi[g] != val:
                    raise AssertionError("dual cycle sums violate the mod-1 condition")
    return pi


def two_color_orient(inst: Instance) -> Orientation:
    """Orient a planar all-even-degree instance by two-coloring its dual."""
    for v, kind in inst.vertices.items():
        if inst.arity(v) % 2:
            raise ValueError(f"vertex {v!r} has odd degree")
    fod = face_of_dart(inst)
    color: dict[int, int] = {}
    n_faces = 1 + max(fod.values()) if fod else 0
    adj: dict[int, set[int]] = {f: set() for f in range(n_faces)}
    for e in range(len(inst.edges)):
        a, b = fod[(e, 0)], fod[(e, 1)]
        adj[a].add(b)
        adj[b].add(a)
    for root in range(n_faces):
        if root in color:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if g not in color:
                    color[g] = 1 - color[f]
                    stack.append(g)
                elif color[g] == color[f]:
                    raise ValueError("dual graph is not bipartite")
    return tuple(
        1 if color[fod[(e, 0)]] == 0 else 0 for e in range(len(inst.edges))
    )


def _subinstance_on_edges(inst: Instance, keep: list[int]):
    """Induced instance on an edge subset, with renumbered ports/rotation."""
    keep_set = set(keep)
    port_map: dict = {}
    vertices = {}
    rotation = {} if inst.rotation is not None else None
    for v, kind in inst.vertices.items():
        ports = [
            p
            for p in range(inst.arity(v))
            if inst.endpoint_at(v, p)[0] in keep_set
        ]
        if not ports:
            continue
        order = inst.rotation[v] if inst.rotation is not None else range(inst.arity(v))
        kept_in_order = [p for p in order if p in ports]
        for new, old in enumerate(sorted(ports)):
            port_map[(v, old)] = new
        z = len(ports)
        if z % 2:
            raise AssertionError("zero subgraph vertex has odd degree")
        match kind:
            case Alternator(degree):
                if z != degree:
                    raise AssertionError("alternator partially inside zero subgraph")
                new_kind = Alternator(z)
            case Symmetric(_):
                new_kind = Symmetric(SymmetricSpec(z, frozenset([z // 2])))
            case _:
                raise AssertionError("unexpected kind in zero subgraph")
        vertices[v] = new_kind
        if rotation is not None:
            rotation[v] = tuple(port_map[(v, p)] for p in kept_in_order)
    edges = []
    edge_ids = []
    for e in keep:
        (u, pu), (v, pv) = inst.edges[e]
        edges.append(((u, port_map[(u, pu)]), (v, port_map[(v, pv)])))
        edge_ids.append(e)
    return Instance(vertices, tuple(edges), rotation), edge_ids


def solve_planar_alternator_lp(
    inst: Instance, stats: Optional[dict] = None
) -> Optional[Orientation]:
    """Exact LP feasibility, then potential-guided rounding to an orientation."""
    if inst.rotation is None:
        raise ValueError("the LP solver needs a rotation system")
    if not euler_check(inst):
        raise ValueError("rotation system is not a planar embedding")
    sys = build_system(inst)
    x = lp_feasible(sys)
    if x is None:
        return None
    sys.solution = list(x)
    return round_to_orientation(inst, sys, x, stats)


def round_to_orientation(
    inst: Instance, sys: LpSystem, x: list[Fraction], stats: Optional[dict] = None
) -> Orientation:
    """Round a feasible rational point to a satisfying orientation."""
    iterations = 0
    while True:
        nonint = [e for e in range(len(x)) if x[e].denominator != 1]
        slack_before = sum(1 for v in x if -ONE < v < ONE)
        if not nonint:
            break
        iterations += 1
        if iterations > len(inst.edges):
            raise AssertionError("rounding exceeded the edge-count bound")
        pi = _face_potentials(inst, x)
        fod = face_of_dart(inst)
        # pick the reference value from a face bordering a fractional edge
        pi0 = pi[fod[(nonint[0], 0)]]
        y = [0] * len(x)
        for e in range(len(x)):
            left, right = fod[(e, 0)], fod[(e, 1)]
            y[e] = int(pi[right] == pi0) - int(pi[left] == pi0)
        eps = None
        for e in range(len(x)):
            if y[e] == 0:
                continue
            step = (ONE - x[e]) if y[e] > 0 else (x[e] + ONE)
            if eps is None or step < eps:
                eps = step
        if eps is None or eps <= 0:
            raise AssertionError("no direction to round along")
        x = [x[e] + eps * y[e] for e in range(len(x))]
        if not sys.check(x):
            raise AssertionError("rounding step violated the system")
        slack_after = sum(1 for v in x if -ONE < v < ONE)
        if slack_after >= slack_before:
            raise AssertionError("slack count failed to decrease")
    if stats is not None:
        stats["iterations"] = iterations
    orient: list[Optional[int]] = [None] * len(x)
    zero_edges = [e for e in range(len(x)) if x[e] == 0]
    for e in range(len(x)):
        if x[e] == ONE:
            orient[e] = 1
        elif x[e] == -ONE:
            orient[e] = 0
    if zero_edges:
        sub, ids = _subinstance_on_edges(inst, zero_edges)
        sub_orient = two_color_orient(sub)
        for e, d in zip(ids, sub_orient):
            orient[e] = d
    result = tuple(orient)  # type: ignore[arg-type]
    bad = validate(inst, result)
    if bad:
        raise AssertionError(f"LP rounding produced an invalid orientation at {bad}")
    return result
