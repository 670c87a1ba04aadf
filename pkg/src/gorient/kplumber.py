"""Curveless pipe-rotation puzzles as planar graph orientation.

Cells become vertices (checkerboard-colored so edge directions encode
whether pipes meet), straight tiles become alternators, and the boundary
is conditioned away; the resulting i-in-j plus alternator instance is
solved by the exact LP solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .instances import Instance, Orientation, validate
from .relations import (
    Alternator,
    General,
    Relation,
    Symmetric,
    SymmetricSpec,
    alternator_relation,
    expand,
)
from .search import find_orientation
from .solve.lp import solve_planar_alternator_lp

TILES = "0DSCTX"
PIPE_COUNT = {"0": 0, "D": 1, "S": 2, "C": 2, "T": 3, "X": 4}
SIDES = "NESW"
GLYPHS = {
    frozenset(): "·",
    frozenset("N"): "╵",
    frozenset("E"): "╶",
    frozenset("S"): "╷",
    frozenset("W"): "╴",
    frozenset("NS"): "│",
    frozenset("EW"): "─",
    frozenset("NE"): "└",
    frozenset("NW"): "┘",
    frozenset("SE"): "┌",
    frozenset("SW"): "┐",
    frozenset("NES"): "├",
    frozenset("NSW"): "┤",
    frozenset("NEW"): "┴",
    frozenset("ESW"): "┬",
    frozenset("NESW"): "┼",
}
GLYPH_TO_SET = {g: s for s, g in GLYPHS.items()}


class PolyFragmentViolation(ValueError):
    """Raised for grids containing the curve tile in polynomial mode."""


@dataclass(frozen=True)
class TileGrid:
    rows: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows or not self.rows[0]:
            raise ValueError("grid must be non-empty")
        width = len(self.rows[0])
        for r, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {r} has length {len(row)}, expected {width}")
            for ch in row:
                if ch not in TILES:
                    raise ValueError(f"bad tile {ch!r} in row {r}")

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return len(self.rows[0])

    def tile(self, r: int, c: int) -> str:
        return self.rows[r][c]


def parse_grid(text: str) -> TileGrid:
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    return TileGrid(tuple(rows))


@dataclass(frozen=True)
class RotatedGrid:
    """Per-cell pipe-end sets, a solved rotation of a tile grid."""

    cells: tuple[tuple[frozenset, ...], ...]

    def pipe_set(self, r: int, c: int) -> frozenset:
        return self.cells[r][c]


def _rotations(tile: str) -> list[frozenset]:
    base = {
        "0": [""],
        "D": ["N", "E", "S", "W"],
        "S": ["NS", "EW"],
        "C": ["NE", "ES", "SW", "WN"],
        "T": ["NES", "ESW", "SWN", "WNE"],
        "X": ["NESW"],
    }[tile]
    return [frozenset(s) for s in base]


def check_rotated(g: TileGrid, rg: RotatedGrid) -> list[str]:
    """Violations: wrong rotation, unmatched interior edge, boundary pipe."""
    bad = []
    for r in range(g.height):
        for c in range(g.width):
            s = rg.pipe_set(r, c)
            if s not in _rotations(g.tile(r, c)):
                bad.append(f"cell ({r},{c}) is not a rotation of {g.tile(r, c)}")
    for r in range(g.height):
        for c in range(g.width):
            s = rg.pipe_set(r, c)
            if "E" in s:
                if c + 1 >= g.width:
                    bad.append(f"pipe leaves the boundary at ({r},{c}) east")
                elif "W" not in rg.pipe_set(r, c + 1):
                    bad.append(f"unmatched pipe between ({r},{c}) and ({r},{c + 1})")
            elif c + 1 < g.width and "W" in rg.pipe_set(r, c + 1):
                bad.append(f"unmatched pipe between ({r},{c}) and ({r},{c + 1})")
            if "S" in s:
                if r + 1 >= g.height:
                    bad.append(f"pipe leaves the boundary at ({r},{c}) south")
                elif "N" not in rg.pipe_set(r + 1, c):
                    bad.append(f"unmatched pipe between ({r},{c}) and ({r + 1},{c})")
            elif r + 1 < g.height and "N" in rg.pipe_set(r + 1, c):
                bad.append(f"unmatched pipe between ({r},{c}) and ({r + 1},{c})")
            if "N" in s and r == 0:
                bad.append(f"pipe leaves the boundary at ({r},{c}) north")
            if "W" in s and c == 0:
                bad.append(f"pipe leaves the boundary at ({r},{c}) west")
    return bad


@dataclass
class Translation:
    instance: Instance
    # (r, c) -> list of (side, edge index or None, forced pipe bool or None);
    # conditioned-away cells keep only forced entries
    cell_sides: dict
    white: dict


def _is_white(r: int, c: int) -> bool:
    return (r + c) % 2 == 0


def to_instance(g: TileGrid) -> Translation:
    """Translate a curveless grid, conditioning the boundary away.

    White cells keep i-in-4, black cells flip to (4-i)-in-4, straight tiles
    become alternators, and forced boundary values propagate until every
    remaining vertex is an exact-in-degree type or a full alternator.
    """
    if any("C" in row for row in g.rows):
        raise PolyFragmentViolation(
            "grids with the curve tile fall in the NP-complete fragment; "
            "rerun with brute force enabled"
        )
    # edge per adjacent cell pair; variable true = pipes meet on that side
    edge_id: dict = {}
    edges = []
    for r in range(g.height):
        for c in range(g.width):
            if c + 1 < g.width:
                edge_id[(r, c, "E")] = len(edges)
                edge_id[(r, c + 1, "W")] = len(edges)
                edges.append(((r, c), (r, c + 1)))
            if r + 1 < g.height:
                edge_id[(r, c, "S")] = len(edges)
                edge_id[(r + 1, c, "N")] = len(edges)
                edges.append(((r, c), (r + 1, c)))

    white = {(r, c): _is_white(r, c) for r in range(g.height) for c in range(g.width)}

    # relation per cell over its four sides in N,E,S,W order; bit set means
    # the edge points into the cell
    def initial_relation(r: int, c: int) -> Relation:
        tile = g.tile(r, c)
        if tile == "S":
            rel = alternator_relation(4)
        else:
            i = PIPE_COUNT[tile]
            if not white[(r, c)]:
                i = 4 - i
            rel = expand(Symmetric(SymmetricSpec(4, frozenset([i]))))
        return rel

    # pipe present on a side <-> edge directed black -> white, i.e. INTO the
    # white cell; for cell (r,c): in-bit means pipe iff white else no-pipe
    def pipe_bit(r: int, c: int, inward: int) -> bool:
        return bool(inward) if white[(r, c)] else not inward

    relations = {
        (r, c): initial_relation(r, c) for r in range(g.height) for c in range(g.width)
    }
    # condition boundary sides: no pipe outside
    forced_val: dict[int, int] = {}  # edge -> direction (1 = into white cell?)
    forced_sides: dict = {}
    pending: list[tuple] = []
    for r in range(g.height):
        for c in range(g.width):
            for side in SIDES:
                if (r, c, side) not in edge_id:
                    # boundary: no pipe; inward bit must equal the no-pipe value
                    want = 0 if white[(r, c)] else 1
                    pending.append(((r, c), side, want))
                    forced_sides[(r, c, side)] = False

    side_index = {(r, c): {s: i for i, s in enumerate(SIDES)} for r, c in relations}
    live_sides = {(r, c): list(SIDES) for r, c in relations}

    def condition_cell(cell, side, bit) -> bool:
        rel = relations[cell]
        sides = live_sides[cell]
        if side not in sides:
            raise AssertionError("conditioning a dead side")
        idx = sides.index(side)
        keep = frozenset(
            _drop(w, idx) for w in rel.allowed if (w >> idx) & 1 == bit
        )
        relations[cell] = Relation(rel.arity - 1, keep)
        sides.pop(idx)
        return True

    def _drop(word: int, pos: int) -> int:
        low = word & ((1 << pos) - 1)
        return low | ((word >> (pos + 1)) << pos)

    def _neighbor(cell, side):
        r, c = cell
        return {
            "N": (r - 1, c),
            "S": (r + 1, c),
            "E": (r, c + 1),
            "W": (r, c - 1),
        }[side]

    def _edge_dir(cell, other, inward_bit):
        # instance edges are ordered (west/north cell, east/south cell); the
        # direction bit is 1 when the edge points into the second endpoint
        a, b = (cell, other) if cell < other else (other, cell)
        into_cell = bool(inward_bit)
        points_into = cell if into_cell else other
        return 1 if points_into == b else 0

    # phase 1: condition every boundary side
    for cell, side, bit in pending:
        if side in live_sides[cell]:
            condition_cell(cell, side, bit)
    # phase 2: propagate forced interior sides between cells
    work = list(relations)
    while work:
        cell = work.pop()
        sides = live_sides[cell]
        changed = True
        while changed and sides:
            changed = False
            rel = relations[cell]
            if rel.is_empty:
                break
            for idx, side2 in enumerate(sides):
                vals = {(w >> idx) & 1 for w in rel.allowed}
                if len(vals) == 1:
                    bit2 = vals.pop()
                    key = (cell[0], cell[1], side2)
                    e = edge_id[key]
                    (r2, c2) = _neighbor(cell, side2)
                    d_new = _edge_dir(cell, (r2, c2), bit2)
                    condition_cell(cell, side2, bit2)
                    if forced_val.setdefault(e, d_new) != d_new:
                        # two cascades force the edge both ways
                        relations[cell] = Relation(relations[cell].arity, frozenset())
                        break
                    opp = {"N": "S", "S": "N", "E": "W", "W": "E"}[side2]
                    forced_sides[key] = pipe_bit(cell[0], cell[1], bit2)
                    forced_sides[(r2, c2, opp)] = forced_sides[key]
                    if opp in live_sides[(r2, c2)]:
                        idx2 = live_sides[(r2, c2)].index(opp)
                        condition_cell((r2, c2), opp, 1 - bit2)
                        work.append((r2, c2))
                    changed = True
                    break

    # assemble the residual instance
    vertices = {}
    rotation = {}
    ports: dict = {}
    for cell, rel in relations.items():
        sides = live_sides[cell]
        if not sides:
            if rel.is_empty:
                vertices[cell] = General(Relation(0, frozenset()))
                rotation[cell] = ()
            continue
        if rel.is_empty:
            vertices[cell] = General(Relation(len(sides), frozenset()))
            rotation[cell] = tuple(range(len(sides)))
            ports[cell] = {s: i for i, s in enumerate(sides)}
            continue
        from .relations import is_symmetric

        spec = is_symmetric(rel)
        if spec is not None and len(spec.in_set) == 1:
            vertices[cell] = Symmetric(spec)
        elif rel == alternator_relation(len(sides)):
            vertices[cell] = Alternator(len(sides))
        else:
            raise AssertionError(f"unexpected residual relation at {cell}: {rel!r}")
        rotation[cell] = tuple(range(len(sides)))
        ports[cell] = {s: i for i, s in enumerate(sides)}
    inst_edges = []
    emap = {}
    for e, (a, b) in enumerate(edges):
        if e in forced_val:
            continue
        sa = next(s for s in live_sides[a] if edge_id[(a[0], a[1], s)] == e)
        sb = next(s for s in live_sides[b] if edge_id[(b[0], b[1], s)] == e)
        emap[e] = len(inst_edges)
        inst_edges.append(((a, ports[a][sa]), (b, ports[b][sb])))
    inst = Instance(vertices, tuple(inst_edges), rotation)
    tr = Translation(inst, {}, white)
    tr.cell_sides = {
        "edge_id": edge_id,
        "edges": edges,
        "forced_val": forced_val,
        "forced_sides": forced_sides,
        "emap": emap,
        "live_sides": live_sides,
    }
    return tr


def rotated_from_orientation(
    g: TileGrid, tr: Translation, orientation: Optional[Orientation]
) -> RotatedGrid:
    data = tr.cell_sides
    cells = []
    for r in range(g.height):
        row = []
        for c in range(g.width):
            s = set()
            for side in SIDES:
                key = (r, c, side)
                if key in data["forced_sides"]:
                    if data["forced_sides"][key]:
                        s.add(side)
                    continue
                e = data["edge_id"][key]
                if e in data["forced_val"]:
                    d = data["forced_val"][e]
                else:
                    d = orientation[data["emap"][e]]
                a, b = data["edges"][e]
                receiver = b if d == 1 else a
                # pipes meet exactly when the edge points into the white cell
                if tr.white[receiver]:
                    s.add(side)
            row.append(frozenset(s))
        cells.append(tuple(row))
    return RotatedGrid(tuple(cells))


def solve_kplumber(
    g: TileGrid, allow_brute: bool = False, brute_cap: int = 16
) -> Optional[RotatedGrid]:
    """Rotate the tiles so all pipe ends pair up, or None."""
    if any("C" in row for row in g.rows):
        if not allow_brute:
            raise PolyFragmentViolation(
                "grids with the curve tile fall in the NP-complete fragment; "
                "rerun with brute force enabled"
            )
        if g.height * g.width > brute_cap:
            raise ValueError("grid too large for brute force")
        return brute_rotations(g)
    tr = to_instance(g)
    if any(
        tr.instance.vertex_relation(v).is_empty for v in tr.instance.vertices
    ):
        return None
    orientation: Optional[Orientation]
    if tr.instance.edges:
        orientation = solve_planar_alternator_lp(tr.instance)
        if orientation is None:
            return None
    else:
        orientation = ()
    rg = rotated_from_orientation(g, tr, orientation)
    bad = check_rotated(g, rg)
    if bad:
        raise AssertionError(f"translation produced an invalid rotation: {bad[:3]}")
    return rg


def brute_rotations(g: TileGrid) -> Optional[RotatedGrid]:
    """Exhaustive rotation search with row-profile pruning (the oracle)."""
    width = g.width
    options = [[_rotations(g.tile(r, c)) for c in range(width)] for r in range(g.height)]

    def fill(r: int, c: int, row: list, north: tuple):
        if c == width:
            yield tuple(row)
            return
        for s in options[r][c]:
            if ("N" in s) != ("S" in north[c]):
                continue
            if c == 0 and "W" in s:
                continue
            if c > 0 and (("W" in s) != ("E" in row[c - 1])):
                continue
            if c == width - 1 and "E" in s:
                continue
            if r == g.height - 1 and "S" in s:
                continue
            row.append(s)
            yield from fill(r, c + 1, row, north)
            row.pop()

    def rec(r: int, north: tuple, acc: list):
        if r == g.height:
            return list(acc)
        for row in fill(r, 0, [], north):
            acc.append(row)
            out = rec(r + 1, row, acc)
            if out is not None:
                return out
            acc.pop()
        return None

    blank = tuple(frozenset() for _ in range(width))
    rows = rec(0, blank, [])
    if rows is None:
        return None
    return RotatedGrid(tuple(rows))


def render(rg: RotatedGrid) -> str:
    return "\n".join(
        "".join(GLYPHS[s] for s in row) for row in rg.cells
    )


def parse_rendered(text: str) -> RotatedGrid:
    cells = []
    for line in text.splitlines():
        if not line:
            continue
        cells.append(tuple(GLYPH_TO_SET[ch] for ch in line))
    return RotatedGrid(tuple(cells))
