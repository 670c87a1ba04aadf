"""Polyomino tiling: greedy square/skew tilers, exact cover, port gadgets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .relations import Relation

Cell = tuple[int, int]


def normalize(cells: Iterable[Cell]) -> frozenset[Cell]:
    cells = frozenset(cells)
    if not cells:
        return cells
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return frozenset((r - r0, c - c0) for r, c in cells)


@dataclass(frozen=True)
class Region:
    cells: frozenset[Cell]

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset(self.cells))
        if any(r < 0 or c < 0 for r, c in self.cells):
            object.__setattr__(self, "cells", normalize(self.cells))

    def __len__(self):
        return len(self.cells)


def parse_region(text: str) -> Region:
    cells = set()
    r = 0
    for line in text.splitlines():
        if not line.strip(". \t"):
            if not line.strip():
                continue
        for c, ch in enumerate(line):
            if ch == "#":
                cells.add((r, c))
            elif ch not in ". \t":
                raise ValueError(f"bad region character {ch!r}")
        r += 1
    return Region(frozenset(cells))


def region_to_text(region: Region) -> str:
    if not region.cells:
        return ""
    h = 1 + max(r for r, _ in region.cells)
    w = 1 + max(c for _, c in region.cells)
    return "\n".join(
        "".join("#" if (r, c) in region.cells else "." for c in range(w))
        for r in range(h)
    )


SHAPES: dict[str, frozenset[Cell]] = {
    "tromino-I": normalize([(0, 0), (0, 1), (0, 2)]),
    "tromino-L": normalize([(0, 0), (1, 0), (1, 1)]),
    "I": normalize([(0, 0), (0, 1), (0, 2), (0, 3)]),
    "O": normalize([(0, 0), (0, 1), (1, 0), (1, 1)]),
    "T": normalize([(0, 0), (0, 1), (0, 2), (1, 1)]),
    "S": normalize([(0, 1), (0, 2), (1, 0), (1, 1)]),
    "Z": normalize([(0, 0), (0, 1), (1, 1), (1, 2)]),
    "L": normalize([(0, 0), (1, 0), (2, 0), (2, 1)]),
    "J": normalize([(0, 1), (1, 1), (2, 0), (2, 1)]),
}


def rotate(cells: frozenset[Cell]) -> frozenset[Cell]:
    return normalize((c, -r) for r, c in cells)


def rotations_of(cells: frozenset[Cell]) -> list[frozenset[Cell]]:
    out = []
    cur = normalize(cells)
    for _ in range(4):
        if cur not in out:
            out.append(cur)
        cur = rotate(cur)
    return out


@dataclass(frozen=True)
class TileSet:
    """Polyomino shapes; rotations are implied, reflections are not."""

    shapes: tuple[frozenset[Cell], ...]

    def __post_init__(self):
        shapes = tuple(normalize(s) for s in self.shapes)
        for s in shapes:
            if not s or not _connected(s):
                raise ValueError("shapes must be connected and non-empty")
        object.__setattr__(self, "shapes", shapes)

    @classmethod
    def named(cls, names: Iterable[str]) -> "TileSet":
        return cls(tuple(SHAPES[n] for n in names))

    def orientations(self) -> list[frozenset[Cell]]:
        out: list[frozenset[Cell]] = []
        for s in self.shapes:
            for r in rotations_of(s):
                if r not in out:
                    out.append(r)
        return out


def _connected(cells: frozenset[Cell]) -> bool:
    todo = [next(iter(cells))]
    seen = {todo[0]}
    while todo:
        r, c = todo.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return len(seen) == len(cells)


Placement = frozenset[Cell]
Tiling = list[Placement]


def check_tiling(region: Region, tiling: Tiling) -> bool:
    covered: set[Cell] = set()
    for piece in tiling:
        if piece & covered or not piece <= region.cells:
            return False
        covered |= piece
    return covered == region.cells


# ---------------------------------------------------------------------------
# greedy tilers


def tile_square_greedy(region: Region) -> Optional[Tiling]:
    """Row-major greedy for the 2x2 square tetromino; complete for it."""
    covered: set[Cell] = set()
    out: Tiling = []
    for cell in sorted(region.cells):
        if cell in covered:
            continue
        r, c = cell
        piece = frozenset([(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)])
        if not piece <= region.cells or piece & covered:
            return None
        covered |= piece
        out.append(piece)
    return out


def tile_skew_greedy(region: Region, mirror: bool = False) -> Optional[Tiling]:
    """Row-major greedy for the S (skew) tetromino; mirror runs the Z case.

    At the first uncovered cell there is at most one placement that does not
    immediately strand a cell: vertical when the right neighbor is already
    covered or absent, horizontal otherwise.
    """
    if mirror:
        if not region.cells:
            return []
        w = max(c for _, c in region.cells)
        flipped = Region(frozenset((r, w - c) for r, c in region.cells))
        tiling = tile_skew_greedy(flipped, False)
        if tiling is None:
            return None
        return [frozenset((r, w - c) for r, c in piece) for piece in tiling]
    covered: set[Cell] = set()
    out: Tiling = []
    for cell in sorted(region.cells):
        if cell in covered:
            continue
        r, c = cell
        right = (r, c + 1)
        if right in region.cells and right not in covered:
            piece = frozenset([(r, c), (r, c + 1), (r + 1, c - 1), (r + 1, c)])
        else:
            piece = frozenset([(r, c), (r + 1, c), (r + 1, c + 1), (r + 2, c + 1)])
        if not piece <= region.cells or piece & covered:
            return None
        covered |= piece
        out.append(piece)
    return out


# ---------------------------------------------------------------------------
# exact cover


DEFAULT_CELL_CAP = 64


def _placements(region: Region, tiles: TileSet) -> list[Placement]:
    shapes = tiles.orientations()
    out = []
    cells = region.cells
    for shape in shapes:
        h = max(r for r, _ in shape)
        w = max(c for _, c in shape)
        for r0 in range(0, 1 + max((r for r, _ in cells), default=-1)):
            for c0 in range(0, 1 + max((c for _, c in cells), default=-1)):
                piece = frozenset((r0 + r, c0 + c) for r, c in shape)
                if piece <= cells:
                    out.append(piece)
    return sorted(out, key=sorted)


def tile_exact_cover(
    region: Region,
    tiles: TileSet,
    count: bool = False,
    cap: int = DEFAULT_CELL_CAP,
):
    """Backtracking exact cover; returns a tiling, or the number of tilings.

    Deterministic: branch on the lowest uncovered cell, placements in
    lexicographic order.
    """
    if len(region.cells) > cap:
        raise ValueError(f"region has {len(region.cells)} cells, over the cap {cap}")
    placements = _placements(region, tiles)
    by_cell: dict[Cell, list[int]] = {c: [] for c in region.cells}
    for i, piece in enumerate(placements):
        for c in piece:
            by_cell[c].append(i)
    covered: set[Cell] = set()
    chosen: list[int] = []
    solutions = [0]
    found: list[Tiling] = []

    def rec() -> bool:
        remaining = region.cells - covered
        if not remaining:
            if count:
                solutions[0] += 1
                return False
            found.append([placements[i] for i in chosen])
            return True
        cell = min(remaining)
        for i in by_cell[cell]:
            piece = placements[i]
            if piece & covered:
                continue
            covered.update(piece)
            chosen.append(i)
            if rec():
                return True
            chosen.pop()
            covered.difference_update(piece)
        return False

    rec()
    if count:
        return solutions[0]
    if not found:
        return None
    tiling = found[0]
    if not check_tiling(region, tiling):
        raise AssertionError("exact cover produced an invalid tiling")
    return tiling


# ---------------------------------------------------------------------------
# port gadgets


@dataclass(frozen=True)
class PortGadget:
    """A region with distinguished port cells claimed inward or outward.

    Ports may be multi-cell groups; a group is excluded all-or-nothing.
    The induced relation marks a word allowed when the region minus the
    excluded ports tiles exactly; bit 1 means the port is claimed
    externally (excluded from the gadget's own tiling).
    """

    region: Region
    ports: tuple[tuple[Cell, ...], ...]
    tiles: TileSet

    def __post_init__(self):
        ports = tuple(
            tuple(p) if isinstance(p, (tuple, list)) and p and isinstance(p[0], tuple) else (p,)
            for p in self.ports
        )
        object.__setattr__(self, "ports", ports)
        flat = [c for group in ports for c in group]
        if len(set(flat)) != len(flat):
            raise ValueError("port cells must be distinct")
        if not set(flat) <= self.region.cells:
            raise ValueError("ports must be cells of the region")


def verify_port_gadget(g: PortGadget, cap: int = DEFAULT_CELL_CAP) -> Relation:
    words = set()
    n = len(g.ports)
    for word in range(1 << n):
        removed = {
            c for k in range(n) if (word >> k) & 1 for c in g.ports[k]
        }
        sub = Region(g.region.cells - removed)
        if not sub.cells or tile_exact_cover(sub, g.tiles, cap=cap) is not None:
            words.add(word)
    return Relation(n, frozenset(words))


# ---------------------------------------------------------------------------
# necessary-condition filters


def checkerboard_invariant(tiles: TileSet, region: Region) -> Optional[str]:
    """A witness explaining why no tiling can exist, or None.

    Checks area divisibility for uniform piece sizes, and for T-tetromino
    sets the parity constraint from covering one cell of one color and
    three of the other.
    """
    sizes = {len(s) for s in tiles.shapes}
    if len(sizes) == 1:
        k = sizes.pop()
        if len(region.cells) % k:
            return f"area {len(region.cells)} is not a multiple of {k}"
    shapes = {s for s in tiles.shapes}
    if shapes == {SHAPES["T"]}:
        black = sum(1 for r, c in region.cells if (r + c) % 2 == 0)
        white = len(region.cells) - black
        n = len(region.cells) // 4
        # each piece covers 1 of one color and 3 of the other
        if (black - n) % 2:
            return (
                f"color counts ({black},{white}) are unreachable: every piece "
                "covers one cell of a color and three of the other"
            )
        if not (n <= black <= 3 * n):
            return f"color count {black} outside [{n}, {3 * n}]"
    return None
