"""GF(2) solver for instances whose vertex types are all affine."""

from __future__ import annotations

from typing import Optional

from ..instances import Instance, Orientation
from ..relations import Relation, is_affine


def gf2_solve(rows: list[int], rhs: list[int], n_vars: int) -> Optional[list[int]]:
    """Solve rows . x = rhs over GF(2); rows are bitmasks.  Free vars get 0."""
    system = [(rows[i] << 1) | rhs[i] for i in range(len(rows))]
    pivots: dict[int, int] = {}
    for r in system:
        for col in range(n_vars - 1, -1, -1):
            if not (r >> (col + 1)) & 1:
                continue
            if col in pivots:
                r ^= pivots[col]
            else:
                pivots[col] = r
                break
        else:
            if r & 1:
                return None
    x = [0] * n_vars
    for col in sorted(pivots):
        r = pivots[col]
        val = r & 1
        for c2 in range(col):
            if (r >> (c2 + 1)) & 1:
                val ^= x[c2]
        x[col] = val
    return x


def gf2_nullspace(vectors: list[int], n_bits: int) -> list[int]:
    """Basis of {c : c . v = 0 for all v} over GF(2)."""
    # reduce the vectors to row echelon over columns 0..n_bits-1
    pivots: dict[int, int] = {}
    for v in vectors:
        for col in range(n_bits):
            if not (v >> col) & 1:
                continue
            if col in pivots:
                v ^= pivots[col]
            else:
                pivots[col] = v
                break
    out = []
    free_cols = [c for c in range(n_bits) if c not in pivots]
    for fc in free_cols:
        c_vec = 1 << fc
        # back-substitute: for each pivot column, decide its coefficient
        for col in sorted(pivots, reverse=True):
            row = pivots[col]
            parity = bin(row & c_vec).count("1") & 1
            if parity:
                c_vec |= 1 << col
        out.append(c_vec)
    return out


def affine_checks(rel: Relation) -> list[tuple[int, int]]:
    """Parity checks (mask over ports, rhs) defining an affine relation."""
    if not rel.allowed:
        raise ValueError("empty relation")
    w0 = next(iter(rel.allowed))
    diffs = [w ^ w0 for w in rel.allowed]
    out = []
    for c in gf2_nullspace(diffs, rel.arity):
        rhs = bin(c & w0).count("1") & 1
        out.append((c, rhs))
    return out


def solve_affine(inst: Instance) -> Optional[Orientation]:
    """Encode each vertex as an affine subspace over GF(2) and eliminate."""
    relations = {v: inst.vertex_relation(v) for v in inst.vertices}
    rows: list[int] = []
    rhs: list[int] = []
    for v, rel in relations.items():
        if not is_affine(rel):
            raise ValueError(f"vertex {v!r} has a non-affine type")
        if rel.is_empty:
            return None
        if rel.arity == 0:
            continue
        for mask, b in affine_checks(rel):
            row = 0
            const = b
            for p in range(rel.arity):
                if not (mask >> p) & 1:
                    continue
                e, side = inst.endpoint_at(v, p)
                # bit(v,p) = x_e when side 1, else 1 ^ x_e
                row ^= 1 << e
                if side == 0:
                    const ^= 1
            rows.append(row)
            rhs.append(const)
    x = gf2_solve(rows, rhs, len(inst.edges))
    if x is None:
        return None
    return tuple(x)
