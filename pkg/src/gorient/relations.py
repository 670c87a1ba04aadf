"""Vertex types for graph orientation: relations over labeled ports.

A degree-j vertex type is a set of j-bit words; bit p set means the edge at
port p points into the vertex.  Words are stored as ints with port p on bit
p; rendered strings put port 0 leftmost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


def word_to_str(word: int, arity: int) -> str:
    return "".join("1" if (word >> p) & 1 else "0" for p in range(arity))


def str_to_word(s: str) -> int:
    word = 0
    for p, ch in enumerate(s):
        if ch == "1":
            word |= 1 << p
        elif ch != "0":
            raise ValueError(f"bad word character {ch!r} in {s!r}")
    return word


@dataclass(frozen=True)
class Relation:
    """A vertex type: arity and the set of allowed port words."""

    arity: int
    allowed: frozenset[int]

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be non-negative")
        object.__setattr__(self, "allowed", frozenset(self.allowed))
        for w in self.allowed:
            if w < 0 or w >> self.arity:
                raise ValueError(
                    f"word {w:#b} out of range for arity {self.arity}"
                )

    @classmethod
    def from_strings(cls, words: Iterable[str]) -> "Relation":
        words = list(words)
        if not words:
            raise ValueError("cannot infer arity from an empty word list")
        arity = len(words[0])
        if any(len(w) != arity for w in words):
            raise ValueError("all words must have equal length")
        return cls(arity, frozenset(str_to_word(w) for w in words))

    def to_strings(self) -> list[str]:
        return sorted(word_to_str(w, self.arity) for w in self.allowed)

    @property
    def is_empty(self) -> bool:
        return not self.allowed

    def __iter__(self):
        return iter(sorted(self.allowed))

    def __repr__(self):
        if self.arity == 0:
            body = "SAT" if self.allowed else "UNSAT"
            return f"Relation(arity=0, {body})"
        return f"Relation({','.join(self.to_strings())})"


@dataclass(frozen=True)
class SymmetricSpec:
    """An S-in-j type: satisfied iff the in-degree lies in ``in_set``."""

    arity: int
    in_set: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "in_set", frozenset(self.in_set))
        if self.arity < 0:
            raise ValueError("arity must be non-negative")
        if any(i < 0 or i > self.arity for i in self.in_set):
            raise ValueError(f"in_set {set(self.in_set)} not within 0..{self.arity}")

    def __repr__(self):
        s = ",".join(str(i) for i in sorted(self.in_set))
        return f"{{{s}}}-in-{self.arity}"


def sym(arity: int, in_set: Iterable[int]) -> SymmetricSpec:
    return SymmetricSpec(arity, frozenset(in_set))


def i_in_j(i: int, j: int) -> SymmetricSpec:
    return SymmetricSpec(j, frozenset([i]))


# ---------------------------------------------------------------------------
# vertex kinds


@dataclass(frozen=True)
class Symmetric:
    spec: SymmetricSpec


@dataclass(frozen=True)
class General:
    relation: Relation


@dataclass(frozen=True)
class Equalizer:
    """All k edges in or all k edges out."""

    k: int


@dataclass(frozen=True)
class Synchronizer:
    """Degree-4 duplicator: ports 0,1 both in and 2,3 out, or the reverse."""


@dataclass(frozen=True)
class Alternator:
    """Even-degree duplicator whose edges alternate in/out around the vertex."""

    degree: int

    def __post_init__(self):
        if self.degree < 2 or self.degree % 2:
            raise ValueError("alternator degree must be even and >= 2")


@dataclass(frozen=True)
class Constant:
    """Degree-1 terminator; 'in' forces its edge toward the constant vertex."""

    direction: str

    def __post_init__(self):
        if self.direction not in ("in", "out"):
            raise ValueError("direction must be 'in' or 'out'")


@dataclass(frozen=True)
class External:
    """Unconstrained degree-1 marker used inside gadgets only."""


VertexKind = Symmetric | General | Equalizer | Synchronizer | Alternator | Constant | External

SYNCHRONIZER_RELATION = Relation(4, frozenset([0b0011, 0b1100]))

# Arity-4 type passing two direction signals straight through: with ports
# (N, E, S, W), a word is allowed iff bit N != bit S and bit E != bit W.
CROSSOVER_RELATION = Relation(
    4, frozenset(w for w in range(16) if ((w ^ (w >> 2)) & 1) and ((w >> 1 ^ w >> 3) & 1))
)


def kind_arity(kind: VertexKind) -> int:
    match kind:
        case Symmetric(spec):
            return spec.arity
        case General(relation):
            return relation.arity
        case Equalizer(k):
            return k
        case Synchronizer():
            return 4
        case Alternator(degree):
            return degree
        case Constant(_):
            return 1
        case External():
            return 1
    raise TypeError(f"not a vertex kind: {kind!r}")


def expand_symmetric(spec: SymmetricSpec) -> Relation:
    words = frozenset(
        w for w in range(1 << spec.arity) if bin(w).count("1") in spec.in_set
    )
    return Relation(spec.arity, words)


def alternator_relation(degree: int, order: Optional[Sequence[int]] = None) -> Relation:
    """The two cyclically alternating words w.r.t. ``order`` (default 0,1,...)."""
    if order is None:
        order = range(degree)
    order = list(order)
    if sorted(order) != list(range(degree)):
        raise ValueError("order must be a permutation of the ports")
    w = 0
    for idx, port in enumerate(order):
        if idx % 2 == 0:
            w |= 1 << port
    full = (1 << degree) - 1
    return Relation(degree, frozenset([w, w ^ full]))


def expand(kind: VertexKind) -> Relation:
    """Expand a vertex kind to its explicit relation.

    Alternators expand w.r.t. ascending port index; callers holding a
    rotation system should pass its cyclic order to ``alternator_relation``.
    """
    match kind:
        case Symmetric(spec):
            return expand_symmetric(spec)
        case General(relation):
            return relation
        case Equalizer(k):
            return Relation(k, frozenset([0, (1 << k) - 1]))
        case Synchronizer():
            return SYNCHRONIZER_RELATION
        case Alternator(degree):
            return alternator_relation(degree)
        case Constant(direction):
            return Relation(1, frozenset([1 if direction == "in" else 0]))
        case External():
            raise ValueError("External vertices have no relation to expand")
    raise TypeError(f"not a vertex kind: {kind!r}")


# ---------------------------------------------------------------------------
# bitstrings, gaps, deltas


def bitstring(spec: SymmetricSpec) -> str:
    return "".join("1" if i in spec.in_set else "0" for i in range(spec.arity + 1))


def max_gap(spec: SymmetricSpec) -> int:
    """Largest run of zeros in the bitstring with a one on both sides."""
    best = 0
    run = 0
    seen_one = False
    for ch in bitstring(spec):
        if ch == "1":
            if seen_one:
                best = max(best, run)
            seen_one = True
            run = 0
        else:
            run += 1
    return best


def delta_set(spec: SymmetricSpec) -> set[int]:
    """Differences between consecutive elements of S."""
    elems = sorted(spec.in_set)
    return {b - a for a, b in zip(elems, elems[1:])}


def delta_gamma(specs: Iterable[SymmetricSpec]) -> set[int]:
    out: set[int] = set()
    for spec in specs:
        out |= delta_set(spec)
    return out


def is_top_down_closed(spec: SymmetricSpec) -> bool:
    j = spec.arity
    return all(i - 1 in spec.in_set for i in spec.in_set if 2 * i > j)


def is_bottom_up_closed(spec: SymmetricSpec) -> bool:
    j = spec.arity
    return all(i + 1 in spec.in_set for i in spec.in_set if 2 * i < j)


# ---------------------------------------------------------------------------
# closure predicates

# The checks below are algebraically equivalent to exhaustively closing the
# word set under the defining operator, but run in polynomial time in the
# word count so that full sweeps over all S-in-j with j <= 8 stay fast.


def is_0valid(r: Relation) -> bool:
    return 0 in r.allowed


def is_1valid(r: Relation) -> bool:
    return ((1 << r.arity) - 1) in r.allowed


def is_horn(r: Relation) -> bool:
    return all(a & b in r.allowed for a in r.allowed for b in r.allowed)


def is_dual_horn(r: Relation) -> bool:
    return all(a | b in r.allowed for a in r.allowed for b in r.allowed)


def is_self_complementary(r: Relation) -> bool:
    full = (1 << r.arity) - 1
    return all(w ^ full in r.allowed for w in r.allowed)


def _two_clauses(r: Relation) -> list[tuple[int, int]]:
    """All clauses over <=2 port literals satisfied by every allowed word.

    A clause is (positive-mask, negative-mask): satisfied by w when
    w & pos != 0 or ~w & neg != 0.  The empty clause is excluded.
    """
    clauses = []
    lits = [(1 << p, 0) for p in range(r.arity)] + [(0, 1 << p) for p in range(r.arity)]
    seen = set()
    for (p1, n1), (p2, n2) in itertools.combinations_with_replacement(lits, 2):
        pos, neg = p1 | p2, n1 | n2
        if (pos, neg) in seen:
            continue
        seen.add((pos, neg))
        if all((w & pos) or (~w & neg) for w in r.allowed):
            clauses.append((pos, neg))
    return clauses


def is_bijunctive(r: Relation) -> bool:
    """Closure under bitwise majority of any three allowed words.

    Equivalent to the relation being the solution set of its satisfied
    2-clauses.
    """
    if len(r.allowed) <= 2:
        # maj(a, a, b) = a, so any pair is trivially closed
        return True
    clauses = _two_clauses(r)
    count = 0
    for w in range(1 << r.arity):
        if all((w & pos) or (~w & neg) for pos, neg in clauses):
            count += 1
            if count > len(r.allowed):
                return False
    return count == len(r.allowed)


def is_affine(r: Relation) -> bool:
    """Closure under bitwise XOR of any three allowed words."""
    if not r.allowed:
        return True
    w0 = next(iter(r.allowed))
    basis: list[int] = []
    for w in r.allowed:
        v = w ^ w0
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(r.allowed) == 1 << len(basis)


def maj3(a: int, b: int, c: int) -> int:
    return (a & b) | (a & c) | (b & c)


def is_bijunctive_naive(r: Relation) -> bool:
    """Direct triple enumeration; test oracle for is_bijunctive."""
    return all(
        maj3(a, b, c) in r.allowed
        for a in r.allowed for b in r.allowed for c in r.allowed
    )


def is_affine_naive(r: Relation) -> bool:
    return all(
        a ^ b ^ c in r.allowed
        for a in r.allowed for b in r.allowed for c in r.allowed
    )


def is_symmetric(r: Relation) -> Optional[SymmetricSpec]:
    """Return the S-in-j spec iff membership depends only on popcount."""
    in_set = set()
    out_set = set()
    for w in range(1 << r.arity):
        c = bin(w).count("1")
        if w in r.allowed:
            in_set.add(c)
        else:
            out_set.add(c)
    if in_set & out_set:
        return None
    return SymmetricSpec(r.arity, frozenset(in_set))


# ---------------------------------------------------------------------------
# transforms


def _drop_bit(word: int, port: int) -> int:
    low = word & ((1 << port) - 1)
    high = word >> (port + 1)
    return low | (high << port)


def condition(r: Relation, port: int, direction: str) -> Relation:
    """Force one port's direction and project it out.

    direction 'in' keeps words with the port bit set (edge into the vertex).
    """
    if not 0 <= port < r.arity:
        raise ValueError(f"port {port} out of range for arity {r.arity}")
    want = 1 if direction == "in" else 0
    words = frozenset(
        _drop_bit(w, port) for w in r.allowed if (w >> port) & 1 == want
    )
    return Relation(r.arity - 1, words)


def add_self_loop(r: Relation, p1: int, p2: int) -> Relation:
    """Join ports p1 and p2 by a self-loop: keep words where they differ."""
    if p1 == p2:
        raise ValueError("self-loop needs two distinct ports")
    if not (0 <= p1 < r.arity and 0 <= p2 < r.arity):
        raise ValueError("port out of range")
    a, b = sorted((p1, p2))
    words = frozenset(
        _drop_bit(_drop_bit(w, b), a)
        for w in r.allowed
        if ((w >> a) ^ (w >> b)) & 1
    )
    return Relation(r.arity - 2, words)


def reverse(r: Relation) -> Relation:
    """Complement every word (reverse all edges)."""
    full = (1 << r.arity) - 1
    return Relation(r.arity, frozenset(w ^ full for w in r.allowed))


def reverse_spec(spec: SymmetricSpec) -> SymmetricSpec:
    return SymmetricSpec(spec.arity, frozenset(spec.arity - i for i in spec.in_set))


# ---------------------------------------------------------------------------
# duplicators


@dataclass(frozen=True)
class DuplicatorInfo:
    net_flow: int
    is_equalizer: bool = False
    is_synchronizer: bool = False
    is_alternator: bool = False
    is_trivial: bool = False


def duplicator_info(
    r: Relation, rotation: Optional[Sequence[int]] = None
) -> Optional[DuplicatorInfo]:
    """Classify r as a duplicator, or return None.

    A duplicator has exactly two allowed words that are complements.
    Alternation is judged w.r.t. ``rotation`` (ascending ports by default).
    """
    if len(r.allowed) != 2:
        return None
    a, b = sorted(r.allowed)
    full = (1 << r.arity) - 1
    if a ^ b != full:
        return None
    ones = bin(a).count("1")
    net_flow = abs(ones - (r.arity - ones))
    is_eq = a == 0 and b == full
    alt = r.arity % 2 == 0 and r == alternator_relation(r.arity, rotation)
    sync = r.arity == 4 and net_flow == 0 and not alt
    return DuplicatorInfo(
        net_flow=net_flow,
        is_equalizer=is_eq,
        is_synchronizer=sync,
        is_alternator=alt,
        is_trivial=r.arity <= 2,
    )


def permute_ports(r: Relation, perm: Sequence[int]) -> Relation:
    """Relabel ports: new port p carries old port perm[p]."""
    if sorted(perm) != list(range(r.arity)):
        raise ValueError("perm must be a permutation of the ports")
    words = frozenset(
        sum(((w >> perm[p]) & 1) << p for p in range(r.arity)) for w in r.allowed
    )
    return Relation(r.arity, words)


def equal_up_to_port_permutation(r1: Relation, r2: Relation) -> bool:
    if r1.arity != r2.arity:
        return False
    if r1 == r2:
        return True
    return any(
        permute_ports(r1, perm) == r2
        for perm in itertools.permutations(range(r1.arity))
    )
