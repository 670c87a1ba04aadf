"""Relation-level operations against their definitions."""

from __future__ import annotations

import itertools

import pytest

from gorient.relations import (
    Alternator,
    CROSSOVER_RELATION,
    Constant,
    Equalizer,
    External,
    Relation,
    SYNCHRONIZER_RELATION,
    Symmetric,
    Synchronizer,
    add_self_loop,
    bitstring,
    condition,
    delta_gamma,
    delta_set,
    duplicator_info,
    equal_up_to_port_permutation,
    expand,
    expand_symmetric,
    i_in_j,
    is_affine,
    is_affine_naive,
    is_bijunctive,
    is_bijunctive_naive,
    is_bottom_up_closed,
    is_horn,
    is_self_complementary,
    is_symmetric,
    is_top_down_closed,
    max_gap,
    reverse,
    sym,
)


def all_specs(j):
    for bits in range(1 << (j + 1)):
        yield sym(j, [i for i in range(j + 1) if bits >> i & 1])


def test_expand_examples():
    assert expand(Equalizer(3)).to_strings() == ["000", "111"]
    assert expand(Alternator(4)).to_strings() == ["0101", "1010"]
    assert expand(Synchronizer()) == SYNCHRONIZER_RELATION
    assert expand(Constant("in")) == Relation(1, frozenset([1]))
    with pytest.raises(ValueError):
        expand(External())


def test_bitstring_examples():
    assert bitstring(sym(5, [0, 1, 4])) == "110010"
    assert bitstring(sym(3, [0, 3])) == "1001"
    assert bitstring(sym(2, [])) == "000"


def test_max_gap_examples():
    assert max_gap(sym(3, [0, 3])) == 2
    assert max_gap(sym(5, [0, 1, 4])) == 2
    assert max_gap(sym(2, [0, 1, 2])) == 0


def test_delta_examples():
    assert delta_set(sym(5, [0, 1, 4])) == {1, 3}
    assert delta_set(sym(3, [2])) == set()
    assert delta_set(sym(3, [0, 3])) == {3}
    assert delta_gamma([sym(3, [0, 3]), sym(3, [1])]) == {3}
    assert delta_gamma([sym(5, [0, 1, 4]), sym(2, [0, 2])]) == {1, 2, 3}
    assert delta_gamma([]) == set()


def test_gap_delta_relation():
    # gap of size k-1 <=> k in the delta set
    for j in range(0, 7):
        for spec in all_specs(j):
            assert (max_gap(spec) >= 2) == any(d >= 3 for d in delta_set(spec))


def test_predicate_examples():
    assert is_bijunctive(expand_symmetric(i_in_j(1, 2)))
    assert is_affine(expand_symmetric(sym(3, [1, 3])))
    assert not is_bijunctive(expand_symmetric(i_in_j(2, 4)))
    assert is_self_complementary(expand(Equalizer(3)))
    assert is_horn(expand_symmetric(i_in_j(1, 2))) is False
    assert is_horn(expand_symmetric(sym(2, [0, 1])))


def test_closed_forms_exhaustive():
    """The helper characterizations of bijunctive/affine, all j <= 8."""
    for j in range(0, 9):
        for spec in all_specs(j):
            rel = expand_symmetric(spec)
            s = set(spec.in_set)
            expect_bij = (
                s == set(range(j + 1))
                or s <= {0, j}
                or s == {0, 1}
                or s == {j - 1, j}
                or j <= 2
            )
            evens = set(range(0, j + 1, 2))
            odds = set(range(1, j + 1, 2))
            expect_aff = s == set(range(j + 1)) or s <= {0, j} or s == evens or s == odds
            assert is_bijunctive(rel) == expect_bij, spec
            assert is_affine(rel) == expect_aff, spec


def test_predicates_match_naive_closure():
    for j in range(0, 5):
        for spec in all_specs(j):
            rel = expand_symmetric(spec)
            assert is_bijunctive(rel) == is_bijunctive_naive(rel)
            assert is_affine(rel) == is_affine_naive(rel)


def test_symmetric_roundtrip():
    assert is_symmetric(expand_symmetric(i_in_j(1, 3))) == i_in_j(1, 3)
    assert is_symmetric(SYNCHRONIZER_RELATION) is None
    assert is_symmetric(expand(Equalizer(4))) == sym(4, [0, 4])
    for j in range(0, 6):
        for spec in all_specs(j):
            assert is_symmetric(expand_symmetric(spec)) == spec


def test_condition_examples():
    r = expand_symmetric(sym(5, [0, 1, 4]))
    c1 = condition(r, 0, "in")
    assert is_symmetric(c1) == sym(4, [0, 3])
    c2 = condition(c1, 0, "out")
    assert is_symmetric(c2) == sym(3, [0, 3])
    c = condition(expand_symmetric(i_in_j(1, 1)), 0, "in")
    assert c.arity == 0 and not c.is_empty


def test_add_self_loop_examples():
    assert is_symmetric(add_self_loop(expand_symmetric(i_in_j(3, 6)), 0, 1)) == i_in_j(2, 4)
    assert is_symmetric(add_self_loop(expand_symmetric(sym(4, [0, 3])), 0, 1)) == i_in_j(2, 2)
    r = add_self_loop(expand_symmetric(i_in_j(1, 2)), 0, 1)
    assert r.arity == 0 and not r.is_empty


def test_reverse_examples():
    assert is_symmetric(reverse(expand_symmetric(i_in_j(1, 3)))) == i_in_j(2, 3)
    assert reverse(expand(Equalizer(4))) == expand(Equalizer(4))
    assert is_symmetric(reverse(expand_symmetric(sym(4, [0, 1])))) == sym(4, [3, 4])


def test_reverse_commutes_with_transforms():
    for j in range(1, 6):
        for spec in all_specs(j):
            rel = expand_symmetric(spec)
            for p in range(j):
                assert reverse(condition(rel, p, "in")) == condition(
                    reverse(rel), p, "out"
                )
            if j >= 2:
                assert reverse(add_self_loop(rel, 0, j - 1)) == add_self_loop(
                    reverse(rel), 0, j - 1
                )


def test_monotone_closure_examples():
    assert is_top_down_closed(sym(4, [2, 3]))
    assert not is_top_down_closed(sym(4, [0, 3]))
    assert is_top_down_closed(sym(4, [0, 1, 2, 3, 4]))
    assert is_bottom_up_closed(sym(4, [0, 1, 2, 3, 4]))
    assert is_bottom_up_closed(sym(8, [1, 4])) is False
    assert is_top_down_closed(sym(8, [1, 4]))  # nothing above half


def test_duplicator_info_examples():
    info = duplicator_info(expand(Equalizer(3)))
    assert info.net_flow == 3 and info.is_equalizer and not info.is_trivial
    info = duplicator_info(SYNCHRONIZER_RELATION)
    assert info.net_flow == 0 and info.is_synchronizer and not info.is_alternator
    assert duplicator_info(expand_symmetric(i_in_j(1, 3))) is None
    info = duplicator_info(expand(Alternator(4)))
    assert info.is_alternator and info.net_flow == 0
    # alternation depends on the cyclic order
    assert duplicator_info(expand(Alternator(4)), rotation=(0, 2, 1, 3)).is_synchronizer
    assert duplicator_info(expand_symmetric(i_in_j(1, 2))).is_trivial


def test_crossover_shape():
    assert CROSSOVER_RELATION.to_strings() == ["0011", "0110", "1001", "1100"]


def test_port_permutation_equality():
    r1 = Relation.from_strings(["100", "010"])
    r2 = Relation.from_strings(["010", "001"])
    assert equal_up_to_port_permutation(r1, r2)
    assert not equal_up_to_port_permutation(r1, Relation.from_strings(["110", "001"]))
