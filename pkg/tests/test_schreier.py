
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ssindex.ordinal import parse_ordinal
from ssindex.schreier import (
    automaton_friendly,
    enumerate_family,
    format_set,
    is_maximal,
    iter_maximal,
    iter_members,
    member,
    min_blocks,
    parse_set,
    state_of,
)

P = parse_ordinal


def test_member_examples():
    assert member(0, (7,))
    assert not member(1, (1, 2))
    assert member(1, (2, 3))
    assert member(2, (2, 3, 10, 11, 12))
    assert member(P("w"), (2, 3))
    assert not member(P("w"), (1, 2))
    assert all(member(P(x), ()) for x in ("0", "1", "w^2"))


def test_min_blocks_examples():
    assert min_blocks(0, (3, 5, 9)) == 3
    assert min_blocks(1, (2, 3, 10, 11, 12)) == 2
    assert min_blocks(1, (5, 6, 7)) == 1


def test_is_maximal_examples():
    assert is_maximal(1, (1,))
    assert not is_maximal(1, (3, 4))
    assert is_maximal(1, (2, 3))
    with pytest.raises(ValueError):
        is_maximal(1, (1, 2))


def test_enumerate_examples():
    assert enumerate_family(0, 3) == [(), (1,), (2,), (3,)]
    assert enumerate_family(1, 3) == [(), (1,), (2,), (3,), (2, 3)]
    brute = [F for F in oracles.subsets(6) if oracles.s1(F)]
    assert len(enumerate_family(1, 6)) == len(brute)


def test_enumerate_is_length_lex():
    fam = enumerate_family(2, 8)
    assert fam == sorted(fam, key=lambda F: (len(F), F))


def test_set_literals():
    assert parse_set("{2,3,10}") == (2, 3, 10)
    assert parse_set("{ }") == ()
    assert format_set((2, 3, 10)) == "{2,3,10}"
    for bad in ("2,3", "{3,2}", "{0}", "{a}"):
        with pytest.raises(ValueError):
            parse_set(bad)


def test_min_blocks_matches_exhaustive_split_search():
    for xo, xs in [((0, 0), "0"), ((0, 1), "1"), ((0, 2), "2"), ((1, 0), "w")]:
        zeta = P(xs)
        for F in oracles.subsets(10):
            if F:
                assert min_blocks(zeta, F) == oracles.min_pieces(xo, F), (xs, F)


def test_maximal_single_probe_agrees_with_wide_scan():
    for _, xs in oracles.GRID:
        xi = P(xs)
        for F in enumerate_family(xi, 9):
            assert is_maximal(xi, F) == is_maximal(xi, F, guard=20), (xs, F)


def test_iter_members_and_maximal():
    members = list(iter_members(2, range(1, 9)))
    assert sorted(members) == sorted(F for F in enumerate_family(2, 8) if F)
    assert members == sorted(members)
    pool = range(1, 9)
    for F in iter_maximal(2, pool):
        assert member(2, F)
        assert not any(member(2, tuple(sorted(F + (m,)))) for m in pool if m not in F)


def test_automaton_matches_membership_below_w_squared():
    for xs in ("0", "1", "2", "w", "w+1", "w*2"):
        xi = P(xs)
        assert automaton_friendly(xi)
        for F in oracles.subsets(9):
            assert (state_of(xi, F) is not None) == member(xi, F), (xs, F)
    assert not automaton_friendly(P("w^2"))


@settings(max_examples=300, deadline=None)
@given(
    st.sampled_from([xs for _, xs in oracles.GRID]),
    st.lists(st.integers(1, 20), max_size=7, unique=True),
    st.randoms(use_true_random=False),
)
def test_random_spreads_stay_in_family(xs, elems, rnd):
    xi = P(xs)
    F = tuple(sorted(elems))
    if not member(xi, F):
        return
    # push the elements up, keeping order: top down, each to a random slot
    G = list(F)
    ceiling = 21
    for k in range(len(G) - 1, -1, -1):
        G[k] = rnd.randint(G[k], ceiling - 1)
        ceiling = G[k]
    assert member(xi, tuple(G))
    for k in range(len(F)):
        assert member(xi, F[:k] + F[k + 1:])
