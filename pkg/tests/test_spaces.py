from fractions import Fraction as Q
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ssindex.ordinal import parse_ordinal
from ssindex.schreier import member
from ssindex.spaces import (
    Enclosure,
    RationalVector,
    dual_functionals,
    dual_witness,
    evaluate_witness,
    norm,
    norm_squared,
    norming_functional,
    parse_norm,
    parse_vector,
    sqrt_enclosure,
)

S1 = parse_norm("schreier(1)")
T1 = parse_norm("tsirelson(1,1/2)")
TW = parse_norm("tsirelson(w,1/2)")


def ones(*idx):
    return RationalVector({i: 1 for i in idx})


def test_norm_examples():
    assert norm(S1, ones(1)) == 1
    assert norm(S1, ones(*range(1, 7))) == 3
    assert norm(S1, parse_vector("[1:1, 2:-2, 3:3]")) == 5
    assert norm(T1, ones(5)) == 1
    assert norm(T1, ones(1, 2, 3)) == 1
    assert norm(T1, ones(*range(1, 7))) >= Q(3, 2)
    assert norm(parse_norm("l1"), parse_vector("[1:1/2,4:-1/3]")) == Q(5, 6)
    assert norm(parse_norm("linf"), parse_vector("[1:1/2,4:-1/3]")) == Q(1, 2)


def test_dual_witness_examples():
    assert dual_witness(S1, ones(*range(1, 7))) == (3, 4, 5)
    assert dual_witness(S1, ones(7)) == (7,)
    assert dual_witness(T1, ones(1, 2)) == ("coordinate", 1)


def test_l2_enclosure():
    v = norm(parse_norm("l2"), parse_vector("[1:1,2:1]"))
    assert isinstance(v, Enclosure) and v.square == 2
    assert v.lower ** 2 <= 2 <= v.upper ** 2
    assert v.upper - v.lower < Q(1, 2 ** 60)
    exact = sqrt_enclosure(Q(9, 4))
    assert exact.lower == exact.upper == Q(3, 2)


def test_literals_and_descriptors():
    x = parse_vector("[3:1/2, 1:-2]")
    assert x.support == (1, 3) and str(x) == "[1:-2, 3:1/2]"
    assert parse_vector(str(x)) == x
    assert parse_vector("[1:0, 2:1]").support == (2,)
    for bad in ("1:2", "[1:2,1:3]", "[x:1]", "[1:a]", "[1]"):
        with pytest.raises(ValueError):
            parse_vector(bad)
    assert str(parse_norm("tsirelson( w , 1/2 )")) == "tsirelson(w,1/2)"
    assert parse_norm("schreier(w^2)").xi == parse_ordinal("w^2")
    for bad in ("l3", "tsirelson(1,2)", "tsirelson(1)", "schreier(x)"):
        with pytest.raises(ValueError):
            parse_norm(bad)


def test_tsirelson_matches_naive_recursion_on_01_vectors():
    for bits in product((0, 1), repeat=6):
        x = {i + 1: 1 for i, b in enumerate(bits) if b}
        assert norm(T1, RationalVector(x)) == oracles.tsirelson_naive(x)


def test_tsirelson_matches_naive_recursion_on_small_rationals():
    vals = (0, 1, Q(1, 2), -2)
    for coeffs in product(vals, repeat=5):
        x = {i + 1: c for i, c in enumerate(coeffs) if c}
        assert norm(T1, RationalVector(x)) == oracles.tsirelson_naive(x)


def test_schreier_norm_matches_subset_search():
    for coeffs in product((0, 1, -3, Q(5, 2)), repeat=6):
        x = {i + 1: c for i, c in enumerate(coeffs) if c}
        if x:
            assert norm(S1, RationalVector(x)) == oracles.schreier_norm_naive(x)


def test_dual_functionals_represent_the_norm():
    import random

    rnd = random.Random(5)
    for d in (S1, T1, TW, parse_norm("l1"), parse_norm("linf"), parse_norm("schreier(2)")):
        support = (2, 3, 5, 6, 7, 9)
        funcs = dual_functionals(d, support)
        for _ in range(30):
            y = RationalVector({i: Q(rnd.randint(-6, 6), rnd.randint(1, 4)) for i in support})
            vals = [abs(y[i]) for i in support]
            best = max(sum((w * v for w, v in zip(f, vals)), Q(0)) for f in funcs)
            assert best == norm(d, y)
            w = norming_functional(d, y)
            assert sum((w[i] * abs(y[i]) for i in w), Q(0)) == norm(d, y)
    assert dual_functionals(parse_norm("l2"), (1, 2)) is None


coeff = st.fractions(min_value=-10, max_value=10, max_denominator=6)
vectors = st.dictionaries(st.integers(1, 12), coeff, max_size=8).map(RationalVector)
polyhedral = st.sampled_from(["l1", "linf", "schreier(1)", "schreier(2)", "schreier(w)", "tsirelson(1,1/2)", "tsirelson(2,1/3)", "tsirelson(w,1/2)"])


@settings(max_examples=150, deadline=None)
@given(polyhedral, vectors, vectors, coeff)
def test_norm_axioms(kind, x, y, c):
    d = parse_norm(kind)
    nx, ny = norm(d, x), norm(d, y)
    assert nx >= 0 and (nx == 0) == (not x)
    assert norm(d, x * c) == abs(c) * nx
    assert norm(d, x + y) <= nx + ny


@settings(max_examples=100, deadline=None)
@given(vectors, vectors, coeff)
def test_l2_axioms_on_squares(x, y, c):
    d = parse_norm("l2")
    assert norm_squared(d, x * c) == c * c * norm_squared(d, x)
    # triangle inequality via enclosures
    assert norm(d, x + y).lower <= norm(d, x).upper + norm(d, y).upper


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["schreier(1)", "schreier(w)", "tsirelson(1,1/2)", "tsirelson(w,1/2)"]), vectors, st.data())
def test_unconditional_sandwich_and_witness(kind, x, data):
    d = parse_norm(kind)
    n = norm(d, x)
    shrink = RationalVector({i: q * data.draw(st.fractions(0, 1, max_denominator=4)) for i, q in x.items})
    assert norm(d, shrink) <= n
    l1 = sum((abs(q) for _, q in x.items), Q(0))
    linf = max((abs(q) for _, q in x.items), default=Q(0))
    assert n <= l1
    if d.kind == "tsirelson":
        assert linf <= n
    assert evaluate_witness(d, dual_witness(d, x), x) == n


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["tsirelson(1,1/2)", "tsirelson(w,1/2)", "tsirelson(2,1/3)"]), vectors)
def test_tsirelson_fixed_point(kind, x):
    """One more round of the recursion, fed with computed values, changes nothing."""
    d = parse_norm(kind)
    if not x:
        return
    idx = x.support
    best = max(abs(q) for _, q in x.items)
    n = len(idx)

    def splits(start, mins):
        for a in range(start, n):
            for b in range(a, n):
                if member(d.xi, mins + (idx[a],)):
                    yield [(a, b)]
                    for rest in splits(b + 1, mins + (idx[a],)):
                        yield [(a, b)] + rest

    for parts in splits(0, ()):
        if len(parts) == 1 and parts[0] == (0, n - 1):
            continue
        total = sum((norm(d, x.restrict(idx[a:b + 1])) for a, b in parts), Q(0))
        best = max(best, d.theta * total)
    assert best == norm(d, x)
