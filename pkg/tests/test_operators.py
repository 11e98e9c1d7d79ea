from fractions import Fraction as Q
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ssindex.operators import (
    BasicSequence,
    Diagonal,
    Identity,
    MatrixAction,
    Operator,
    apply,
    parse_operator,
    parse_rule,
)
from ssindex.spaces import RationalVector, norm, parse_norm, parse_vector
from ssindex.spans import Limits, UndecidedError, ratio_at_least, span_minimum, vector_ratio

L1, L2, LINF = parse_norm("l1"), parse_norm("l2"), parse_norm("linf")
S1 = parse_norm("schreier(1)")


def e(*idx):
    return [RationalVector.basis(i) for i in idx]


def test_apply_examples():
    x = parse_vector("[1:2, 5:-1/3]")
    assert apply(Operator(L1, L1, Identity()), x) == x
    assert apply(Operator(L1, L1, Diagonal("1/i")), RationalVector.basis(3)) == RationalVector({3: Q(1, 3)})


@settings(max_examples=100, deadline=None)
@given(
    st.dictionaries(st.integers(1, 6), st.fractions(-5, 5, max_denominator=4), max_size=5),
    st.dictionaries(st.integers(1, 6), st.fractions(-5, 5, max_denominator=4), max_size=5),
    st.fractions(-3, 3, max_denominator=3),
)
def test_apply_is_linear(a, b, c):
    M = MatrixAction(((1, 1, Q(1)), (2, 1, Q(-1, 2)), (1, 3, Q(2)), (4, 4, Q(3))))
    for action in (Identity(), Diagonal("i^2 - 3"), M):
        T = Operator(L1, L1, action)
        x, y = RationalVector(a), RationalVector(b)
        assert apply(T, x + y * c) == apply(T, x) + apply(T, y) * c


def test_rules():
    assert parse_rule("1/i")(4) == Q(1, 4)
    assert parse_rule("2^-i")(3) == Q(1, 8)
    assert parse_rule("(i+1)/(2*i)")(3) == Q(2, 3)
    for bad in ("i**0.5", "__import__('os')", "j", "i^(1/2)"):
        with pytest.raises(ValueError):
            parse_rule(bad)(2)


def test_operator_files(tmp_path):
    (tmp_path / "m.txt").write_text("# r c v\n1 1 1/2\n2 1 1\n2 2 3\n")
    (tmp_path / "op.txt").write_text("domain l1\ncodomain tsirelson(w,1/2)\naction matrix m.txt\n")
    T = parse_operator((tmp_path / "op.txt").read_text(), base_dir=tmp_path)
    assert str(T.codomain) == "tsirelson(w,1/2)"
    assert apply(T, parse_vector("[1:2, 7:1]")) == parse_vector("[1:1, 2:2, 7:1]")
    for bad in ("domain l1\naction identity\n", "domain l1\ncodomain l1\naction rotate\n", "domain l1\ndomain l1\n"):
        with pytest.raises(ValueError):
            parse_operator(bad)


def test_basic_sequence_normalisation():
    seq = BasicSequence.build([parse_vector("[1:1,2:1]"), parse_vector("[3:4]")], S1)
    assert [norm(S1, v) for v in seq.vectors] == [1, 1]
    assert seq.is_block and seq[2] == parse_vector("[3:1]")
    seq2 = BasicSequence.build([parse_vector("[1:3,2:4]")], L2)
    assert seq2.squared_norms == (25,)
    with pytest.raises(IndexError):
        seq[3]


# -- span minima against closed forms and brute force ---------------------


def test_closed_forms():
    assert span_minimum(Operator(L1, L1, Diagonal("1/i")), e(2, 5, 7)).ratio == Q(1, 7)
    assert span_minimum(Operator(L1, LINF, Identity()), e(1, 2, 3, 4)).ratio == Q(1, 4)
    assert span_minimum(Operator(LINF, L1, Identity()), e(1, 2, 3)).ratio == 1
    assert span_minimum(Operator(S1, LINF, Identity()), e(*range(7, 13))).ratio == Q(1, 6)
    assert span_minimum(Operator(S1, LINF, Identity()), e(*range(2, 9))).ratio == Q(1, 4)
    assert span_minimum(Operator(L1, L2, Identity()), e(1, 2, 3)).ratio_square == Q(1, 3)
    assert span_minimum(Operator(L2, LINF, Identity()), e(1, 2, 3)).ratio_square == Q(1, 3)
    assert span_minimum(Operator(L2, L1, Identity()), e(1, 2, 3)).ratio_square == 1
    r = span_minimum(Operator(L2, L2, Diagonal("1/i")), e(1, 2, 3))
    assert r.ratio_square == Q(1, 9) and r.exact


def test_minimum_off_the_domain_ball_vertices():
    # the unit vectors are the vertices of the l1 ball, but the minimum sits at e_1+e_2
    r = span_minimum(Operator(L1, LINF, Identity()), e(1, 2))
    assert r.ratio == Q(1, 2) and r.coefficients == (1, 1)
    assert all(vector_ratio(Operator(L1, LINF, Identity()), v)[1] == 1 for v in e(1, 2))


def test_kernel_gives_zero():
    T = Operator(L1, L1, MatrixAction(((1, 1, Q(1)), (1, 2, Q(1)))))
    r = span_minimum(T, e(1, 2))
    assert r.ratio == 0 and r.method == "kernel"
    with pytest.raises(ValueError):
        span_minimum(T, [RationalVector.basis(1), RationalVector.basis(1) * 2])


NORMS = ["l1", "linf", "schreier(1)", "tsirelson(1,1/2)", "tsirelson(w,1/2)", "l2"]
vec = st.dictionaries(st.integers(1, 5), st.integers(-2, 2).map(Q), min_size=1, max_size=3).map(RationalVector)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(NORMS), st.sampled_from(NORMS), st.lists(vec, min_size=1, max_size=3), st.sampled_from(["1", "1/i", "i", "3-i"]))
def test_span_minimum_is_a_lower_bound_on_a_grid(dom, cod, vectors, rule):
    T = Operator(parse_norm(dom), parse_norm(cod), Diagonal(rule))
    try:
        r = span_minimum(T, vectors)
    except ValueError:
        return  # dependent vectors
    x = RationalVector()
    for a, v in zip(r.coefficients, vectors):
        x = x + v * a
    assert vector_ratio(T, x)[0] == r.ratio_square
    for a in product(range(-3, 4), repeat=len(vectors)):
        y = RationalVector()
        for c, v in zip(a, vectors):
            y = y + v * c
        if y:
            sq = vector_ratio(T, y)[0]
            if r.exact:
                assert sq >= r.ratio_square


def test_random_fallback_is_an_upper_bound_and_undecided_surfaces():
    T = Operator(S1, LINF, Identity())
    vecs = e(*range(3, 9))
    exact_r = span_minimum(T, vecs)
    rough = span_minimum(T, vecs, Limits(functionals=0, samples=300), seed=[0])
    assert rough.method == "random" and not rough.exact
    assert rough.ratio_square >= exact_r.ratio_square
    with pytest.raises(UndecidedError):
        ratio_at_least(T, vecs, Q(1, 100), Limits(functionals=0, samples=50))
    assert ratio_at_least(T, vecs, Q(1, 3)) is False
    assert ratio_at_least(T, vecs, Q(1, 4)) is True
