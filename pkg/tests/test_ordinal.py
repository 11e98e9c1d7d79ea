import pytest
from hypothesis import given, settings, strategies as st

from ssindex.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalSyntaxError,
    add,
    classify,
    compare,
    fundamental_sequence,
    mul,
    omega_pow,
    parse_ordinal,
)

P = parse_ordinal


def test_compare_examples():
    assert compare(OMEGA, Ordinal.from_int(3)) == 1
    assert compare(P("w^2+w*3"), P("w^2+w*2+5")) == 1
    assert compare(P("w^w+1"), P("w^w+1")) == 0


def test_add_mul_examples():
    assert add(ONE, OMEGA) == OMEGA
    assert add(P("w^2+w"), P("w^2")) == P("w^2*2")
    assert omega_pow(ZERO) == ONE
    assert omega_pow(ONE) == OMEGA
    assert mul(OMEGA, Ordinal.from_int(2)) == P("w*2")
    assert mul(Ordinal.from_int(2), OMEGA) == OMEGA
    assert mul(P("w+1"), P("w+1")) == P("w^2+w+1")


def test_classify_examples():
    c = classify(P("w+1"))
    assert c.kind == "successor" and c.predecessor == OMEGA
    assert classify(P("w*2")).kind == "limit"
    assert classify(ZERO).kind == "zero"


def test_fundamental_sequence_examples():
    assert fundamental_sequence(OMEGA, 3) == 3
    assert fundamental_sequence(P("w*2"), 4) == P("w+4")
    assert fundamental_sequence(P("w^w"), 2) == P("w^2")
    assert fundamental_sequence(P("w^2"), 3) == P("w*3")
    assert fundamental_sequence(P("w^(w+1)"), 2) == P("w^w*2")


def test_fundamental_sequence_rejects_non_limits():
    with pytest.raises(ValueError):
        fundamental_sequence(P("w+1"), 2)


def test_printing_is_canonical():
    assert str(P("w^2*3+w+5")) == "w^2*3+w+5"
    assert str(P("5+w")) == "w"
    assert str(P("w^(w+1)*2")) == "w^(w+1)*2"
    assert str(P("w^w^w")) == "w^w^w"
    assert str(P(" w ^ 2 ")) == "w^2"


@pytest.mark.parametrize(
    "text,rule",
    [("w^", "atom"), ("w+", "atom"), ("w*w", "term"), ("(w)", "atom"), ("w^(w", "atom"), ("3x", "ord")],
)
def test_parse_errors_name_token_and_rule(text, rule):
    with pytest.raises(OrdinalSyntaxError) as info:
        P(text)
    assert info.value.rule == rule
    assert "unexpected token" in str(info.value)


# -- properties --------------------------------------------------------------


def ordinals(depth=3):
    base = st.integers(0, 4).map(Ordinal.from_int)
    if depth == 0:
        return base

    def build(terms):
        terms = sorted(terms, key=lambda t: t[0], reverse=True)
        out, last = [], None
        for e, c in terms:
            if last is not None and not e < last:
                continue
            out.append((e, c))
            last = e
        return Ordinal(out)

    return st.one_of(
        base,
        st.lists(st.tuples(ordinals(depth - 1), st.integers(1, 3)), min_size=1, max_size=3).map(build),
    )


@settings(max_examples=200, deadline=None)
@given(ordinals())
def test_round_trip(a):
    assert P(str(a)) == a
    assert str(P(str(a))) == str(a)


@settings(max_examples=200, deadline=None)
@given(ordinals(), ordinals(), ordinals())
def test_order_and_arithmetic_laws(a, b, c):
    assert compare(a, b) == -compare(b, a)
    if compare(a, b) <= 0 and compare(b, c) <= 0:
        assert compare(a, c) <= 0
    if not b.is_zero():
        assert a < add(a, b)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@settings(max_examples=100, deadline=None)
@given(ordinals(), ordinals())
def test_outputs_are_in_normal_form(a, b):
    for r in (add(a, b), mul(a, b)):
        exps = [e for e, _ in r.terms]
        assert all(y < x for x, y in zip(exps, exps[1:]))
        assert all(k >= 1 for _, k in r.terms)


@settings(max_examples=100, deadline=None)
@given(ordinals())
def test_fundamental_sequences_increase_to_the_limit(a):
    if classify(a).kind != "limit":
        return
    prev = None
    for n in range(1, 51):
        cur = fundamental_sequence(a, n)
        assert cur < a
        if prev is not None:
            assert prev < cur
        prev = cur
