"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents, so structural equality is ordinal equality.
Limit ordinals carry the Wainer fundamental sequences; every Schreier family
at a limit stage is built relative to that fixed choice.

Text syntax (ASCII)::

    ord  := term ('+' term)*
    term := atom ('*' nat)?
    atom := nat | 'w' | 'w^' atom | 'w^(' ord ')'
"""

from __future__ import annotations

from functools import total_ordering
from typing import NamedTuple, Optional, Tuple, Union

__all__ = [
    "Ordinal",
    "OrdinalSyntaxError",
    "Classification",
    "ZERO",
    "ONE",
    "OMEGA",
    "as_ordinal",
    "compare",
    "add",
    "mul",
    "omega_pow",
    "classify",
    "fundamental_sequence",
    "parse_ordinal",
]


class OrdinalSyntaxError(ValueError):
    """Raised by :func:`parse_ordinal` with the offending token and rule."""

    def __init__(self, text, pos, rule, expected):
        token = text[pos] if pos < len(text) else "<end>"
        self.text, self.pos, self.rule, self.token = text, pos, rule, token
        super().__init__(
            f"unexpected token {token!r} at position {pos} in rule '{rule}' "
            f"(expected {expected}) while parsing {text!r}"
        )


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        terms = tuple((as_ordinal(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if c < 1:
                raise ValueError("Cantor normal form coefficients must be >= 1")
            if i and not e < terms[i - 1][0]:
                raise ValueError("Cantor normal form exponents must strictly decrease")
        self.terms: Tuple[Tuple[Ordinal, int], ...] = terms
        self._hash = None

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((ZERO, n),)) if n else ZERO

    # -- basic predicates -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    @property
    def kind(self) -> str:
        return classify(self).kind

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.from_int(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        if isinstance(other, int):
            other = as_ordinal(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        return add(self, as_ordinal(other))

    def __radd__(self, other):
        return add(as_ordinal(other), self)

    def __mul__(self, other):
        return mul(self, as_ordinal(other))

    def __rmul__(self, other):
        return mul(as_ordinal(other), self)

    # -- text -----------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e.is_zero():
                parts.append(str(c))
                continue
            if e == ONE:
                s = "w"
            elif e.is_finite() or (len(e.terms) == 1 and e.terms[0][1] == 1):
                s = f"w^{e}"
            else:
                s = f"w^({e})"
            parts.append(s if c == 1 else f"{s}*{c}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Ordinal('{self}')"

    def __reduce__(self):
        return (parse_ordinal, (str(self),))


def as_ordinal(value: Union[Ordinal, int, str]) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not an ordinal")
    if isinstance(value, int):
        return Ordinal.from_int(value)
    if isinstance(value, str):
        return parse_ordinal(value)
    raise TypeError(f"cannot interpret {value!r} as an ordinal")


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    kept = []
    for e, c in a.terms:
        cmp = compare(e, lead)
        if cmp > 0:
            kept.append((e, c))
        elif cmp == 0:
            kept.append((e, c + b.terms[0][1]))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if a.is_zero() or b.is_zero():
        return ZERO
    lead_exp, lead_coeff = a.terms[0]
    out = ZERO
    # right distributivity over the CNF terms of b
    for e, c in b.terms:
        if e.is_zero():
            piece = Ordinal(((lead_exp, lead_coeff * c),) + a.terms[1:])
        else:
            piece = Ordinal(((add(lead_exp, e), c),))
        out = add(out, piece)
    return out


def omega_pow(a: Ordinal) -> Ordinal:
    """``w^a``."""
    return Ordinal(((as_ordinal(a), 1),))


class Classification(NamedTuple):
    kind: str  # "zero", "successor" or "limit"
    predecessor: Optional[Ordinal] = None


def classify(a: Ordinal) -> Classification:
    if a.is_zero():
        return Classification("zero")
    e, c = a.terms[-1]
    if not e.is_zero():
        return Classification("limit")
    body = a.terms[:-1] + (((ZERO, c - 1),) if c > 1 else ())
    return Classification("successor", Ordinal(body))


def fundamental_sequence(a: Ordinal, n: int) -> Ordinal:
    """The ``n``-th term (n >= 1) of the Wainer fundamental sequence of limit ``a``.

    (g + w^(b+1))[n] = g + w^b * n and (g + w^l)[n] = g + w^(l[n]) for limit l.
    """
    a = as_ordinal(a)
    if n < 1:
        raise ValueError("fundamental sequence index must be >= 1")
    if classify(a).kind != "limit":
        raise ValueError(f"{a} is not a limit ordinal")
    e, c = a.terms[-1]
    head = Ordinal(a.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    cls = classify(e)
    if cls.kind == "successor":
        tail = Ordinal(((cls.predecessor, n),))
    else:
        tail = omega_pow(fundamental_sequence(e, n))
    return add(head, tail)


# -- parsing -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.src = text
        self.text = "".join(text.split())
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def expect(self, ch, rule):
        if self.peek() != ch:
            raise OrdinalSyntaxError(self.text, self.pos, rule, repr(ch))
        self.pos += 1

    def nat(self, rule):
        start = self.pos
        while self.peek() is not None and self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise OrdinalSyntaxError(self.text, self.pos, rule, "a natural number")
        return int(self.text[start:self.pos])

    def ord(self):
        out = self.term()
        while self.peek() == "+":
            self.pos += 1
            out = add(out, self.term())
        return out

    def term(self):
        base = self.atom()
        if self.peek() == "*":
            self.pos += 1
            base = mul(base, Ordinal.from_int(self.nat("term")))
        return base

    def atom(self):
        ch = self.peek()
        if ch is not None and ch.isdigit():
            return Ordinal.from_int(self.nat("atom"))
        if ch != "w":
            raise OrdinalSyntaxError(self.text, self.pos, "atom", "a natural number or 'w'")
        self.pos += 1
        if self.peek() != "^":
            return OMEGA
        self.pos += 1
        if self.peek() == "(":
            self.pos += 1
            inner = self.ord()
            self.expect(")", "atom")
            return omega_pow(inner)
        return omega_pow(self.atom())

    def parse(self):
        if not self.text:
            raise OrdinalSyntaxError(self.text, 0, "ord", "an ordinal expression")
        out = self.ord()
        if self.pos != len(self.text):
            raise OrdinalSyntaxError(self.text, self.pos, "ord", "'+' or end of input")
        return out


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``text`` (e.g. ``"w^2*3+w+5"``) into canonical form."""
    return _Parser(text).parse()
