"""Schreier families S_xi of finite subsets of the positive integers.

Finite sets are plain tuples of strictly increasing positive ints; the empty
tuple is the empty set and belongs to every family.  Limit stages use the
Wainer fundamental sequences from :mod:`ssindex.ordinal`.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator, List, Tuple

from .ordinal import Ordinal, as_ordinal, classify, fundamental_sequence

FiniteSet = Tuple[int, ...]

__all__ = [
    "FiniteSet",
    "as_finite_set",
    "parse_set",
    "format_set",
    "member",
    "min_blocks",
    "is_maximal",
    "enumerate_family",
    "iter_members",
    "iter_maximal",
    "automaton_friendly",
    "initial_state",
    "step",
    "state_of",
]


def as_finite_set(elements: Iterable[int]) -> FiniteSet:
    """Validate and normalise to a strictly increasing tuple of positive ints."""
    out = tuple(int(e) for e in elements)
    if any(e < 1 for e in out):
        raise ValueError(f"set elements must be positive integers: {out}")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise ValueError(f"set elements must be strictly increasing: {out}")
    return out


def parse_set(text: str) -> FiniteSet:
    """Parse a literal such as ``{2,3,10}`` (``{}`` is the empty set)."""
    s = "".join(text.split())
    if not (s.startswith("{") and s.endswith("}")):
        raise ValueError(f"set literal {text!r} must be enclosed in braces (rule 'set := {{nat,...}}')")
    body = s[1:-1]
    if not body:
        return ()
    try:
        items = [int(tok) for tok in body.split(",")]
    except ValueError:
        bad = next(tok for tok in body.split(",") if not tok.lstrip("-").isdigit())
        raise ValueError(f"bad token {bad!r} in {text!r} (rule 'set := {{nat,...}}')") from None
    return as_finite_set(items)


def format_set(F: Iterable[int]) -> str:
    return "{" + ",".join(str(e) for e in F) + "}"


@lru_cache(maxsize=None)
def _member(xi: Ordinal, F: FiniteSet) -> bool:
    if not F:
        return True
    cls = classify(xi)
    if cls.kind == "zero":
        return len(F) == 1
    if cls.kind == "successor":
        return _min_blocks(cls.predecessor, F) <= F[0]
    return any(_member(fundamental_sequence(xi, n), F) for n in range(1, F[0] + 1))


@lru_cache(maxsize=None)
def _min_blocks(zeta: Ordinal, F: FiniteSet):
    count, i = 0, 0
    while i < len(F):
        j = i
        # by hereditarity, the members among F[i:j] form an initial run in j
        while j < len(F) and _member(zeta, F[i:j + 1]):
            j += 1
        if j == i:
            return math.inf
        count += 1
        i = j
    return count


def member(xi, F) -> bool:
    """True iff the finite set ``F`` lies in the Schreier family ``S_xi``."""
    return _member(as_ordinal(xi), as_finite_set(F))


def min_blocks(zeta, F):
    """Least number of consecutive S_zeta pieces that ``F`` splits into.

    Greedy longest-prefix decomposition; optimal because S_zeta is hereditary.
    Returns ``math.inf`` if some singleton is not in S_zeta (cannot happen for
    Schreier families, kept for completeness).
    """
    F = as_finite_set(F)
    if not F:
        raise ValueError("min_blocks is undefined for the empty set")
    return _min_blocks(as_ordinal(zeta), F)


def is_maximal(xi, F, guard: int = 0) -> bool:
    """True iff no ``m > max F`` extends ``F`` inside ``S_xi``.

    Only ``max F + 1`` is probed.  A positive ``guard`` additionally scans
    ``m <= max F + guard``; by spreading the extra probes never change the
    answer, which the test-suite checks.
    """
    xi, F = as_ordinal(xi), as_finite_set(F)
    if not _member(xi, F):
        raise ValueError(f"{format_set(F)} is not a member of S_{xi}")
    top = F[-1] if F else 0
    probes = range(top + 1, top + 2 + max(guard - 1, 0))
    return not any(_member(xi, F + (m,)) for m in probes)


def enumerate_family(xi, N: int) -> List[FiniteSet]:
    """All members of S_xi inside {1..N}, in length-lexicographic order."""
    xi = as_ordinal(xi)
    if N < 1:
        raise ValueError("N must be >= 1")
    level: List[FiniteSet] = [()]
    out = [()]
    while level:
        nxt = []
        for F in level:
            top = F[-1] if F else 0
            for m in range(top + 1, N + 1):
                G = F + (m,)
                if _member(xi, G):
                    nxt.append(G)
        out.extend(nxt)
        level = nxt
    return out


def iter_members(xi, universe: Iterable[int]) -> Iterator[FiniteSet]:
    """Lazily yield members of S_xi drawn from ``universe``, in lex (DFS) order.

    The empty set is not yielded.
    """
    xi = as_ordinal(xi)
    pool = as_finite_set(sorted(set(universe)))

    def rec(F, start):
        for k in range(start, len(pool)):
            G = F + (pool[k],)
            if _member(xi, G):
                yield G
                yield from rec(G, k + 1)

    yield from rec((), 0)


def iter_maximal(xi, universe: Iterable[int]) -> Iterator[FiniteSet]:
    """Members of S_xi inside ``universe`` that no element of ``universe`` extends.

    Spans of subsets are contained in spans of supersets, so these are the
    only candidates a witness search has to look at.  Lex (DFS) order.
    """
    xi = as_ordinal(xi)
    pool = as_finite_set(sorted(set(universe)))
    for F in iter_members(xi, pool):
        present = set(F)
        if not any(
            m not in present and _member(xi, tuple(sorted(F + (m,)))) for m in pool
        ):
            yield F


# -- incremental membership ------------------------------------------------------
#
# Reading a set left to right, membership in S_xi only depends on a small
# state: successor stages track (min, closed greedy pieces, state of the open
# piece); limit stages track the still-alive n <= min.  States are hashable,
# which lets dynamic programs memoise on "how much room is left".


def automaton_friendly(xi) -> bool:
    """True below w^2, where states stay small; limits of limits track
    every n <= min and grow like min ** depth."""
    xi = as_ordinal(xi)
    return xi.is_zero() or xi.terms[0][0] <= 1


def initial_state(xi):
    """State of the empty set."""
    kind = classify(as_ordinal(xi)).kind
    if kind == "zero":
        return 0
    return (0, 0, None) if kind == "successor" else (0, ())


@lru_cache(maxsize=None)
def step(xi: Ordinal, state, m: int):
    """State after appending ``m`` (larger than every element so far); None if dead."""
    cls = classify(xi)
    if cls.kind == "zero":
        return 1 if state == 0 else None
    if cls.kind == "successor":
        zeta = cls.predecessor
        mn, closed, open_state = state
        if mn == 0:
            return (m, 0, step(zeta, initial_state(zeta), m))
        extended = step(zeta, open_state, m)
        if extended is not None:
            return (mn, closed, extended)
        if closed + 2 > mn:
            return None
        return (mn, closed + 1, step(zeta, initial_state(zeta), m))
    mn, alive = state
    if mn == 0:
        subs = []
        for n in range(1, m + 1):
            sub = fundamental_sequence(xi, n)
            subs.append((n, step(sub, initial_state(sub), m)))
        return (m, tuple(subs))
    nxt = []
    for n, sub_state in alive:
        st = step(fundamental_sequence(xi, n), sub_state, m)
        if st is not None:
            nxt.append((n, st))
    return (mn, tuple(nxt)) if nxt else None


def state_of(xi, F):
    """Fold :func:`step` over ``F``; None iff F is not in S_xi."""
    xi = as_ordinal(xi)
    st = initial_state(xi)
    for m in F:
        st = step(xi, st, m)
        if st is None:
            return None
    return st


def clear_caches() -> None:
    _member.cache_clear()
    _min_blocks.cache_clear()
    step.cache_clear()
