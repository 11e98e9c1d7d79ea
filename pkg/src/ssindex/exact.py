"""Small dense exact linear algebra over Fractions.

Sizes here are a few dozen rows at most, so plain lists are fine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]


class LPResult:
    __slots__ = ("status", "value", "x", "ray")

    def __init__(self, status, value=None, x=None, ray=None):
        self.status = status  # "optimal" or "unbounded"
        self.value = value
        self.x = x
        self.ray = ray

    def __repr__(self):
        return f"LPResult({self.status!r}, value={self.value})"


def simplex_max(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximise ``c.x`` subject to ``A x <= b``, ``x >= 0``, with ``b >= 0``.

    The slack basis is feasible, so a single phase suffices.  Bland's rule
    prevents cycling.  On unboundedness, ``ray`` is a direction d >= 0 with
    ``A d <= 0`` and ``c.d > 0``.
    """
    m, n = len(A), len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("simplex_max needs b >= 0")
    # tableau rows: [A | I | b]
    T = [
        [Fraction(v) for v in row] + [Fraction(int(k == r)) for k in range(m)] + [Fraction(b[r])]
        for r, row in enumerate(A)
    ]
    obj = [-Fraction(v) for v in c] + [Fraction(0)] * (m + 1)
    basis = [n + r for r in range(m)]
    width = n + m
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for r in range(m):
            a = T[r][enter]
            if a > 0:
                ratio = T[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            ray = [Fraction(0)] * width
            ray[enter] = Fraction(1)
            for r in range(m):
                ray[basis[r]] = -T[r][enter]
            return LPResult("unbounded", ray=ray[:n])
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for r in range(m):
            if r != leave and T[r][enter]:
                f = T[r][enter]
                T[r] = [v - f * w for v, w in zip(T[r], T[leave])]
        if obj[enter]:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, T[leave])]
        basis[leave] = enter
    x = [Fraction(0)] * width
    for r in range(m):
        x[basis[r]] = T[r][-1]
    return LPResult("optimal", value=obj[-1], x=x[:n])


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Solve the square system ``A x = b``; None if singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(b[i])] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def null_vector(A: Sequence[Sequence]) -> Optional[List[Fraction]]:
    """A nonzero ``x`` with ``A x = 0`` (A is rows x cols), or None if injective."""
    rows = [[Fraction(v) for v in row] for row in A]
    ncols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [v / p for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [v - f * w for v, w in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    free = next((c for c in range(ncols) if c not in pivots), None)
    if free is None:
        return None
    x = [Fraction(0)] * ncols
    x[free] = Fraction(1)
    for k, col in enumerate(pivots):
        x[col] = -rows[k][free]
    return x


def gram(cols: Sequence[Sequence]) -> Matrix:
    """``M^T M`` for a matrix given by its columns."""
    return [[sum((a * b for a, b in zip(u, v)), Fraction(0)) for v in cols] for u in cols]


def is_psd(S: Sequence[Sequence]) -> bool:
    """Exact positive-semidefiniteness test via symmetric elimination.

    A zero pivot forces its whole row to vanish; otherwise the matrix is
    indefinite.
    """
    M = [[Fraction(v) for v in row] for row in S]
    n = len(M)
    for k in range(n):
        p = M[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(M[k][j] for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = M[i][k] / p
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
    return True


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(cols: Sequence[Sequence], a: Sequence) -> List[Fraction]:
    """Matrix (given by columns) times vector."""
    if not cols:
        return []
    out = [Fraction(0)] * len(cols[0])
    for col, coef in zip(cols, a):
        if coef:
            for k, v in enumerate(col):
                if v:
                    out[k] += coef * v
    return out


def vertices(constraints: Sequence[Tuple[Sequence, Fraction]], dim: int, limit: int = 200000):
    """Vertices of ``{a : w.a <= h}`` by brute force over dim-subsets of rows.

    Returns None when the number of subsets exceeds ``limit``.
    """
    from itertools import combinations
    from math import comb

    rows = [([Fraction(v) for v in w], Fraction(h)) for w, h in constraints]
    if comb(len(rows), dim) > limit:
        return None
    found = []
    seen = set()
    for subset in combinations(range(len(rows)), dim):
        A = [rows[k][0] for k in subset]
        b = [rows[k][1] for k in subset]
        x = solve(A, b)
        if x is None:
            continue
        key = tuple(x)
        if key in seen:
            continue
        if all(dot(w, x) <= h for w, h in rows):
            seen.add(key)
            found.append(x)
    return found
