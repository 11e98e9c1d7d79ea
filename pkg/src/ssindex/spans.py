"""Minimising ||T x|| / ||x|| over the span of finitely many vectors.

Exact routes:

* both norms polyhedral: ``min ratio = 1 / max{||x|| : ||T x|| <= 1}``; the
  maximum of the convex domain norm is taken over its dual functionals, one
  exact LP each, with codomain constraints generated lazily from norming
  functionals;
* polyhedral domain, l2 codomain: closed form ``1 / max_c c^T G^-1 c``;
* l2 domain, polyhedral codomain: vertex enumeration of the codomain ball
  section;
* l2 on both sides: a rounded generalised eigenvector, with threshold
  questions settled exactly by a PSD test.

Anything over the size limits falls back to a seeded random rational search
with coordinate refinement, whose answer is an upper bound only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import exact
from .operators import Operator, apply
from .spaces import (
    RationalVector,
    dual_functionals,
    format_rational,
    norm,
    norm_squared,
    norming_functional,
    sqrt_enclosure,
)

__all__ = ["Limits", "SpanMinimum", "UndecidedError", "vector_ratio", "span_minimum", "ratio_at_least"]


class UndecidedError(RuntimeError):
    """A threshold question could not be settled within the exact-route limits."""


@dataclass(frozen=True)
class Limits:
    functionals: int = 2048  # dual functionals per norm
    programs: int = 4096  # LPs (functionals x sign patterns) per span
    vertices: int = 200000  # row subsets tried by vertex enumeration
    samples: int = 10000  # random directions on the fallback route
    refine_rounds: int = 6


@dataclass(frozen=True)
class SpanMinimum:
    coefficients: Tuple[Fraction, ...]
    ratio_square: Fraction
    ratio: Optional[Fraction]  # exact ratio when it is rational
    exact: bool  # True when the returned vector attains the minimum
    method: str

    def below(self, eps) -> bool:
        eps = Fraction(eps)
        return self.ratio_square < eps * eps

    def ratio_json(self):
        return ratio_json(self.ratio_square, self.ratio)


def ratio_json(square: Fraction, value: Optional[Fraction]):
    if value is not None:
        return format_rational(value)
    enc = sqrt_enclosure(square)
    return {
        "square": format_rational(square),
        "lower": format_rational(enc.lower),
        "upper": format_rational(enc.upper),
    }


def _normalise(a: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Scale so that max |a_i| = 1 and the first nonzero entry is positive."""
    a = [Fraction(v) for v in a]
    nz = [v for v in a if v]
    if not nz:
        return tuple(a)
    s = max(abs(v) for v in nz)
    if nz[0] < 0:
        s = -s
    return tuple(v / s for v in a)


def vector_ratio(T: Operator, x: RationalVector):
    """(exact square of ||Tx||/||x||, the ratio itself when rational)."""
    if not x:
        raise ValueError("ratio of the zero vector is undefined")
    y = apply(T, x)
    num, den = norm_squared(T.codomain, y), norm_squared(T.domain, x)
    sq = num / den
    if T.domain.polyhedral and T.codomain.polyhedral:
        return sq, norm(T.codomain, y) / norm(T.domain, x)
    return sq, None


class _Span:
    def __init__(self, T: Operator, vectors: Sequence[RationalVector]):
        self.T = T
        self.vectors = list(vectors)
        self.images = [apply(T, v) for v in self.vectors]
        self.dom = sorted({i for v in self.vectors for i in v.support})
        self.cod = sorted({i for v in self.images for i in v.support})
        dpos = {i: k for k, i in enumerate(self.dom)}
        cpos = {i: k for k, i in enumerate(self.cod)}
        self.X = [[Fraction(0)] * len(self.dom) for _ in self.vectors]  # columns
        self.M = [[Fraction(0)] * len(self.cod) for _ in self.vectors]
        for j, (v, w) in enumerate(zip(self.vectors, self.images)):
            for i, q in v.items:
                self.X[j][dpos[i]] = q
            for i, q in w.items:
                self.M[j][cpos[i]] = q
        self.k = len(self.vectors)
        self.lattice = self._lattice()

    def _lattice(self):
        """Distinct unit-vector multiples mapped to distinct unit-vector multiples.

        Then every norm involved only sees |a_j|, so a >= 0 loses nothing.
        """
        dom_rows, cod_rows = set(), set()
        for v, w in zip(self.vectors, self.images):
            if len(v) != 1 or len(w) > 1:
                return False
            dom_rows.add(v.support[0])
            if w:
                cod_rows.add(w.support[0])
        return len(dom_rows) == self.k and len(cod_rows) == sum(1 for w in self.images if w)

    def combine(self, a) -> RationalVector:
        out = RationalVector()
        for v, c in zip(self.vectors, a):
            if c:
                out = out + v * c
        return out

    def rows(self, cols):
        return [[col[r] for col in cols] for r in range(len(cols[0]))] if cols else []


def _result(span: _Span, a, method, exact_flag) -> SpanMinimum:
    a = _normalise(a)
    sq, value = vector_ratio(span.T, span.combine(a))
    return SpanMinimum(a, sq, value, exact_flag, method)


def _kernel(span: _Span):
    if not span.cod:
        return [Fraction(1)] + [Fraction(0)] * (span.k - 1)
    return exact.null_vector(span.rows(span.M))


def _objectives(span: _Span, limits: Limits):
    """Linear objectives c (over coefficients) whose max over a is ||X a||."""
    funcs = dual_functionals(span.T.domain, tuple(span.dom), limits.functionals)
    if funcs is None:
        return None
    out = []
    for f in funcs:
        supp = [s for s, w in enumerate(f) if w]
        patterns = itertools.product((1, -1), repeat=max(len(supp) - 1, 0))
        if span.lattice:
            c = [sum((f[s] * abs(col[s]) for s in supp), Fraction(0)) for col in span.X]
            out.append(c)
            continue
        for tail in patterns:
            sign = [0] * len(f)
            for s, sg in zip(supp, (1,) + tuple(tail)):
                sign[s] = sg
            c = [sum((sign[s] * f[s] * col[s] for s in supp), Fraction(0)) for col in span.X]
            out.append(c)
            if len(out) > limits.programs:
                return None
    return out


def _polyhedral(span: _Span, limits: Limits) -> Optional[SpanMinimum]:
    objectives = _objectives(span, limits)
    if objectives is None:
        return None
    k, n_cod = span.k, len(span.cod)
    cod = span.T.codomain
    # generated codomain functionals, as weight lists over span.cod
    gens: List[List[Fraction]] = [
        [Fraction(int(r == s)) for r in range(n_cod)] for s in range(n_cod)
    ]
    best_value, best_a = None, None
    for c in objectives:
        while True:
            if span.lattice:
                # variables a >= 0, |M a| is M a with |d_j| in place of d_j
                absM = [[abs(v) for v in col] for col in span.M]
                A = [[exact.dot(g, col) for col in absM] for g in gens]
                res = exact.simplex_max(c, A, [1] * len(A))
                a = res.x
                t = exact.mat_vec(absM, a) if res.status == "optimal" else None
            else:
                rows = span.rows(span.M)
                A, b = [], []
                for r, row in enumerate(rows):
                    e = [Fraction(-int(s == r)) for s in range(n_cod)]
                    A.append(list(row) + [-v for v in row] + e)
                    A.append([-v for v in row] + list(row) + e)
                    b += [0, 0]
                for g in gens:
                    A.append([Fraction(0)] * (2 * k) + list(g))
                    b.append(1)
                cc = list(c) + [-v for v in c] + [Fraction(0)] * n_cod
                res = exact.simplex_max(cc, A, b)
                if res.status == "optimal":
                    a = [p - q for p, q in zip(res.x[:k], res.x[k:2 * k])]
                    t = res.x[2 * k:]
            if res.status != "optimal":
                raise AssertionError("LP unbounded although the span map is injective")
            tv = RationalVector(zip(span.cod, t))
            if norm(cod, tv) <= 1:
                break
            w = norming_functional(cod, tv)
            gens.append([w.get(i, Fraction(0)) for i in span.cod])
        if best_value is None or res.value > best_value:
            best_value, best_a = res.value, a
    return _result(span, best_a, "lp", True)


def _poly_to_l2(span: _Span, limits: Limits) -> Optional[SpanMinimum]:
    objectives = _objectives(span, limits)
    if objectives is None:
        return None
    G = exact.gram(span.M)
    best_value, best_a = None, None
    for c in objectives:
        h = exact.solve(G, c)
        value = exact.dot(c, h)
        if best_value is None or value > best_value:
            best_value, best_a = value, h
    return _result(span, best_a, "quadratic", True)


def _l2_to_poly(span: _Span, limits: Limits) -> Optional[SpanMinimum]:
    funcs = dual_functionals(span.T.codomain, tuple(span.cod), limits.functionals)
    if funcs is None:
        return None
    k = span.k
    rows = []
    if span.lattice:
        absM = [[abs(v) for v in col] for col in span.M]
        rows = [([exact.dot(g, col) for col in absM], Fraction(1)) for g in funcs]
        rows += [([Fraction(-int(j == i)) for j in range(k)], Fraction(0)) for i in range(k)]
    else:
        for g in funcs:
            supp = [s for s, w in enumerate(g) if w]
            for signs in itertools.product((1, -1), repeat=len(supp)):
                w = [Fraction(0)] * len(g)
                for s, sg in zip(supp, signs):
                    w[s] = sg * g[s]
                rows.append(([exact.dot(w, col) for col in span.M], Fraction(1)))
                if len(rows) > limits.programs:
                    return None
    verts = exact.vertices(rows, k, limits.vertices)
    if verts is None:
        return None
    GX = exact.gram(span.X)
    best_value, best_a = None, None
    for v in verts:
        value = exact.dot(v, exact.mat_vec(GX, v))
        if best_value is None or value > best_value:
            best_value, best_a = value, v
    return _result(span, best_a, "vertices", True)


def _rationalise(vec, denominators=(16, 256, 4096, 1 << 16, 1 << 24, 1 << 40)):
    for den in denominators:
        yield [Fraction(float(v)).limit_denominator(den) for v in vec]


def _l2_to_l2(span: _Span) -> SpanMinimum:
    GX = np.array([[float(v) for v in row] for row in exact.gram(span.X)])
    GM = np.array([[float(v) for v in row] for row in exact.gram(span.M)])
    L = np.linalg.cholesky(GX)
    Li = np.linalg.inv(L)
    w, V = np.linalg.eigh(Li @ GM @ Li.T)
    vec = Li.T @ V[:, 0]
    vec = vec / np.max(np.abs(vec))
    best = None
    for a in _rationalise(vec):
        if not any(a):
            continue
        cand = _result(span, a, "eigen", False)
        if best is None or cand.ratio_square < best.ratio_square:
            best = cand
    GXq, GMq = exact.gram(span.X), exact.gram(span.M)
    t2 = best.ratio_square
    S = [[m - t2 * x for m, x in zip(rm, rx)] for rm, rx in zip(GMq, GXq)]
    if exact.is_psd(S):
        best = SpanMinimum(best.coefficients, best.ratio_square, best.ratio, True, "eigen")
    return best


def _random(span: _Span, limits: Limits, seed: int) -> SpanMinimum:
    rng = np.random.default_rng(seed)
    k = span.k
    lo = 0 if span.lattice else -8

    def evaluate(a):
        return vector_ratio(span.T, span.combine(a))[0]

    candidates = [[Fraction(1)] * k]
    candidates += [[Fraction(int(j == i)) for j in range(k)] for i in range(k)]
    if not span.lattice:
        candidates.append([Fraction((-1) ** j) for j in range(k)])
    for _ in range(limits.samples):
        draw = rng.integers(lo, 9, size=k)
        if draw.any():
            candidates.append([Fraction(int(v)) for v in draw])
    best_a, best_sq = None, None
    for a in candidates:
        sq = evaluate(a)
        if best_sq is None or sq < best_sq:
            best_a, best_sq = a, sq
    for rnd in range(limits.refine_rounds):
        step = Fraction(max(abs(v) for v in best_a), 2 ** (rnd + 1))
        improved = True
        while improved:
            improved = False
            for j in range(k):
                for delta in (step, -step):
                    a = list(best_a)
                    a[j] += delta
                    if (span.lattice and a[j] < 0) or not any(a):
                        continue
                    sq = evaluate(a)
                    if sq < best_sq:
                        best_a, best_sq, improved = a, sq, True
    return _result(span, best_a, "random", False)


def span_minimum(
    T: Operator,
    vectors: Sequence[RationalVector],
    limits: Limits = Limits(),
    seed: int = 0,
) -> SpanMinimum:
    """Least ||T x|| / ||x|| over nonzero x in the span of ``vectors``."""
    span = _Span(T, vectors)
    if span.k == 0:
        raise ValueError("empty span")
    ker = _kernel(span)
    if ker is not None:
        if not any(exact.mat_vec(span.X, ker)):
            raise ValueError("span vectors are linearly dependent")
        return _result(span, ker, "kernel", True)
    dom, cod = T.domain, T.codomain
    out = None
    if dom.polyhedral and cod.polyhedral:
        out = _polyhedral(span, limits)
    elif dom.polyhedral:
        out = _poly_to_l2(span, limits)
    elif cod.polyhedral:
        out = _l2_to_poly(span, limits)
    else:
        return _l2_to_l2(span)
    return out if out is not None else _random(span, limits, seed)


def ratio_at_least(
    T: Operator,
    vectors: Sequence[RationalVector],
    threshold: Fraction,
    limits: Limits = Limits(),
    seed: int = 0,
) -> bool:
    """Decide ``||T x|| >= threshold * ||x||`` for every x in the span.

    Raises :class:`UndecidedError` when only the random route applies and it
    finds no violating vector.
    """
    threshold = Fraction(threshold)
    span = _Span(T, vectors)
    if span.k == 0:
        return True
    if _kernel(span) is not None:
        return False
    if not (T.domain.polyhedral or T.codomain.polyhedral):
        GX, GM = exact.gram(span.X), exact.gram(span.M)
        t2 = threshold * threshold
        S = [[m - t2 * x for m, x in zip(rm, rx)] for rm, rx in zip(GM, GX)]
        return exact.is_psd(S)
    result = span_minimum(T, vectors, limits, seed)
    if result.exact:
        return result.ratio_square >= threshold * threshold
    if result.ratio_square < threshold * threshold:
        return False
    raise UndecidedError(
        f"min ratio over span of {len(vectors)} vectors vs {format_rational(threshold)} "
        "not decidable within the exact-route limits"
    )
