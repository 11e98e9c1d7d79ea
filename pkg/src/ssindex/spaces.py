"""Exact norms on finitely supported rational vectors.

Supported norms: l1, l2, linf, the Schreier norm
``sup_{F in S_xi} sum_{i in F} |x_i|`` and the Tsirelson-type norm
T[S_xi, theta], the least solution of

    ||x|| = max(||x||_inf, theta * sup sum_i ||E_i x||)

over block sequences E_1 < ... < E_d with {min E_i} in S_xi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .ordinal import Ordinal, as_ordinal, parse_ordinal
from .schreier import _member, automaton_friendly, format_set, initial_state, step

__all__ = [
    "RationalVector",
    "NormDescriptor",
    "Enclosure",
    "parse_rational",
    "format_rational",
    "parse_vector",
    "parse_norm",
    "norm",
    "norm_squared",
    "dual_witness",
    "evaluate_witness",
    "dual_functionals",
    "norming_functional",
    "sqrt_enclosure",
]


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad token {text!r} (rule 'rational := p | p/q')") from None


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RationalVector:
    """Finitely supported vector: sorted (index, nonzero Fraction) pairs."""

    __slots__ = ("items", "_hash")

    def __init__(self, entries: Union[Dict[int, object], Iterable[Tuple[int, object]]] = ()):
        if isinstance(entries, dict):
            entries = entries.items()
        acc: Dict[int, Fraction] = {}
        for i, q in entries:
            i = int(i)
            if i < 1:
                raise ValueError(f"basis indices start at 1, got {i}")
            acc[i] = acc.get(i, Fraction(0)) + Fraction(q)
        self.items: Tuple[Tuple[int, Fraction], ...] = tuple(
            sorted((i, q) for i, q in acc.items() if q)
        )
        self._hash = None

    @classmethod
    def basis(cls, i: int, scale=1) -> "RationalVector":
        return cls({i: scale})

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.items)

    def __getitem__(self, i: int) -> Fraction:
        for j, q in self.items:
            if j == i:
                return q
        return Fraction(0)

    def __bool__(self):
        return bool(self.items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __add__(self, other: "RationalVector") -> "RationalVector":
        return RationalVector(self.items + other.items)

    def __neg__(self):
        return RationalVector((i, -q) for i, q in self.items)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return RationalVector((i, q * s) for i, q in self.items)

    __rmul__ = __mul__

    def restrict(self, indices) -> "RationalVector":
        keep = set(indices)
        return RationalVector((i, q) for i, q in self.items if i in keep)

    def __eq__(self, other):
        if not isinstance(other, RationalVector):
            return NotImplemented
        return self.items == other.items

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.items)
        return self._hash

    def __str__(self):
        return "[" + ", ".join(f"{i}:{format_rational(q)}" for i, q in self.items) + "]"

    def __repr__(self):
        return f"RationalVector('{self}')"


def parse_vector(text: str) -> RationalVector:
    """Parse ``[i1:q1, i2:q2, ...]`` with rationals written ``p/q``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"vector literal {text!r} must be enclosed in brackets (rule 'vector := [i:p/q,...]')")
    body = s[1:-1].strip()
    entries = []
    if body:
        for tok in body.split(","):
            if ":" not in tok:
                raise ValueError(f"bad token {tok.strip()!r} (rule 'entry := index:rational')")
            i, q = tok.split(":", 1)
            try:
                idx = int(i)
            except ValueError:
                raise ValueError(f"bad token {i.strip()!r} (rule 'entry := index:rational')") from None
            entries.append((idx, parse_rational(q)))
    idx = [i for i, _ in entries]
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated index in vector literal {text!r}")
    return RationalVector(entries)


@dataclass(frozen=True)
class NormDescriptor:
    kind: str  # l1, l2, linf, schreier, tsirelson
    xi: Optional[Ordinal] = None
    theta: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in ("l1", "l2", "linf", "schreier", "tsirelson"):
            raise ValueError(f"unsupported norm kind {self.kind!r}")
        if self.kind in ("schreier", "tsirelson"):
            if self.xi is None:
                raise ValueError(f"{self.kind} norm needs an ordinal")
            object.__setattr__(self, "xi", as_ordinal(self.xi))
        if self.kind == "tsirelson":
            theta = Fraction(self.theta if self.theta is not None else Fraction(1, 2))
            if not 0 < theta < 1:
                raise ValueError("tsirelson theta must lie strictly between 0 and 1")
            object.__setattr__(self, "theta", theta)

    @classmethod
    def ellp(cls, p) -> "NormDescriptor":
        kinds = {1: "l1", 2: "l2", "inf": "linf", math.inf: "linf"}
        if p not in kinds:
            raise ValueError(f"unsupported p={p!r}; only 1, 2 and inf")
        return cls(kinds[p])

    @classmethod
    def schreier(cls, xi) -> "NormDescriptor":
        return cls("schreier", as_ordinal(xi))

    @classmethod
    def tsirelson(cls, xi, theta=Fraction(1, 2)) -> "NormDescriptor":
        return cls("tsirelson", as_ordinal(xi), Fraction(theta))

    @property
    def polyhedral(self) -> bool:
        return self.kind != "l2"

    def __str__(self):
        if self.kind == "schreier":
            return f"schreier({self.xi})"
        if self.kind == "tsirelson":
            return f"tsirelson({self.xi},{format_rational(self.theta)})"
        return self.kind


def parse_norm(text: str) -> NormDescriptor:
    s = "".join(text.split())
    if s in ("l1", "l2", "linf"):
        return NormDescriptor(s)
    for kind in ("schreier", "tsirelson"):
        if s.startswith(kind + "(") and s.endswith(")"):
            args = s[len(kind) + 1:-1]
            if kind == "schreier":
                return NormDescriptor.schreier(parse_ordinal(args))
            if "," not in args:
                raise ValueError(f"tsirelson needs (<ord>,<rational>): {text!r}")
            o, q = args.rsplit(",", 1)
            return NormDescriptor.tsirelson(parse_ordinal(o), parse_rational(q))
    raise ValueError(
        f"bad norm descriptor {text!r}; expected l1 | l2 | linf | schreier(<ord>) | "
        "tsirelson(<ord>,<rational>)"
    )


# -- l2 enclosures ----------------------------------------------------------------


@dataclass(frozen=True)
class Enclosure:
    """Exact square of a norm plus a rational interval around its root."""

    square: Fraction
    lower: Fraction
    upper: Fraction

    def __str__(self):
        return f"sqrt({format_rational(self.square)})"


def sqrt_enclosure(q, bits: int = 64) -> Enclosure:
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative input")
    p, r = q.numerator, q.denominator
    scale = 1 << bits
    root = math.isqrt(p * r * scale * scale)
    lower = Fraction(root, r * scale)
    upper = lower if root * root == p * r * scale * scale else Fraction(root + 1, r * scale)
    return Enclosure(q, lower, upper)


# -- schreier norm --------------------------------------------------------------


def _schreier_opt(xi: Ordinal, idx: Tuple[int, ...], vals: Tuple[Fraction, ...]):
    """Best member of S_xi within ``idx``: returns (value, positions).

    Ties resolve to the shortest, then lexicographically least set, so the
    winner is the first optimum in length-lex enumeration order.
    """
    n = len(idx)
    suffix = [Fraction(0)] * (n + 1)
    for k in range(n - 1, -1, -1):
        suffix[k] = suffix[k + 1] + vals[k]
    best = [Fraction(-1), ()]

    def better(v, pos):
        bv, bp = best
        if v != bv:
            return v > bv
        return (len(pos), [idx[p] for p in pos]) < (len(bp), [idx[p] for p in bp])

    def rec(pos, total, start):
        if better(total, pos):
            best[0], best[1] = total, pos
        if start >= n or total + suffix[start] < best[0]:
            return
        rest = tuple(range(start, n))
        if _member(xi, tuple(idx[p] for p in pos + rest)):
            cand = pos + rest
            if better(total + suffix[start], cand):
                best[0], best[1] = total + suffix[start], cand
            return
        for k in range(start, n):
            nxt = pos + (k,)
            if _member(xi, tuple(idx[p] for p in nxt)):
                rec(nxt, total + vals[k], k + 1)

    rec((), Fraction(0), 0)
    return best[0], best[1]


# -- tsirelson norm ---------------------------------------------------------------


class _TsirelsonSolver:
    """Memoised evaluation on intervals of the support.

    WLOG blocks are consecutive runs of support positions tiling from the first
    chosen start to the end of the interval: moving a block minimum up to the
    first support point keeps admissibility (spreading) and enlarging a block
    never decreases its norm (1-unconditionality).  The single block equal to
    the whole interval is never useful and is excluded.
    """

    def __init__(self, xi: Ordinal, theta: Fraction, idx, vals):
        self.xi, self.theta = xi, theta
        self.idx, self.vals = tuple(idx), tuple(vals)
        n = len(self.idx)
        self.prefix = [Fraction(0)] * (n + 1)
        for k in range(n):
            self.prefix[k + 1] = self.prefix[k] + self.vals[k]
        self.memo = {}

    def l1(self, i, j):
        return self.prefix[j + 1] - self.prefix[i]

    def admissible(self, starts):
        return _member(self.xi, tuple(self.idx[p] for p in starts))

    def norm(self, i, j):
        """(value, witness) for the restriction to positions i..j."""
        key = (i, j)
        if key in self.memo:
            return self.memo[key]
        top = max(range(i, j + 1), key=lambda p: (self.vals[p], -p))
        value, witness = self.vals[top], ("coordinate", self.idx[top])
        blocks_value, starts = self.best_blocks(i, j)
        if starts is not None and self.theta * blocks_value > value:
            value = self.theta * blocks_value
            bounds = list(starts) + [j + 1]
            witness = (
                "blocks",
                tuple(
                    (self.idx[a:b], self.norm(a, b - 1)[1])
                    for a, b in zip(bounds, bounds[1:])
                ),
            )
        self.memo[key] = (value, witness)
        return value, witness

    def best_blocks(self, i, j):
        if automaton_friendly(self.xi):
            return self._best_blocks_dp(i, j)
        return self._best_blocks_dfs(i, j)

    def _best_blocks_dp(self, i, j):
        """Memoise on (open block start, admissibility state of the minima)."""
        xi, idx = self.xi, self.idx
        memo = {}

        def best_from(p, st, allow_close):
            key = (p, st, allow_close)
            if key in memo:
                return memo[key]
            best = (Fraction(-1), None)
            rest = range(p + 1, j + 1)
            st_all = st
            for q in rest:
                st_all = step(xi, st_all, idx[q])
                if st_all is None:
                    break
            if rest and st_all is not None:
                # every remaining point can open its own block: the l1 bound is attained
                memo[key] = (self.l1(p, j), tuple(rest))
                return memo[key]
            if allow_close:
                best = (self.norm(p, j)[0], ())
            for q in rest:
                st2 = step(xi, st, idx[q])
                if st2 is None:
                    continue
                tail_value, tail = best_from(q, st2, True)
                value = self.norm(p, q - 1)[0] + tail_value
                if value > best[0]:
                    best = (value, (q,) + tail)
            memo[key] = best
            return best

        best = (Fraction(-1), None)
        init = initial_state(xi)
        for s in range(i, j + 1):
            value, tail = best_from(s, step(xi, init, idx[s]), s != i)
            if tail is not None and value > best[0]:
                best = (value, (s,) + tail)
        return best

    def _best_blocks_dfs(self, i, j):
        """Depth-first search over admissible minima with branch and bound."""
        best = [Fraction(-1), None]
        piece = lambda a, b: self.norm(a, b)[0]

        def consider(total, starts):
            if total > best[0]:
                best[0], best[1] = total, starts

        def rec(starts, total):
            # starts[-1] opens the current block, which runs to some q-1 or to j
            p = starts[-1]
            if total + self.l1(p, j) <= best[0]:
                return
            rest = tuple(range(p + 1, j + 1))
            if rest and self.admissible(starts + rest):
                # all singletons: attains the l1 upper bound
                consider(total + self.l1(p, j), starts + rest)
                return
            if not (len(starts) == 1 and p == i):
                consider(total + piece(p, j), starts)
            for q in range(p + 1, j + 1):
                nxt = starts + (q,)
                if self.admissible(nxt):
                    rec(nxt, total + piece(p, q - 1))

        for s in range(i, j + 1):
            if self.admissible((s,)):
                rec((s,), Fraction(0))
        return best[0], best[1]


@lru_cache(maxsize=4096)
def _tsirelson(xi, theta, idx, vals):
    solver = _TsirelsonSolver(xi, theta, idx, vals)
    return solver.norm(0, len(idx) - 1)


def _abs_parts(x: RationalVector):
    return tuple(i for i, _ in x.items), tuple(abs(q) for _, q in x.items)


def norm(d: NormDescriptor, x: RationalVector):
    """Exact norm (a Fraction); for l2 an :class:`Enclosure` of the root."""
    if not x:
        return Fraction(0) if d.kind != "l2" else sqrt_enclosure(0)
    idx, vals = _abs_parts(x)
    if d.kind == "l1":
        return sum(vals, Fraction(0))
    if d.kind == "linf":
        return max(vals)
    if d.kind == "l2":
        return sqrt_enclosure(sum(v * v for v in vals))
    if d.kind == "schreier":
        return _schreier_opt(d.xi, idx, vals)[0]
    return _tsirelson(d.xi, d.theta, idx, vals)[0]


def norm_squared(d: NormDescriptor, x: RationalVector) -> Fraction:
    """Exact square of the norm, for every kind."""
    if d.kind == "l2":
        return sum((q * q for _, q in x.items), Fraction(0))
    v = norm(d, x)
    return v * v


def dual_witness(d: NormDescriptor, x: RationalVector):
    """The optimiser realising ``norm(d, x)``.

    Schreier: the set F (first optimum in length-lex order).  Tsirelson: a
    nested structure, either ``("coordinate", i)`` or
    ``("blocks", ((support, sub_witness), ...))``.
    """
    if d.kind not in ("schreier", "tsirelson"):
        raise ValueError(f"dual_witness is only defined for schreier/tsirelson, not {d}")
    if not x:
        return () if d.kind == "schreier" else None
    idx, vals = _abs_parts(x)
    if d.kind == "schreier":
        return tuple(idx[p] for p in _schreier_opt(d.xi, idx, vals)[1])
    return _tsirelson(d.xi, d.theta, idx, vals)[1]


def evaluate_witness(d: NormDescriptor, witness, x: RationalVector) -> Fraction:
    """Re-evaluate a witness from :func:`dual_witness`, checking admissibility."""
    if d.kind == "schreier":
        if not _member(d.xi, tuple(witness)):
            raise ValueError(f"{format_set(witness)} is not in S_{d.xi}")
        return sum((abs(x[i]) for i in witness), Fraction(0))
    if witness is None:
        return Fraction(0)
    tag, body = witness
    if tag == "coordinate":
        return abs(x[body])
    mins = tuple(support[0] for support, _ in body)
    if not _member(d.xi, mins):
        raise ValueError(f"block minima {format_set(mins)} are not S_{d.xi}-admissible")
    for (a, _), (b, _) in zip(body, body[1:]):
        if not a[-1] < b[0]:
            raise ValueError("blocks are not successive")
    total = sum(
        (evaluate_witness(d, sub, x.restrict(support)) for support, sub in body), Fraction(0)
    )
    return d.theta * total


def witness_to_json(d: NormDescriptor, witness):
    if d.kind == "schreier":
        return {"F": list(witness)}
    if witness is None:
        return None
    tag, body = witness
    if tag == "coordinate":
        return {"coordinate": body}
    return {
        "theta": format_rational(d.theta),
        "blocks": [{"support": list(s), "witness": witness_to_json(d, w)} for s, w in body],
    }


def norming_functional(d: NormDescriptor, y: RationalVector) -> Dict[int, Fraction]:
    """Nonnegative weights w (index -> weight) with sum w_i |y_i| = ||y||.

    Every weight vector returned is one of the norm's dual functionals, so
    ``sum w_i |z_i| <= ||z||`` holds for all z.
    """
    if d.kind == "l2":
        raise ValueError("l2 has no polyhedral norming functional")
    if not y:
        return {}
    idx, vals = _abs_parts(y)
    if d.kind == "l1":
        return {i: Fraction(1) for i in idx}
    if d.kind == "linf":
        top = max(range(len(idx)), key=lambda p: (vals[p], -p))
        return {idx[top]: Fraction(1)}
    if d.kind == "schreier":
        return {i: Fraction(1) for i in dual_witness(d, y)}

    def weights(w, scale, out):
        tag, body = w
        if tag == "coordinate":
            out[body] = out.get(body, Fraction(0)) + scale
        else:
            for _, sub in body:
                weights(sub, scale * d.theta, out)
        return out

    return weights(dual_witness(d, y), Fraction(1), {})


# -- dual functionals (polyhedral representation) -----------------------------


def _drop_dominated(funcs: List[Tuple[Fraction, ...]]) -> List[Tuple[Fraction, ...]]:
    funcs = sorted(set(funcs), key=lambda f: (-sum(f), f))
    kept: List[Tuple[Fraction, ...]] = []
    for f in funcs:
        if not any(all(a <= b for a, b in zip(f, g)) for g in kept):
            kept.append(f)
    return kept


def dual_functionals(d: NormDescriptor, support, limit: int = 4096):
    """Nonnegative weight vectors w with ||y|| = max_w sum_i w_i |y_i|.

    Valid for every y supported in ``support`` (sorted tuple of indices).  The
    list has dominated weights removed and is ordered deterministically.
    Returns None when the representation would exceed ``limit`` weights, and
    for l2, which is not polyhedral.
    """
    S = tuple(sorted(support))
    n = len(S)
    one = Fraction(1)
    if d.kind == "l2":
        return None
    if n == 0:
        return []
    if d.kind == "l1":
        return [tuple(one for _ in S)]
    if d.kind == "linf":
        return [tuple(one if k == p else Fraction(0) for k in range(n)) for p in range(n)]
    if d.kind == "schreier":
        from .schreier import iter_maximal

        out = []
        for G in iter_maximal(d.xi, S):
            gs = set(G)
            out.append(tuple(one if s in gs else Fraction(0) for s in S))
            if len(out) > limit:
                return None
        return _drop_dominated(out)
    return _tsirelson_functionals(d.xi, d.theta, S, limit)


def _tsirelson_functionals(xi, theta, S, limit):
    n = len(S)
    zero = Fraction(0)
    memo = {}

    class _TooMany(Exception):
        pass

    def funcs(i, j):
        # weights over positions i..j (length j-i+1)
        if (i, j) in memo:
            return memo[(i, j)]
        out = [tuple(Fraction(1) if k == p else zero for k in range(i, j + 1)) for p in range(i, j + 1)]

        def rec(starts):
            p = starts[-1]
            if not (len(starts) == 1 and p == i):
                yield starts
            for q in range(p + 1, j + 1):
                nxt = starts + (q,)
                if _member(xi, tuple(S[k] for k in nxt)):
                    yield from rec(nxt)

        for s in range(i, j + 1):
            if s < j and _member(xi, tuple(S[k] for k in range(s, j + 1))):
                # all singletons from s on: dominates every other choice starting at s
                out.append(tuple(zero if k < s else theta for k in range(i, j + 1)))
                continue
            for starts in rec((s,)):
                bounds = list(starts) + [j + 1]
                combos = [tuple(zero for _ in range(i, starts[0]))]
                for a, b in zip(bounds, bounds[1:]):
                    sub = funcs(a, b - 1)
                    combos = [c + f for c in combos for f in sub]
                    if len(combos) > limit:
                        raise _TooMany
                out.extend(tuple(theta * w for w in c) for c in combos)
                if len(out) > 4 * limit:
                    out = _drop_dominated(out)
                    if len(out) > limit:
                        raise _TooMany
        out = _drop_dominated(out)
        if len(out) > limit:
            raise _TooMany
        memo[(i, j)] = out
        return out

    try:
        return funcs(0, n - 1)
    except _TooMany:
        return None
