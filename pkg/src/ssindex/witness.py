"""Certificate search, witness trees and empirical index brackets."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Dict, List, Optional, Sequence, Tuple

from .operators import BasicSequence, Operator
from .ordinal import Ordinal, as_ordinal
from .schreier import FiniteSet, iter_maximal, member
from .spaces import format_rational
from .spans import Limits, SpanMinimum, UndecidedError, ratio_at_least, ratio_json, span_minimum, vector_ratio
from .trees import Evidence, explore

__all__ = [
    "Certificate",
    "Failure",
    "UndecidedError",
    "WitnessTreeSpec",
    "WitnessTree",
    "witness_search",
    "verify_certificate",
    "node_admitted",
    "build_witness_tree",
    "index_estimate",
]


@dataclass(frozen=True)
class Certificate:
    xi: Ordinal
    epsilon: Fraction
    F: FiniteSet
    coefficients: Tuple[Fraction, ...]
    ratio_square: Fraction
    ratio: Optional[Fraction]
    seed: int
    exact: bool  # whether the span minimum was certified (informational)

    found = True

    def to_json(self) -> Dict:
        return {
            "xi": str(self.xi),
            "epsilon": format_rational(self.epsilon),
            "F": list(self.F),
            "coefficients": [format_rational(a) for a in self.coefficients],
            "ratio": ratio_json(self.ratio_square, self.ratio),
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Failure:
    """No witness below epsilon among the sets searched.

    This is not evidence against strict singularity at a larger scale.
    ``exhaustive`` is True when every candidate set was searched and every
    span minimum was computed exactly, so best_ratio is the true minimum over
    S_xi inside the index range of the sequence.
    """

    xi: Ordinal
    epsilon: Fraction
    best_ratio_square: Optional[Fraction]
    best_ratio: Optional[Fraction]
    best_F: FiniteSet
    best_coefficients: Tuple[Fraction, ...]
    sets_searched: int
    exhaustive: bool
    seed: int

    found = False

    def to_json(self) -> Dict:
        best = None
        if self.best_ratio_square is not None:
            best = ratio_json(self.best_ratio_square, self.best_ratio)
        return {
            "xi": str(self.xi),
            "epsilon": format_rational(self.epsilon),
            "best_ratio": best,
            "best_F": list(self.best_F),
            "best_coefficients": [format_rational(a) for a in self.best_coefficients],
            "sets_searched": self.sets_searched,
            "exhaustive": self.exhaustive,
            "seed": self.seed,
        }


def _trim(F: FiniteSet, sm: SpanMinimum):
    keep = [(n, a) for n, a in zip(F, sm.coefficients) if a]
    return tuple(n for n, _ in keep), tuple(a for _, a in keep)


def _order_key(F, coeffs):
    return (F, coeffs)


def _evaluate(T, seq, F, limits, seed):
    sm = span_minimum(T, [seq[n] for n in F], limits, seed=[seed, *F])
    G, coeffs = _trim(F, sm)
    return sm, G, coeffs


def witness_search(
    T: Operator,
    xi,
    epsilon,
    seq: BasicSequence,
    *,
    mode: str = "best",
    max_sets: Optional[int] = None,
    samples: int = 10000,
    seed: int = 0,
    threads: int = 1,
    limits: Optional[Limits] = None,
):
    """Look for ``F`` in S_xi and ``x`` in the span of ``(x_n)_{n in F}`` with
    ``||T x|| < epsilon ||x||``.

    Candidates are the S_xi sets inside ``{1..len(seq)}`` that cannot be
    extended there (spans of subsets sit inside spans of supersets), taken in
    lexicographic order.  ``mode="best"`` scans all of them and returns the
    smallest ratio (ties: lex-least support, then least coefficients);
    ``mode="first"`` stops at the first candidate beating epsilon.
    """
    xi = as_ordinal(xi)
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if len(seq) == 0:
        raise ValueError("basic sequence is empty")
    if mode not in ("best", "first"):
        raise ValueError(f"unknown mode {mode!r}")
    limits = limits or Limits(samples=samples)
    eps2 = epsilon * epsilon

    gen = iter_maximal(xi, range(1, len(seq) + 1))
    if max_sets is not None:
        gen = islice(gen, max_sets)
    best = None  # (ratio_square, G, coeffs, sm)
    searched = 0
    all_exact = True
    chunk = max(1, threads) * 8
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while True:
            block = list(islice(gen, chunk))
            if not block:
                break
            if pool is not None:
                results = list(pool.map(lambda F: _evaluate(T, seq, F, limits, seed), block))
            else:
                results = [_evaluate(T, seq, F, limits, seed) for F in block]
            for sm, G, coeffs in results:
                searched += 1
                all_exact = all_exact and sm.exact
                key = (sm.ratio_square, _order_key(G, coeffs))
                if best is None or key < (best[0], _order_key(best[1], best[2])):
                    best = (sm.ratio_square, G, coeffs, sm)
                if mode == "first" and sm.ratio_square < eps2:
                    return Certificate(xi, epsilon, G, coeffs, sm.ratio_square, sm.ratio, seed, sm.exact)
    finally:
        if pool is not None:
            pool.shutdown()
    truncated = max_sets is not None and searched == max_sets and any(
        True for _ in islice(iter_maximal(xi, range(1, len(seq) + 1)), max_sets, max_sets + 1)
    )

    if best is not None and best[0] < eps2:
        sq, G, coeffs, sm = best
        return Certificate(xi, epsilon, G, coeffs, sq, sm.ratio, seed, sm.exact)
    return Failure(
        xi,
        epsilon,
        best[0] if best else None,
        best[3].ratio if best else None,
        best[1] if best else (),
        best[2] if best else (),
        searched,
        all_exact and not truncated,
        seed,
    )


def verify_certificate(T: Operator, seq: BasicSequence, cert: Certificate) -> bool:
    """Re-check a certificate from scratch: F in S_xi, x nonzero, ratio < epsilon."""
    if not member(cert.xi, cert.F) or len(cert.F) != len(cert.coefficients):
        return False
    if any(not 1 <= n <= len(seq) for n in cert.F):
        return False
    x = seq.combine(cert.F, cert.coefficients)
    if not x:
        return False
    sq, _ = vector_ratio(T, x)
    return sq == cert.ratio_square and sq < cert.epsilon * cert.epsilon


# -- witness trees ------------------------------------------------------------


@dataclass(frozen=True)
class WitnessTreeSpec:
    operator: Operator
    m: int
    sequence: BasicSequence
    depth_bound: int
    width_bound: int
    increasing_only: bool = True

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if self.depth_bound < 1 or self.width_bound < 1:
            raise ValueError("bounds must be >= 1")
        if self.width_bound > len(self.sequence):
            raise ValueError(
                f"width bound {self.width_bound} exceeds the sequence length {len(self.sequence)}"
            )


@dataclass(frozen=True)
class WitnessTree:
    truncation: object  # FiniteTree
    verdict: str
    rank: int


def node_admitted(T: Operator, m: int, seq: BasicSequence, node: Sequence[int], limits: Optional[Limits] = None) -> bool:
    """True iff ``||T x|| >= ||x|| / m`` for every x in the span of the x_l, l in node.

    Raises :class:`UndecidedError` when this cannot be settled exactly.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    idx = sorted(set(node))
    for n in idx:
        if not 1 <= n <= len(seq):
            raise ValueError(f"node index {n} outside 1..{len(seq)}")
    if not idx:
        return True
    try:
        return ratio_at_least(T, [seq[n] for n in idx], Fraction(1, m), limits or Limits())
    except UndecidedError as exc:
        raise UndecidedError(f"node {tuple(node)}: {exc}") from None


def build_witness_tree(spec: WitnessTreeSpec, limits: Optional[Limits] = None) -> WitnessTree:
    """Bounded truncation of the tree of index tuples on whose spans T is
    bounded below by 1/m."""
    T, m, seq = spec.operator, spec.m, spec.sequence
    seen: Dict[Tuple[int, ...], bool] = {}

    def admit(node):
        key = tuple(sorted(set(node)))
        if key not in seen:
            seen[key] = node_admitted(T, m, seq, key, limits)
        ok = seen[key]
        if ok and node:
            # only children of admitted nodes are generated, so this holds
            # unless admission fails to be antitone
            assert admit(node[:-1]), f"prefix of admitted node {node} is not admitted"
        return ok

    ev: Evidence = explore(admit, spec.depth_bound, spec.width_bound, spec.increasing_only)
    return WitnessTree(ev.truncation, ev.verdict, ev.rank)


# -- index brackets -----------------------------------------------------------

EVIDENCE_NOTE = (
    "evidence only: certificates at a finite truncation do not prove membership "
    "in SS_xi, and failures do not disprove it"
)


def index_estimate(
    T: Operator,
    xi_grid: Sequence,
    eps_grid: Sequence,
    seq: BasicSequence,
    *,
    mode: str = "first",
    max_sets: Optional[int] = None,
    samples: int = 10000,
    seed: int = 0,
    threads: int = 1,
) -> Dict:
    """Run witness_search over a grid; the bracket is the least grid xi at
    which every epsilon produced a certificate."""
    xis = [as_ordinal(x) for x in xi_grid]
    epss = [Fraction(e) for e in eps_grid]
    if not xis or not epss:
        raise ValueError("grids must be nonempty")
    if any(b <= a for a, b in zip(xis, xis[1:])):
        raise ValueError("xi grid must be strictly ascending")
    rows: List[Dict] = []
    results = []
    bracket = None
    for xi in xis:
        all_ok = True
        for eps in epss:
            res = witness_search(
                T, xi, eps, seq, mode=mode, max_sets=max_sets, samples=samples, seed=seed, threads=threads
            )
            results.append(res)
            rows.append({"status": "certificate" if res.found else "failure", **res.to_json()})
            all_ok = all_ok and res.found
        if all_ok and bracket is None:
            bracket = xi
    return {
        "grid": rows,
        "bracket": None if bracket is None else str(bracket),
        "note": EVIDENCE_NOTE,
        "results": results,
    }
