"""Trees on N: derivative, rank, Schreier trees and bounded exploration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, FrozenSet, Iterable, Tuple

from .ordinal import Ordinal, as_ordinal, omega_pow
from .schreier import enumerate_family

Node = Tuple[int, ...]

__all__ = [
    "FiniteTree",
    "Evidence",
    "derivative",
    "rank",
    "rank_by_node_ranks",
    "restricted_schreier_tree",
    "expected_schreier_order",
    "explore",
    "is_well_founded_evidence",
    "dumps",
    "loads",
]


def _shortlex(node: Node):
    return (len(node), node)


class FiniteTree:
    """Finite prefix-closed set of finite sequences of positive integers."""

    __slots__ = ("nodes",)

    def __init__(self, nodes: Iterable[Iterable[int]] = ()):
        nodes = frozenset(tuple(int(v) for v in n) for n in nodes)
        for n in nodes:
            if any(v < 1 for v in n):
                raise ValueError(f"tree node {n} has non-positive entries")
            if n and n[:-1] not in nodes:
                raise ValueError(f"tree is not prefix-closed: {n} lacks parent {n[:-1]}")
        self.nodes: FrozenSet[Node] = nodes

    def __contains__(self, node) -> bool:
        return tuple(node) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(sorted(self.nodes, key=_shortlex))

    def __eq__(self, other):
        if not isinstance(other, FiniteTree):
            return NotImplemented
        return self.nodes == other.nodes

    def __hash__(self):
        return hash(self.nodes)

    def __le__(self, other: "FiniteTree") -> bool:
        return self.nodes <= other.nodes

    def __repr__(self):
        return f"FiniteTree({sorted(self.nodes, key=_shortlex)})"

    def children(self, node: Node):
        return sorted(n for n in self.nodes if len(n) == len(node) + 1 and n[:-1] == node)


def derivative(T: FiniteTree) -> FiniteTree:
    """Nodes of ``T`` with a proper end-extension in ``T``."""
    return FiniteTree(n[:-1] for n in T.nodes if n)


def rank(T: FiniteTree) -> int:
    """Least k with the k-th derivative of ``T`` empty, by iterating the derivative."""
    k = 0
    while T.nodes:
        T = derivative(T)
        k += 1
    return k


def rank_by_node_ranks(T: FiniteTree) -> int:
    """Same quantity via node ranks: leaves rank 1, inner nodes 1 + max over children."""
    if not T.nodes:
        return 0
    node_rank = {}
    for n in sorted(T.nodes, key=len, reverse=True):
        node_rank.setdefault(n, 1)
        if n:
            parent = n[:-1]
            node_rank[parent] = max(node_rank.get(parent, 1), node_rank[n] + 1)
    return node_rank[()]


def restricted_schreier_tree(xi, N: int) -> FiniteTree:
    """Increasing sequences with entries <= N whose underlying set lies in S_xi."""
    return FiniteTree(enumerate_family(xi, N))


def expected_schreier_order(xi) -> Ordinal:
    """Order of the full (infinite) tree S_xi, namely w^xi; never computed."""
    return omega_pow(as_ordinal(xi))


@dataclass(frozen=True)
class Evidence:
    truncation: FiniteTree
    verdict: str  # "finite" or "hit-bound"

    @property
    def rank(self) -> int:
        return rank(self.truncation)


def explore(
    admit: Callable[[Node], bool],
    depth_bound: int,
    width_bound: int,
    increasing_only: bool = False,
) -> Evidence:
    """Breadth-first expansion of the tree ``{s : admit(s)}``.

    Nodes have entries <= ``width_bound`` and length <= ``depth_bound``; only
    children of admitted nodes are tried, so ``admit`` should be antitone under
    extension.  ``"hit-bound"`` means some node at the depth bound has an
    admitted child, so the bound cut the tree; it carries no claim about
    ill-foundedness.  ``"finite"`` means the truncation is the whole tree
    restricted to entries <= ``width_bound``.
    """
    if depth_bound < 1 or width_bound < 1:
        raise ValueError("bounds must be >= 1")
    if not admit(()):
        return Evidence(FiniteTree(), "finite")
    nodes = {()}
    hit = False
    queue = deque([()])
    while queue:
        node = queue.popleft()
        lo = node[-1] + 1 if (increasing_only and node) else 1
        for v in range(lo, width_bound + 1):
            child = node + (v,)
            if len(node) == depth_bound:
                # probe only: did the depth bound cut anything off?
                if not hit and admit(child):
                    hit = True
                continue
            if admit(child):
                nodes.add(child)
                queue.append(child)
    return Evidence(FiniteTree(nodes), "hit-bound" if hit else "finite")


def is_well_founded_evidence(admit, depth_bound: int, width_bound: int, increasing_only: bool = False):
    return explore(admit, depth_bound, width_bound, increasing_only)


# -- serialization: one node per line, root as "-", shortlex order ----------


def dumps(T: FiniteTree) -> str:
    lines = ["-" if not n else " ".join(map(str, n)) for n in T]
    return "".join(line + "\n" for line in lines)


def loads(text: str) -> FiniteTree:
    nodes = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        nodes.append(() if line == "-" else tuple(int(v) for v in line.split()))
    return FiniteTree(nodes)
