"""Column-finite rational operators between sequence spaces."""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .spaces import (
    NormDescriptor,
    RationalVector,
    format_rational,
    norm,
    norm_squared,
    parse_norm,
    parse_rational,
)

__all__ = [
    "Diagonal",
    "Identity",
    "MatrixAction",
    "Operator",
    "BasicSequence",
    "parse_rule",
    "parse_operator",
    "load_operator",
    "load_matrix",
    "apply",
]


# -- diagonal rules ----------------------------------------------------------------

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def _eval_rule(node, i: int) -> Fraction:
    if isinstance(node, ast.Expression):
        return _eval_rule(node.body, i)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.Name) and node.id == "i":
        return Fraction(i)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_rule(node.operand, i)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_rule(node.left, i), _eval_rule(node.right, i))
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Pow, ast.BitXor)):
        exp = _eval_rule(node.right, i)
        if exp.denominator != 1:
            raise ValueError("only integer powers are allowed in diagonal rules")
        return _eval_rule(node.left, i) ** int(exp)
    raise ValueError(f"unsupported construct in diagonal rule: {ast.dump(node)}")


def parse_rule(expr: str) -> Callable[[int], Fraction]:
    """Compile an arithmetic expression in ``i`` (integers, + - * / ^) to a rule."""
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"bad diagonal rule {expr!r}: {exc.msg}") from None
    _eval_rule(tree, 1)  # validate the node types once

    def rule(i: int) -> Fraction:
        return _eval_rule(tree, i)

    return rule


# -- actions ---------------------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    scale: Fraction = Fraction(1)

    def column(self, j: int) -> RationalVector:
        return RationalVector({j: self.scale})

    def describe(self) -> str:
        return "identity" if self.scale == 1 else f"identity*{format_rational(self.scale)}"


@dataclass(frozen=True)
class Diagonal:
    expr: str
    rule: Callable[[int], Fraction] = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.rule is None:
            object.__setattr__(self, "rule", parse_rule(self.expr))

    def column(self, j: int) -> RationalVector:
        return RationalVector({j: self.rule(j)})

    def describe(self) -> str:
        return f"diagonal {self.expr}"


@dataclass(frozen=True)
class MatrixAction:
    """Explicit finite block; columns beyond ``size`` act as the identity."""

    entries: Tuple[Tuple[int, int, Fraction], ...]
    source: str = ""

    @property
    def size(self) -> int:
        return max((max(r, c) for r, c, _ in self.entries), default=0)

    def column(self, j: int) -> RationalVector:
        if j > self.size:
            return RationalVector({j: 1})
        return RationalVector((r, v) for r, c, v in self.entries if c == j)

    def describe(self) -> str:
        return f"matrix {self.source}" if self.source else f"matrix ({len(self.entries)} entries)"


@dataclass(frozen=True)
class Operator:
    domain: NormDescriptor
    codomain: NormDescriptor
    action: object

    def column(self, j: int) -> RationalVector:
        return self.action.column(j)

    def __call__(self, x: RationalVector) -> RationalVector:
        return apply(self, x)

    def diagonal_entry(self, j: int) -> Optional[Tuple[int, Fraction]]:
        """(row, value) when column j is a multiple of one unit vector (or zero)."""
        col = self.column(j)
        if len(col) > 1:
            return None
        return col.items[0] if col else (None, Fraction(0))

    def describe(self) -> Dict[str, str]:
        return {
            "domain": str(self.domain),
            "codomain": str(self.codomain),
            "action": self.action.describe(),
        }


def apply(T: Operator, x: RationalVector) -> RationalVector:
    out: List[Tuple[int, Fraction]] = []
    for j, q in x.items:
        out.extend((i, q * v) for i, v in T.column(j).items)
    return RationalVector(out)


# -- basic sequences ---------------------------------------------------------------


@dataclass(frozen=True)
class BasicSequence:
    """Finite front segment (x_1, ..., x_n) of a normalised basic sequence.

    Vectors are scaled to domain norm 1 exactly; for an l2 domain they are
    kept as given and ``squared_norms`` records their exact squared norms.
    """

    vectors: Tuple[RationalVector, ...]
    squared_norms: Tuple[Fraction, ...]

    @classmethod
    def build(cls, vectors: Sequence[RationalVector], domain: NormDescriptor) -> "BasicSequence":
        vecs = []
        for v in vectors:
            if not v:
                raise ValueError("basic sequence vectors must be nonzero")
            if domain.kind != "l2":
                v = v * (1 / norm(domain, v))
            vecs.append(v)
        return cls(tuple(vecs), tuple(norm_squared(domain, v) for v in vecs))

    @classmethod
    def unit_vectors(cls, n: int, domain: Optional[NormDescriptor] = None) -> "BasicSequence":
        vecs = tuple(RationalVector.basis(i) for i in range(1, n + 1))
        return cls(vecs, tuple(Fraction(1) for _ in vecs))

    @property
    def is_block(self) -> bool:
        sup = [v.support for v in self.vectors]
        return all(a[-1] < b[0] for a, b in zip(sup, sup[1:]))

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, n: int) -> RationalVector:
        """1-based access: seq[1] is x_1."""
        if not 1 <= n <= len(self.vectors):
            raise IndexError(f"sequence index {n} outside 1..{len(self.vectors)}")
        return self.vectors[n - 1]

    def combine(self, F: Sequence[int], coefficients: Sequence) -> RationalVector:
        out = RationalVector()
        for n, a in zip(F, coefficients):
            out = out + self[n] * a
        return out


# -- operator files -------------------------------------------------------------


def load_matrix(path) -> MatrixAction:
    """Read ``row col value`` triples (rationals as ``p/q``)."""
    entries = []
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'row col value', got {raw!r}")
        r, c = int(parts[0]), int(parts[1])
        if r < 1 or c < 1:
            raise ValueError(f"{path}:{lineno}: indices start at 1")
        entries.append((r, c, parse_rational(parts[2])))
    return MatrixAction(tuple(sorted(entries)), source=str(path))


def parse_operator(text: str, base_dir=".") -> Operator:
    """Parse the line-oriented operator format::

        domain <norm>
        codomain <norm>
        action diagonal <expr in i> | action identity | action matrix <path>
    """
    fields: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key not in ("domain", "codomain", "action"):
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = rest.strip()
    missing = {"domain", "codomain", "action"} - fields.keys()
    if missing:
        raise ValueError(f"operator file lacks {', '.join(sorted(missing))}")
    kind, _, arg = fields["action"].partition(" ")
    if kind == "identity":
        action = Identity()
    elif kind == "diagonal":
        action = Diagonal(arg.strip())
    elif kind == "matrix":
        action = load_matrix(Path(base_dir) / arg.strip())
    else:
        raise ValueError(f"unknown action {kind!r}; expected diagonal, identity or matrix")
    return Operator(parse_norm(fields["domain"]), parse_norm(fields["codomain"]), action)


def load_operator(path) -> Operator:
    return parse_operator(Path(path).read_text(), base_dir=".")
