"""Named operator presets with a fixed search grid."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .operators import BasicSequence, Diagonal, Identity, Operator
from .ordinal import parse_ordinal
from .spaces import format_rational, parse_norm
from .witness import index_estimate, verify_certificate


@dataclass(frozen=True)
class Preset:
    name: str
    domain: str
    codomain: str
    action: str  # "identity" or a diagonal rule in i
    length: int
    xi_grid: Tuple[str, ...]
    eps_grid: Tuple[Fraction, ...]
    mode: str = "best"
    max_sets: Optional[int] = None
    about: str = ""

    def operator(self) -> Operator:
        action = Identity() if self.action == "identity" else Diagonal(self.action)
        return Operator(parse_norm(self.domain), parse_norm(self.codomain), action)

    def sequence(self) -> BasicSequence:
        return BasicSequence.unit_vectors(self.length)

    def config(self) -> Dict:
        return {
            "name": self.name,
            "operator": self.operator().describe(),
            "sequence": f"e_1..e_{self.length}",
            "xi_grid": list(self.xi_grid),
            "eps_grid": [format_rational(e) for e in self.eps_grid],
            "mode": self.mode,
            "max_sets": self.max_sets,
        }


_Q = Fraction
PRESETS: Dict[str, Preset] = {
    p.name: p
    for p in (
        Preset(
            "diagonal-compact", "l1", "l1", "1/i", 32, ("1",), (_Q(1, 2), _Q(1, 4), _Q(1, 8)),
            mode="first", about="compact diagonal; singletons already witness every epsilon",
        ),
        Preset(
            "l1-identity", "l1", "l1", "identity", 12, ("1", "2"), (_Q(1, 2), _Q(1, 4), _Q(1, 8)),
            about="an isometry; no span is ever flattened",
        ),
        Preset(
            "schreier-into-sup", "schreier(1)", "linf", "identity", 12, ("1",), (_Q(1, 4),),
            about="formal identity from the Schreier space into the sup-norm space",
        ),
        Preset(
            "tsirelson-omega-to-one", "tsirelson(w,1/2)", "tsirelson(1,1/2)", "identity", 24,
            ("1", "w"), (_Q(1, 4),), max_sets=1000,
            about="formal identity between Tsirelson-type spaces; budgeted search",
        ),
    )
}


def run_preset(name: str, seed: int = 0, threads: int = 1) -> Dict:
    if name not in PRESETS:
        raise ValueError(f"unknown gallery preset {name!r}; choose from {', '.join(PRESETS)}")
    p = PRESETS[name]
    T, seq = p.operator(), p.sequence()
    report = index_estimate(
        T,
        [parse_ordinal(x) for x in p.xi_grid],
        p.eps_grid,
        seq,
        mode=p.mode,
        max_sets=p.max_sets,
        seed=seed,
        threads=threads,
    )
    results = report.pop("results")
    certs = [r for r in results if r.found]
    verified = sum(verify_certificate(T, seq, c) for c in certs)
    report["certificates"] = len(certs)
    report["certificates_verified"] = verified
    report["preset"] = p.config()
    return report
