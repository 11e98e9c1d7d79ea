"""Command-line front end: ``ssindex <group> <command> [flags]``.

Exit codes: 0 success, 1 domain or usage error, 2 undecided verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from . import gallery, schreier, trees
from .operators import BasicSequence, apply, load_operator
from .ordinal import classify, compare, fundamental_sequence, parse_ordinal
from .spaces import (
    Enclosure,
    dual_witness,
    format_rational,
    norm,
    parse_norm,
    parse_rational,
    parse_vector,
    witness_to_json,
)
from .spans import UndecidedError
from .witness import WitnessTreeSpec, build_witness_tree, index_estimate, witness_search


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    p.add_argument("--format", choices=("json", "human"), default="human")


def _rational_list(text: str) -> List[Fraction]:
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def _ordinal_list(text: str):
    return [parse_ordinal(t) for t in text.split(",") if t.strip()]


def _sequence(args, domain) -> BasicSequence:
    if args.seq:
        lines = Path(args.seq).read_text().splitlines()
        vecs = [parse_vector(line) for line in lines if line.strip() and not line.startswith("#")]
        return BasicSequence.build(vecs, domain)
    return BasicSequence.unit_vectors(args.n)


def _norm_json(value):
    if isinstance(value, Enclosure):
        return {
            "square": format_rational(value.square),
            "lower": format_rational(value.lower),
            "upper": format_rational(value.upper),
        }
    return format_rational(value)


def _norm_human(value) -> str:
    if isinstance(value, Enclosure):
        return f"sqrt({format_rational(value.square)}) in [{format_rational(value.lower)}, {format_rational(value.upper)}]"
    return format_rational(value)


# -- command handlers; each returns (json result, human text) ------------------


def ord_eval(a):
    x = parse_ordinal(a.xi)
    cls = classify(x)
    pred = None if cls.predecessor is None else str(cls.predecessor)
    return {"value": str(x), "kind": cls.kind, "predecessor": pred}, str(x)


def ord_cmp(a):
    c = compare(parse_ordinal(a.a), parse_ordinal(a.b))
    return c, {-1: "<", 0: "=", 1: ">"}[c]


def ord_fund(a):
    v = str(fundamental_sequence(parse_ordinal(a.xi), a.n))
    return v, v


def sch_member(a):
    v = schreier.member(parse_ordinal(a.xi), schreier.parse_set(a.set))
    return v, str(v).lower()


def sch_blocks(a):
    v = schreier.min_blocks(parse_ordinal(a.zeta), schreier.parse_set(a.set))
    return (None if v == float("inf") else v), str(v)


def sch_maximal(a):
    v = schreier.is_maximal(parse_ordinal(a.xi), schreier.parse_set(a.set), guard=a.guard)
    return v, str(v).lower()


def sch_enum(a):
    fam = schreier.enumerate_family(parse_ordinal(a.xi), a.max)
    sets = [schreier.format_set(F) for F in fam]
    return {"count": len(sets), "sets": sets}, "\n".join(sets)


def _tree_input(a) -> trees.FiniteTree:
    if a.schreier:
        if a.xi is None or a.max is None:
            raise UsageError("--schreier needs --xi and --max")
        return trees.restricted_schreier_tree(parse_ordinal(a.xi), a.max)
    if a.file is None:
        raise UsageError("give --file or --schreier --xi --max")
    return trees.loads(Path(a.file).read_text())


def tree_rank(a):
    v = trees.rank(_tree_input(a))
    return v, str(v)


def tree_derive(a):
    text = trees.dumps(trees.derivative(_tree_input(a)))
    return {"tree": text.splitlines()}, text.rstrip("\n")


def tree_schreier(a):
    text = trees.dumps(trees.restricted_schreier_tree(parse_ordinal(a.xi), a.max))
    return {"tree": text.splitlines()}, text.rstrip("\n")


def norm_eval(a):
    v = norm(parse_norm(a.norm), parse_vector(a.vector))
    return _norm_json(v), _norm_human(v)


def norm_witness(a):
    d, x = parse_norm(a.norm), parse_vector(a.vector)
    w = witness_to_json(d, dual_witness(d, x))
    return {"norm": _norm_json(norm(d, x)), "witness": w}, json.dumps(w, sort_keys=True)


def op_apply(a):
    y = apply(load_operator(a.op), parse_vector(a.vector))
    return str(y), str(y)


def _result_human(res) -> str:
    d = res.to_json()
    if res.found:
        return f"certificate F={d['F']} coefficients={d['coefficients']} ratio={d['ratio']}"
    return f"failure best_ratio={d['best_ratio']} (sets searched {d['sets_searched']}, exhaustive {d['exhaustive']})"


def op_witness(a):
    T = load_operator(a.op)
    res = witness_search(
        T,
        parse_ordinal(a.xi),
        parse_rational(a.eps),
        _sequence(a, T.domain),
        mode=a.mode,
        max_sets=a.max_sets,
        samples=a.samples,
        seed=a.seed,
        threads=a.threads,
    )
    return {"status": "certificate" if res.found else "failure", **res.to_json()}, _result_human(res)


def op_tree(a):
    T = load_operator(a.op)
    spec = WitnessTreeSpec(T, a.m, _sequence(a, T.domain), a.depth, a.width, not a.all_tuples)
    w = build_witness_tree(spec)
    text = trees.dumps(w.truncation)
    out = {"tree": text.splitlines(), "verdict": w.verdict, "rank": w.rank}
    return out, f"{text}verdict {w.verdict}\nrank {w.rank}"


def _report_human(report) -> str:
    lines = []
    for row in report["grid"]:
        if row["status"] == "certificate":
            lines.append(f"xi={row['xi']} eps={row['epsilon']}: certificate F={row['F']} ratio={row['ratio']}")
        else:
            lines.append(f"xi={row['xi']} eps={row['epsilon']}: failure best_ratio={row['best_ratio']}")
    lines.append(f"bracket: {report['bracket']} ({report['note']})")
    return "\n".join(lines)


def op_index(a):
    T = load_operator(a.op)
    report = index_estimate(
        T,
        _ordinal_list(a.xi_grid),
        _rational_list(a.eps_grid),
        _sequence(a, T.domain),
        mode=a.mode,
        max_sets=a.max_sets,
        samples=a.samples,
        seed=a.seed,
        threads=a.threads,
    )
    report.pop("results")
    return report, _report_human(report)


def gallery_run(a):
    report = gallery.run_preset(a.name, seed=a.seed, threads=a.threads)
    human = _report_human(report) + f"\ncertificates verified: {report['certificates_verified']}/{report['certificates']}"
    return report, human


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="ssindex", description="Schreier families, ordinal indices and strictly singular operators.")
    groups = root.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def command(group, name, handler, help_text):
        p = group.add_parser(name, help=help_text)
        _common(p)
        p.set_defaults(handler=handler)
        return p

    g = groups.add_parser("ord", help="ordinals below epsilon_0").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = command(g, "eval", ord_eval, "normalise and classify an ordinal")
    p.add_argument("--xi", required=True)
    p = command(g, "cmp", ord_cmp, "compare two ordinals")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = command(g, "fund", ord_fund, "n-th term of the fundamental sequence")
    p.add_argument("--xi", required=True)
    p.add_argument("--n", type=int, required=True)

    g = groups.add_parser("schreier", help="Schreier families").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = command(g, "member", sch_member, "is the set in S_xi")
    p.add_argument("--xi", required=True)
    p.add_argument("--set", required=True)
    p = command(g, "blocks", sch_blocks, "least number of S_zeta pieces")
    p.add_argument("--zeta", required=True)
    p.add_argument("--set", required=True)
    p = command(g, "maximal", sch_maximal, "is the set maximal in S_xi")
    p.add_argument("--xi", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--guard", type=int, default=0)
    p = command(g, "enum", sch_enum, "all members inside {1..max}")
    p.add_argument("--xi", required=True)
    p.add_argument("--max", type=int, required=True)

    g = groups.add_parser("tree", help="finite trees and ranks").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, handler, help_text in (("rank", tree_rank, "rank of a finite tree"), ("derive", tree_derive, "derived tree")):
        p = command(g, name, handler, help_text)
        p.add_argument("--file")
        p.add_argument("--schreier", action="store_true", help="use the restricted Schreier tree")
        p.add_argument("--xi")
        p.add_argument("--max", type=int)
    p = command(g, "schreier-tree", tree_schreier, "print the restricted Schreier tree")
    p.add_argument("--xi", required=True)
    p.add_argument("--max", type=int, required=True)

    g = groups.add_parser("norm", help="sequence-space norms").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, handler, help_text in (("eval", norm_eval, "exact norm"), ("witness", norm_witness, "optimal norming structure")):
        p = command(g, name, handler, help_text)
        p.add_argument("--norm", required=True)
        p.add_argument("--vector", required=True)

    g = groups.add_parser("op", help="operators").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = command(g, "apply", op_apply, "apply an operator to a vector")
    p.add_argument("--op", required=True, help="operator file")
    p.add_argument("--vector", required=True)

    def search_flags(p):
        p.add_argument("--op", required=True, help="operator file")
        p.add_argument("--n", type=int, default=8, help="use e_1..e_n (default 8)")
        p.add_argument("--seq", help="file of vector literals, one per line (overrides --n)")
        p.add_argument("--mode", choices=("best", "first"), default="best")
        p.add_argument("--max-sets", type=int, default=None)
        p.add_argument("--samples", type=int, default=10000)

    p = command(g, "witness", op_witness, "search for an S_xi certificate")
    search_flags(p)
    p.add_argument("--xi", required=True)
    p.add_argument("--eps", required=True)
    p = command(g, "index", op_index, "certificate search over a grid")
    search_flags(p)
    p.add_argument("--xi-grid", required=True, help="comma-separated ordinals, ascending")
    p.add_argument("--eps-grid", required=True, help="comma-separated rationals")
    p = command(g, "tree", op_tree, "bounded witness tree")
    p.add_argument("--op", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="use e_1..e_n (default: width)")
    p.add_argument("--seq")
    p.add_argument("--all-tuples", action="store_true", help="allow repeats and any order")

    g = groups.add_parser("gallery", help="named presets").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = command(g, "run", gallery_run, "run a preset")
    p.add_argument("name", choices=sorted(gallery.PRESETS))
    return root


def _config(args) -> Dict:
    skip = {"handler"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(fmt, config, key, payload, human) -> None:
    if fmt == "json":
        print(json.dumps({"config": config, key: payload}, sort_keys=True))
    else:
        print(human, file=sys.stderr if key == "error" else sys.stdout)


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    fmt = "json" if "json" in argv and "--format" in argv else "human"
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _emit(fmt, {"argv": argv}, "error", {"kind": "usage", "message": str(exc)}, f"error: {exc}")
        return 1
    if getattr(args, "n", 1) is None:
        args.n = args.width
    config = _config(args)
    try:
        payload, human = args.handler(args)
    except UndecidedError as exc:
        _emit(args.format, config, "error", {"kind": "undecided", "message": str(exc)}, f"undecided: {exc}")
        return 2
    except (UsageError, ValueError, OSError, ArithmeticError) as exc:
        _emit(args.format, config, "error", {"kind": "domain", "message": str(exc)}, f"error: {exc}")
        return 1
    _emit(args.format, config, "result", payload, human)
    return 0


if __name__ == "__main__":
    sys.exit(main())
