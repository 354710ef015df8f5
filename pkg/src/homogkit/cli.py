"""Command line front end.

Every command prints JSON on stdout except DOT exports and the one-line
suite summaries of ``verify`` (``--json`` switches both to JSON).  Exit
status is 0 for success or a true verdict, 1 for a false verdict and 2 for
errors, with a JSON ``{"error": ...}`` object on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import embeddings as emb
from . import homogeneity as hom
from . import omega as om
from . import poset as po
from . import structure as st
from . import verify
from .catalog import fixture, fixture_names


class CLIError(Exception):
    pass


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CLIError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load_structure(path: str) -> st.BinaryStructure:
    try:
        return st.BinaryStructure.from_json(_read_json(path))
    except st.StructureParseError as exc:
        raise CLIError(f"{path}: {exc}") from None


def _load_poset(path: str) -> po.FinitePoset:
    try:
        return po.FinitePoset.from_json(_read_json(path))
    except (po.OrderError, TypeError, ValueError) as exc:
        raise CLIError(f"{path}: {exc}") from None


def _emit(doc) -> None:
    print(json.dumps(doc, sort_keys=False))


# -- commands ----------------------------------------------------------------


def cmd_analyze(args) -> int:
    X = _load_structure(args.file)
    _emit(
        {
            "n": X.size,
            "pairs": len(X.pairs),
            "predicates": st.predicates(X),
            "components": st.components(X).to_json(),
        }
    )
    return 0


def cmd_uh(args) -> int:
    verdict = emb.is_ultrahomogeneous(_load_structure(args.file))
    _emit(verdict.to_json())
    return 0 if verdict.holds else 1


def cmd_decompose(args) -> int:
    X = _load_structure(args.file)
    try:
        report = hom.decompose(X)
    except hom.NotUltrahomogeneous as exc:
        raise CLIError(f"{exc}") from None
    except hom.PreconditionError as exc:
        raise CLIError(str(exc)) from None
    _emit(report.to_json())
    return 0


def cmd_emb(args) -> int:
    X, Y = _load_structure(args.x), _load_structure(args.y)
    if args.list:
        maps = emb.embeddings(X, Y)
        _emit({"count": len(maps), "embeddings": [list(f.image) for f in maps]})
    else:
        _emit({"count": emb.count_embeddings(X, Y)})
    return 0


def cmd_poset(args) -> int:
    P = _load_poset(args.file)
    op = args.op
    if op == "atoms":
        found = po.atoms(P)
        _emit(
            {
                "atoms": [po._label_json(e) for e in P.elements if e in found],
                "atomless": not found,
                "atomic": po.is_atomic(P),
            }
        )
        return 0
    if op == "sm":
        _emit(po.separative_modification(P).to_json())
        return 0
    if op == "sq":
        _emit(po.separative_quotient(P).to_json())
        return 0
    if op == "separative":
        holds = po.is_separative(P)
        _emit({"separative": holds})
        return 0 if holds else 1
    text = P.to_dot()
    if args.json:
        _emit({"dot": text})
    else:
        print(text)
    return 0


_RELATIONS = {
    "subset": om.is_subset,
    "almostsubset": om.almost_subset,
    "compatible": om.compatible,
}


def _parse_upset(text: str) -> om.UPSet:
    try:
        return om.parse(text)
    except om.UPSetSyntaxError as exc:
        raise CLIError(f"{exc} in {text!r}") from None


def _upset_json(A: om.UPSet) -> dict:
    doc = {
        "set": om.render(A),
        "finite": A.is_finite,
        "threshold": A.threshold,
        "period": A.period,
        "residues": sorted(A.residues),
    }
    if A.is_finite:
        doc["elements"] = A.elements_finite()
    return doc


def cmd_upset(args) -> int:
    A = _parse_upset(args.expr)
    if args.rel is None:
        _emit(_upset_json(A))
        return 0
    other, relation = args.rel
    if relation not in _RELATIONS:
        raise CLIError(f"unknown relation {relation!r}; expected one of {', '.join(_RELATIONS)}")
    B = _parse_upset(other)
    holds = _RELATIONS[relation](A, B)
    _emit({"left": om.render(A), "right": om.render(B), "relation": relation, "holds": holds})
    return 0 if holds else 1


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    if any(n not in verify.SUITES for n in names):
        raise CLIError(f"unknown suite {args.suite!r}; known: all, {', '.join(verify.SUITES)}")
    results = [verify.run_suite(n, args.seed) for n in names]
    if args.json:
        _emit(
            {
                "seed": verify.default_seed() if args.seed is None else args.seed,
                "suites": [r.to_json() for r in results],
            }
        )
    else:
        for r in results:
            print(r.line())
            for m in r.mismatches:
                print(f"    {m}")
    return 0 if all(r.passed for r in results) else 1


def cmd_fixture(args) -> int:
    try:
        X = fixture(args.name, args.params)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    if args.dot:
        print(X.to_dot(args.name))
    else:
        _emit(X.to_json())
    return 0


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand from resetting a --json given before it.
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="force machine-readable JSON output")

    parser = argparse.ArgumentParser(
        prog="homogkit",
        description="Finite binary structures, ultrahomogeneity, posets and ultimately periodic sets.",
    )
    parser.add_argument("--json", action="store_true", help="force machine-readable JSON output")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("analyze", parents=[common], help="predicates and components of a structure")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("uh", parents=[common], help="ultrahomogeneity verdict with witness")
    p.add_argument("file")
    p.set_defaults(func=cmd_uh)

    p = sub.add_parser("decompose", parents=[common], help="classify an ultrahomogeneous structure")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("emb", parents=[common], help="count or list embeddings X -> Y")
    p.add_argument("x")
    p.add_argument("y")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="print the number of embeddings (default)")
    mode.add_argument("--list", action="store_true", help="list embeddings as image tuples")
    p.set_defaults(func=cmd_emb)

    p = sub.add_parser("poset", parents=[common], help="operations on a finite poset file")
    p.add_argument("file")
    p.add_argument("op", choices=["atoms", "sm", "sq", "separative", "dot"])
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("upset", parents=[common], help="evaluate ultimately periodic set expressions")
    p.add_argument("action", choices=["eval"])
    p.add_argument("expr")
    p.add_argument("--rel", nargs=2, metavar=("EXPR2", "RELATION"),
                   help="compare with EXPR2 under subset, almostsubset or compatible")
    p.set_defaults(func=cmd_upset)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("suite", help=f"one of: all, {', '.join(verify.SUITES)}")
    p.add_argument("--seed", type=int, default=None, help="override the suite seed")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixture", parents=[common], help="print a named structure")
    p.add_argument("name", help=f"one of: {', '.join(fixture_names())}")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--dot", action="store_true", help="print DOT instead of JSON")
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CLIError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
