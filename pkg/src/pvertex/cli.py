"""Command-line front end.

Exit codes: ``decide`` returns 0/1/2 for Yes/No/Unknown, ``verify`` 0/1 for
pass/fail, ``witness``, ``thread`` and ``search`` return 2 when nothing
could be produced. Usage errors exit 64, malformed input 65, and internal
invariant violations 70.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .decide import NO, UNKNOWN, YES, decide
from .errors import MalformedInput, ParameterOutOfRange, PropertyPError, UnverifiedInput
from .families import FAMILIES, FamilySpec, generate
from .io import GraphDocument, parse_matrix, read_graph, read_text
from .linalg import verify_property_P
from .numeric import SearchConfig, search_witness
from .structure import pendant_reduce
from .witness import ThreadSpec, thread_over

EX_OK, EX_NO, EX_NONE = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_SOFTWARE = 64, 65, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload) + "\n"
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _seed_guard(args) -> None:
    if args.deterministic and args.seed is None:
        raise UsageError("--deterministic requires an explicit --seed")


def _search_cfg(args) -> SearchConfig:
    return SearchConfig(
        restarts=getattr(args, "restarts", 8) or 8,
        residual_tol=getattr(args, "tol", 1e-10) or 1e-10,
        seed=args.seed or 0,
    )


def _labelled(cert_json: dict, doc: GraphDocument) -> dict:
    if doc.labels is None:
        return cert_json
    ob = cert_json.get("obstruction")
    if ob is not None and ob.get("vertex") is not None:
        ob["vertexLabel"] = doc.label(ob["vertex"])
    cert_json["labels"] = list(doc.labels)
    return cert_json


def cmd_decide(args) -> int:
    _seed_guard(args)
    doc = read_graph(args.graph)
    cert = decide(doc.to_graph(), numeric=args.numeric, cfg=_search_cfg(args))
    _emit(args, _labelled(cert.to_json(), doc))
    return {YES: EX_OK, NO: EX_NO, UNKNOWN: EX_NONE}[cert.status]


def cmd_verify(args) -> int:
    g = read_graph(args.graph).to_graph()
    m = parse_matrix(read_text(args.matrix))
    try:
        ver = verify_property_P(m, g)
    except PropertyPError as exc:
        _emit(args, {"pass": False, "error": str(exc)})
        return EX_NO
    out = ver.to_json()
    out["pass"] = ver.has_property_p
    _emit(args, out)
    return EX_OK if ver.has_property_p else EX_NO


def cmd_witness(args) -> int:
    g = read_graph(args.graph).to_graph()
    cert = decide(g)
    if cert.status == YES and cert.witness is not None:
        _emit(args, cert.witness.to_json())
        return EX_OK
    print(f"no exact construction applies (status {cert.status})", file=sys.stderr)
    return EX_NONE


def _family_spec(family: str, params: list[str]) -> FamilySpec:
    try:
        if family == "corona":
            if len(params) < 2:
                raise UsageError("corona needs: <t> <base-family> <base-params...>")
            base = generate(_family_spec(params[1], params[2:]))
            return FamilySpec("corona", (int(params[0]),), base)
        return FamilySpec(family, tuple(int(p) for p in params))
    except ValueError as exc:
        raise UsageError(f"family parameters must be integers: {exc}") from exc


def cmd_generate(args) -> int:
    try:
        g = generate(_family_spec(args.family, args.params))
    except ParameterOutOfRange as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, GraphDocument.from_graph(g).dumps(args.format))
    return EX_OK


def cmd_reduce(args) -> int:
    g = read_graph(args.graph).to_graph()
    _emit(args, pendant_reduce(g).to_json())
    return EX_OK


def cmd_thread(args) -> int:
    h = read_graph(args.base).to_graph()
    graphs = [read_graph(p).to_graph() for p in args.components]
    bails = args.bails or [0] * len(graphs)
    if len(bails) != len(graphs):
        raise UsageError("need one --bails value per component")
    comps = []
    for k, (g, b) in enumerate(zip(graphs, bails)):
        cert = decide(g)
        if cert.status != YES or cert.witness is None:
            print(f"component {k} has no exact witness (status {cert.status})", file=sys.stderr)
            return EX_NONE
        comps.append((g, cert.witness, b))
    try:
        c = Fraction(args.c)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coupling weight {args.c!r}") from exc
    w = thread_over(ThreadSpec(h, tuple(comps), c))
    _emit(args, {"graph": GraphDocument.from_graph(w.graph).to_json(), "witness": w.to_json()})
    return EX_OK


def cmd_search(args) -> int:
    _seed_guard(args)
    g = read_graph(args.graph).to_graph()
    nw = search_witness(g, _search_cfg(args))
    if nw is None:
        _emit(args, "no witness found\n")
        return EX_NONE
    _emit(args, nw.to_json())
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "edgelist"), default="json",
                        help="format for emitted graphs")
    common.add_argument("--output", help="write to this path instead of stdout")
    common.add_argument("--seed", type=int, help="seed for randomized steps")
    common.add_argument("--deterministic", action="store_true",
                        help="refuse randomized steps without an explicit --seed")

    p = _Parser(prog="pvertex", description="Decide and certify property (P) for graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("decide", parents=[common], help="run the decision engine")
    s.add_argument("graph", nargs="?", default="-")
    s.add_argument("--numeric", action="store_true", help="allow numeric search for undecided cases")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("verify", parents=[common], help="verify a rational matrix exactly")
    s.add_argument("graph")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("witness", parents=[common], help="print an exact witness")
    s.add_argument("graph", nargs="?", default="-")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("generate", parents=[common], help="emit a graph family member")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("params", nargs="*")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("reduce", parents=[common], help="pendant-reduction trace")
    s.add_argument("graph", nargs="?", default="-")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("thread", parents=[common], help="threaded-union witness")
    s.add_argument("base")
    s.add_argument("components", nargs="+")
    s.add_argument("--bails", type=int, nargs="+")
    s.add_argument("-c", default="1", help="coupling weight (rational)")
    s.set_defaults(func=cmd_thread)

    s = sub.add_parser("search", parents=[common], help="numeric witness search")
    s.add_argument("graph", nargs="?", default="-")
    s.add_argument("--restarts", type=int, default=8)
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EX_USAGE
    except (MalformedInput, UnverifiedInput) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EX_DATAERR
    except PropertyPError as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EX_DATAERR
    except Exception as exc:  # invariant violation
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
