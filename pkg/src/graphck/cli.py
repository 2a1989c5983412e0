"""Command-line front end.

Exit codes: 0 success, 1 parse or validation failure, 2 enumeration limit
exceeded.  Results go to stdout, diagnostics to stderr.  Identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import actions as act
from . import ideals as idl
from . import spectrum as spc
from .classify import classify, report_to_json, report_to_text
from .graphs import (
    DEFAULT_LIMIT,
    Graph,
    GraphFormatError,
    LimitExceededError,
    detect_format,
    parse_graph,
    serialize_graph,
)


class _CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> tuple[Graph, str]:
    text = _read(path)
    fmt = detect_format(text)
    try:
        return parse_graph(text, fmt), fmt
    except GraphFormatError as exc:
        raise _CliError(f"{path}: {exc}") from None


def _load_action(path: str) -> act.FinitePartialAction:
    try:
        return act.parse_action(_read(path))
    except act.ActionFormatError as exc:
        raise _CliError(f"{path}: {exc}") from None


def _parse_pair_selector(g: Graph, text: str) -> idl.AdmissiblePair:
    """Selector grammar: "H=a,b;B=c" with empty parts allowed ("H=;B=")."""
    parts = text.split(";")
    if len(parts) != 2 or not parts[0].startswith("H=") or not parts[1].startswith("B="):
        raise _CliError(f'bad pair selector {text!r}: expected "H=...;B=..."')
    sets = []
    for chunk in parts:
        body = chunk[2:]
        names = [x for x in body.split(",") if x] if body else []
        for x in names:
            if x not in g.vertices:
                raise _CliError(f"pair selector names unknown vertex {x!r}")
        sets.append(frozenset(names))
    try:
        return idl.AdmissiblePair(g, sets[0], sets[1])
    except ValueError as exc:
        raise _CliError(f"inadmissible pair: {exc}") from None


def _parse_point_set(a: act.FinitePartialAction, text: str) -> frozenset[str]:
    names = [x for x in text.split(",") if x] if text else []
    for x in names:
        if x not in a.space.index:
            raise _CliError(f"unknown point {x!r}")
    return frozenset(names)


def _emit(out, text: str) -> None:
    out.write(text)


# -- subcommands -----------------------------------------------------------------


def _cmd_analyze(args, out) -> None:
    g, _ = _load_graph(args.graph)
    report = classify(g, args.limit)
    if args.format == "json":
        _emit(out, report_to_json(report))
    elif args.format == "text":
        _emit(out, report_to_text(report))
    else:
        raise _CliError("analyze supports --format text or json")


def _cmd_lattice(args, out) -> None:
    g, _ = _load_graph(args.graph)
    lat = idl.admissible_pairs(g, args.limit)
    if args.format == "json":
        _emit(out, idl.lattice_to_json(lat))
    elif args.format == "dot":
        _emit(out, idl.lattice_to_dot(lat))
    else:
        _emit(out, idl.lattice_to_text(lat))


def _cmd_spectrum(args, out) -> None:
    g, _ = _load_graph(args.graph)
    ps = spc.prim_space(g, args.limit)
    if args.format == "json":
        _emit(out, spc.prim_space_to_json(ps))
    elif args.format == "dot":
        _emit(out, spc.prim_space_to_dot(ps))
    else:
        _emit(out, spc.prim_space_to_text(ps))


def _cmd_quotient(args, out) -> None:
    g, fmt = _load_graph(args.graph)
    pair = _parse_pair_selector(g, args.pair)
    q = idl.quotient_graph(g, pair)
    if args.format not in ("text", "json"):
        raise _CliError("quotient supports --format text or json")
    # the graph is emitted in the input file's format; --format json forces JSON
    out_fmt = "json" if args.format == "json" else fmt
    _emit(out, serialize_graph(q, out_fmt))


_PACTION_QUERIES = (
    "orbit",
    "quasi_orbit",
    "quasi_orbit_space",
    "invariant_subsets",
    "is_minimal",
    "is_topologically_free",
    "is_residually_topologically_free",
    "element_map",
    "decide_G_infinite",
    "check_paradoxical_witness",
    "check_infinite_witness",
)


def _paction_result(a: act.FinitePartialAction, args) -> dict:
    sp = a.space
    query = args.query

    def sorted_list(S):
        return list(sp.sort_set(S))

    if query in ("orbit", "quasi_orbit"):
        if args.point is None:
            raise _CliError(f"{query} needs --point")
        if args.point not in sp.index:
            raise _CliError(f"unknown point {args.point!r}")
        S = a.orbit(args.point) if query == "orbit" else a.quasi_orbit(args.point)
        return {"query": query, "point": args.point, "set": sorted_list(S)}
    if query == "quasi_orbit_space":
        qo = a.quasi_orbit_space()
        labels = list(qo.space.points)
        return {
            "query": query,
            "classes": [sorted_list(c) for c in qo.classes],
            "labels": labels,
            "specialization": sorted(
                [list(pq) for pq in qo.space.closure_pairs],
                key=lambda pq: (labels.index(pq[0]), labels.index(pq[1])),
            ),
        }
    if query == "invariant_subsets":
        sets = a.invariant_subsets(args.limit)
        return {"query": query, "sets": [sorted_list(S) for S in sets]}
    if query == "is_minimal":
        return {"query": query, "result": a.is_minimal()}
    if query == "is_topologically_free":
        return {"query": query, "result": a.is_topologically_free()}
    if query == "is_residually_topologically_free":
        return {"query": query, "result": a.is_residually_topologically_free()}
    if query == "element_map":
        if args.word is None:
            raise _CliError("element_map needs --word")
        try:
            m = a.element_map(args.word)
        except act.ActionFormatError as exc:
            raise _CliError(str(exc)) from None
        return {
            "query": query,
            "word": args.word,
            "map": [list(xy) for xy in m.pairs],
            "domain": sorted_list(m.domain),
            "image": sorted_list(m.image),
        }
    if query == "decide_G_infinite":
        if args.set is None:
            raise _CliError("decide_G_infinite needs --set")
        V = _parse_point_set(a, args.set)
        try:
            decision = act.decide_G_infinite(a, V)
        except ValueError as exc:
            raise _CliError(str(exc)) from None
        return {
            "query": query,
            "set": sorted_list(V),
            "infinite": decision.infinite,
            "proof": decision.proof.to_json_obj(),
        }
    if query in ("check_paradoxical_witness", "check_infinite_witness"):
        if args.witness is None:
            raise _CliError(f"{query} needs --witness")
        try:
            d = act.parse_decomposition(_read(args.witness))
            check = (
                act.check_paradoxical_witness(a, d)
                if query == "check_paradoxical_witness"
                else act.check_infinite_witness(a, d)
            )
        except act.ActionFormatError as exc:
            raise _CliError(f"malformed decomposition: {exc}") from None
        obj: dict = {"query": query, "valid": check.valid}
        obj["violation"] = (
            check.violation.to_json_obj() if check.violation is not None else None
        )
        return obj
    raise _CliError(f"unknown paction query {query!r}")


def _paction_text(result: dict) -> str:
    query = result["query"]
    if query in ("orbit", "quasi_orbit"):
        return f"{query}({result['point']}) = {{{','.join(result['set'])}}}\n"
    if query == "quasi_orbit_space":
        lines = [f"quasi-orbits: {len(result['classes'])}"]
        for label, members in zip(result["labels"], result["classes"]):
            lines.append(f"  {label}: {{{','.join(members)}}}")
        lines.append("specialization pairs (b in closure of a):")
        if not result["specialization"]:
            lines.append("  none")
        for a_, b_ in result["specialization"]:
            lines.append(f"  {a_} -> {b_}")
        return "\n".join(lines) + "\n"
    if query == "invariant_subsets":
        lines = [f"invariant subsets: {len(result['sets'])}"]
        lines += ["  {" + ",".join(S) + "}" for S in result["sets"]]
        return "\n".join(lines) + "\n"
    if query in (
        "is_minimal",
        "is_topologically_free",
        "is_residually_topologically_free",
    ):
        return f"{query}: {'yes' if result['result'] else 'no'}\n"
    if query == "element_map":
        pairs = " ".join(f"{x}->{y}" for x, y in result["map"])
        return f"word {result['word']!r} acts as: {pairs or '(empty map)'}\n"
    if query == "decide_G_infinite":
        return (
            f"G-infinite: no (finite counting, |V|={result['proof']['size']})\n"
            f"  {result['proof']['detail']}\n"
        )
    if query in ("check_paradoxical_witness", "check_infinite_witness"):
        if result["valid"]:
            return "witness: valid\n"
        v = result["violation"]
        return f"witness: violation [{v['clause']}] {v['detail']}\n"
    raise AssertionError(query)


def _cmd_paction(args, out) -> None:
    a = _load_action(args.action)
    result = _paction_result(a, args)
    if args.format == "json":
        _emit(out, json.dumps(result, indent=2) + "\n")
    elif args.format == "text":
        _emit(out, _paction_text(result))
    else:
        raise _CliError("paction supports --format text or json")


# -- driver -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphck",
        description=(
            "Invariants of directed multigraphs and their graph C*-algebras, "
            "and finite models of partial dynamical systems."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--format",
            choices=("text", "json", "dot"),
            default="text",
            help="output format (default: text)",
        )
        p.add_argument(
            "--limit",
            type=int,
            default=DEFAULT_LIMIT,
            help=f"enumeration guard on input size (default: {DEFAULT_LIMIT})",
        )

    p = sub.add_parser("analyze", help="classification report for a graph")
    p.add_argument("graph")
    common(p)

    p = sub.add_parser("lattice", help="admissible-pair ideal lattice")
    p.add_argument("graph")
    common(p)

    p = sub.add_parser("spectrum", help="prime/primitive pair poset")
    p.add_argument("graph")
    common(p)

    p = sub.add_parser("quotient", help="quotient graph by an admissible pair")
    p.add_argument("graph")
    p.add_argument("--pair", required=True, help='selector "H=a,b;B=c"; empty: "H=;B="')
    common(p)

    p = sub.add_parser("paction", help="partial-action queries on a finite T0 space")
    p.add_argument("action")
    p.add_argument("query", choices=_PACTION_QUERIES)
    p.add_argument("--point", help="point for orbit/quasi_orbit")
    p.add_argument("--word", help="group word for element_map")
    p.add_argument("--set", help="comma-separated open set for decide_G_infinite")
    p.add_argument("--witness", help="decomposition JSON file for witness checks")
    common(p)

    return parser


def run(argv, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    if args.limit < 1:
        err.write("error: --limit must be at least 1\n")
        return 1
    handlers = {
        "analyze": _cmd_analyze,
        "lattice": _cmd_lattice,
        "spectrum": _cmd_spectrum,
        "quotient": _cmd_quotient,
        "paction": _cmd_paction,
    }
    try:
        handlers[args.command](args, out)
    except _CliError as exc:
        err.write(f"error: {exc}\n")
        return exc.code
    except LimitExceededError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (GraphFormatError, act.ActionFormatError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
