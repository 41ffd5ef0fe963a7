"""Command-line entry point.

Subcommands: gadget, solve, chromatic, enumerate, verify-lemma, reduce,
witness, roundtrip, catalogue.  Exit codes: 0 success, 1 negative decision
(unsat / refuted), 2 usage error, 3 budget exceeded.

The environment variable COLOUR_LAB_BUDGET_SECS provides a global default
time budget for solve/enumerate/verify-lemma.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import gadgets, lemmas, reductions
from .colouring import Colouring, validate
from .errors import BudgetExceeded, ColourLabError
from .graph import (
    Graph,
    decode_graph6,
    encode_graph6,
    from_edge_list,
    structure_report,
    to_dot,
    to_edge_list,
)
from .solver import SolveParams, chromatic, decide, enumerate_colourings

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _env_budget() -> float | None:
    raw = os.environ.get("COLOUR_LAB_BUDGET_SECS")
    return float(raw) if raw else None


def _read_graph(path: str) -> Graph:
    with open(path, "rb") as fh:
        data = fh.read()
    text = data.decode("ascii", errors="replace").strip()
    if text and text.split("\n", 1)[0].split()[0].isdigit():
        return from_edge_list(text)
    return decode_graph6(data)


def _write_graph(g: Graph, path: str, fmt: str) -> None:
    if fmt == "graph6":
        payload = encode_graph6(g) + b"\n"
        with open(path, "wb") as fh:
            fh.write(payload)
        return
    text = to_edge_list(g) if fmt == "edge-list" else to_dot(g)
    with open(path, "w") as fh:
        fh.write(text)


def _dump_json(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _gadget_params(args) -> dict:
    params = {}
    for key in ("k", "t", "d", "n", "T"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if getattr(args, "shape", None):
        params["shape"] = args.shape
    return params


def _cmd_gadget(args) -> int:
    gadget = gadgets.build(args.id, **_gadget_params(args))
    if args.format == "json":
        _dump_json(
            {
                "id": gadget.id,
                "n": gadget.graph.n,
                "m": gadget.graph.m,
                "edges": [list(e) for e in gadget.graph.edges()],
                "terminals": gadget.terminal_json(),
                "structure": structure_report(gadget.graph).to_json(),
            },
            args.out,
        )
    else:
        if args.out in (None, "-"):
            if args.format == "graph6":
                sys.stdout.buffer.write(encode_graph6(gadget.graph) + b"\n")
            elif args.format == "edge-list":
                sys.stdout.write(to_edge_list(gadget.graph))
            else:
                sys.stdout.write(to_dot(gadget.graph))
        else:
            _write_graph(gadget.graph, args.out, args.format)
    if args.terminals_out:
        _dump_json(gadget.terminal_json(), args.terminals_out)
    return EXIT_OK


def _solve_params(args, kind=None, k=None) -> SolveParams:
    budget_secs = args.budget_secs if args.budget_secs is not None else _env_budget()
    return SolveParams(
        kind=kind or args.kind,
        k=k if k is not None else args.k,
        canonical=getattr(args, "canonical", False),
        budget_nodes=args.budget_nodes,
        budget_secs=budget_secs,
        threads=getattr(args, "threads", None),
    )


def _cmd_solve(args) -> int:
    g = _read_graph(args.input)
    outcome = decide(g, _solve_params(args))
    _dump_json(outcome.to_json(), args.out)
    if outcome.status == "sat":
        return EXIT_OK
    return EXIT_BUDGET if outcome.status == "budget-exceeded" else EXIT_NEGATIVE


def _cmd_chromatic(args) -> int:
    g = _read_graph(args.input)
    value = chromatic(g, args.kind)
    _dump_json({"kind": args.kind, "chromatic": value}, args.out)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    g = _read_graph(args.input)
    sink = open(args.emit, "w") if args.emit else None
    try:
        def visitor(col: Colouring):
            if sink is not None:
                sink.write(json.dumps(col.to_json(), sort_keys=True) + "\n")

        try:
            count = enumerate_colourings(g, _solve_params(args), visitor)
        except BudgetExceeded as b:
            _dump_json({"status": "budget-exceeded", "count": b.count}, args.out)
            return EXIT_BUDGET
    finally:
        if sink is not None:
            sink.close()
    _dump_json({"status": "done", "count": count}, args.out)
    return EXIT_OK


def _cmd_verify_lemma(args) -> int:
    params = {}
    for key in ("k", "t", "T"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.shape:
        params["shape"] = args.shape
    budget = args.budget_secs if args.budget_secs is not None else _env_budget()
    report = lemmas.verify(args.id, params or None, budget_secs=budget,
                           budget_nodes=args.budget_nodes)
    _dump_json(report.to_json(), args.report)
    if report.status == "verified":
        return EXIT_OK
    return EXIT_BUDGET if report.status == "budget-exceeded" else EXIT_NEGATIVE


def _read_input_instance(path: str):
    with open(path, "rb") as fh:
        head = fh.read(1).decode("ascii", errors="replace")
    if head == "{":
        with open(path) as fh:
            return reductions.Formula1in3.from_json(json.load(fh))
    return _read_graph(path)


def _cmd_reduce(args) -> int:
    input_obj = _read_input_instance(args.input)
    params = {}
    if args.k is not None:
        params["k"] = args.k
    if args.d is not None:
        params["d"] = args.d
    g_out, trace = reductions.build_reduction(
        args.construction, input_obj, check=not args.no_check, **params
    )
    _write_graph(g_out, args.out, args.format)
    if args.trace:
        _dump_json(trace.to_json(), args.trace)
    return EXIT_OK


def _load_trace(path: str) -> reductions.ReductionTrace:
    with open(path) as fh:
        return reductions.ReductionTrace.from_json(json.load(fh))


def _witness_to_json(w) -> dict:
    if isinstance(w, Colouring):
        return {"type": "colouring", **w.to_json()}
    return {"type": "edge-colouring", "colours": list(w)}


def _witness_from_json(obj):
    if obj.get("type") == "edge-colouring":
        return list(obj["colours"])
    return Colouring.from_json(obj)


def _cmd_witness(args) -> int:
    trace = _load_trace(args.trace)
    with open(args.witness) as fh:
        w_in = _witness_from_json(json.load(fh))
    if args.direction == "forward":
        result = reductions.witness_forward(trace, w_in)
    else:
        result = reductions.witness_backward(trace, w_in)
    _dump_json(_witness_to_json(result), args.out)
    return EXIT_OK


def _cmd_roundtrip(args) -> int:
    """Solver-found input witness -> forward -> validate -> backward ->
    compare; demonstrates the guarantee of a construction end to end."""
    input_obj = _read_input_instance(args.input)
    params = {}
    if args.k is not None:
        params["k"] = args.k
    if args.d is not None:
        params["d"] = args.d
    g_out, trace = reductions.build_reduction(args.construction, input_obj, **params)
    w_in = _find_input_witness(trace, input_obj)
    if w_in is None:
        _dump_json({"status": "input-unsat"}, args.out)
        return EXIT_NEGATIVE
    forward = reductions.witness_forward(trace, w_in)
    kind, k = reductions.target_problem(trace)
    assert validate(g_out, forward, kind) is None
    back = reductions.witness_backward(trace, forward)
    ok = back == w_in or list(back) == list(w_in)
    _dump_json(
        {
            "status": "ok" if ok else "mismatch",
            "output": {"n": g_out.n, "m": g_out.m, "kind": kind, "k": k},
            "witness": _witness_to_json(w_in),
        },
        args.out,
    )
    return EXIT_OK if ok else EXIT_NEGATIVE


def _find_input_witness(trace, input_obj):
    from .solver import edge_decide

    cid = trace.construction
    k = trace.params.get("k")
    if cid == "c1-edge-to-star":
        outcome = edge_decide(input_obj, k - 2)
        if outcome.status != "sat":
            return None
        return [c + 2 for c in outcome.colouring.colours]
    if cid in ("c2-3col-to-4star", "c3-3col-to-5star"):
        shift = 1 if cid == "c2-3col-to-4star" else 2
        kk = 4 if cid == "c2-3col-to-4star" else 5
        outcome = decide(input_obj, SolveParams("proper", 3, canonical=True))
        if outcome.status != "sat":
            return None
        return Colouring(kk, tuple(c + shift for c in outcome.colouring.colours))
    if cid == "c8-rs-lift":
        outcome = decide(input_obj, SolveParams("rs", k - 2))
        if outcome.status != "sat":
            return None
        return Colouring(k, tuple(c + 1 for c in outcome.colouring.colours))
    kind = "star" if cid == "c45-star-regularize" else "rs"
    outcome = decide(input_obj, SolveParams(kind, k))
    return outcome.colouring if outcome.status == "sat" else None


def _cmd_catalogue(args) -> int:
    what = args.kind
    payload = {}
    if what in ("all", "gadgets"):
        payload["gadgets"] = gadgets.catalogue()
    if what in ("all", "lemmas"):
        payload["lemmas"] = lemmas.catalogue()
    if what in ("all", "constructions"):
        payload["constructions"] = list(reductions.CONSTRUCTION_IDS)
    _dump_json(payload, args.out)
    return EXIT_OK


def _budget_flags(p):
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--budget-nodes", type=int, default=None)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="colour-lab")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gadget", help="build a gadget and export it")
    p.add_argument("--id", required=True, choices=gadgets.GADGET_IDS)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--T", type=int)
    p.add_argument("--shape", choices=("pyramid", "chain"))
    p.add_argument("--format", default="graph6", choices=("graph6", "edge-list", "dot", "json"))
    p.add_argument("--out", default="-")
    p.add_argument("--terminals-out")
    p.set_defaults(func=_cmd_gadget)

    p = sub.add_parser("solve", help="decide k-colourability of a kind")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--kind", required=True, choices=("proper", "star", "rs"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--threads", type=int, default=None)
    _budget_flags(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("chromatic", help="least k admitting a colouring")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--kind", required=True, choices=("proper", "star", "rs"))
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_chromatic)

    p = sub.add_parser("enumerate", help="count (and emit) valid colourings")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--kind", required=True, choices=("proper", "star", "rs"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--emit", help="write each colouring as a JSON line")
    _budget_flags(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify-lemma", help="mechanically verify a gadget lemma")
    p.add_argument("--id", required=True, choices=lemmas.LEMMA_IDS)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--T", type=int)
    p.add_argument("--shape", choices=("pyramid", "chain"))
    _budget_flags(p)
    p.add_argument("--report", default="-")
    p.set_defaults(func=_cmd_verify_lemma)

    p = sub.add_parser("reduce", help="run a construction")
    p.add_argument("--construction", required=True, choices=reductions.CONSTRUCTION_IDS)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--no-check", action="store_true",
                   help="skip the input-class precondition checks")
    p.add_argument("--format", default="graph6", choices=("graph6", "edge-list", "dot"))
    p.add_argument("--out", required=True)
    p.add_argument("--trace")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("witness", help="translate a witness through a trace")
    p.add_argument("--direction", required=True, choices=("forward", "backward"))
    p.add_argument("--trace", required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("roundtrip", help="find witness, go forward and back")
    p.add_argument("--construction", required=True, choices=reductions.CONSTRUCTION_IDS)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_roundtrip)

    p = sub.add_parser("catalogue", help="list gadgets, lemmas, constructions")
    p.add_argument("--kind", default="all", choices=("all", "gadgets", "lemmas", "constructions"))
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_catalogue)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ColourLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
