"""Command-line front end.

Subcommands: slice, verify, graphs, intersect, pullback, psi, witness.
JSON is the machine format (--json); text output is a projection of the
same data.  Exit codes: 0 all good, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .config import Config, load_config


def _fail_usage(msg: str) -> "SystemExit":
    print(f"error: {msg}", file=sys.stderr)
    return SystemExit(2)


GRAPH_NAMES = {
    "de": "Delta_empty",
    "de_s": "Delta_{empty|*}",
    "de_s_s": "Delta_{empty|*|*}",
    "phi": "Phi",
    "th": "Theta",
}


def _display_name(gen: str, n: int) -> str:
    if gen in GRAPH_NAMES:
        return GRAPH_NAMES[gen]
    if gen.startswith("th") and "_" in gen:
        a, b = gen[2:].split("_")
        return f"Theta_{{{a}|{b}}}"
    if gen.startswith("th"):
        return f"Theta_{gen[2:]}"
    if gen.startswith("de_"):
        rest = gen[3:]
        return f"Delta_{{empty|{rest}}}"
    if gen.endswith("_s") and gen.startswith("d"):
        return f"Delta_{{{gen[1:-2]}|*}}"
    if "_" in gen and gen.startswith("d"):
        a, b = gen[1:].split("_")
        return f"Delta_{{{a}|{b}}}"
    if gen.startswith("d"):
        return f"Delta_{gen[1:]}"
    return gen


def _graph_display(n: int, graph) -> str:
    """Readable stratum name: chains of separating edges get Delta_{..|..}."""
    sep = [i for i in range(len(graph.edges)) if graph.is_separating(i)]
    if len(sep) == len(graph.edges) and sep:
        sides = []
        for e in sep:
            rest = [i for i in range(len(graph.edges)) if i != e]
            amb = graph.contract_edges(rest)
            gv = next(v for v, g in enumerate(amb.genera) if g == 1)
            S = sorted(amb.vertex_markings(gv))
            sides.append("".join(map(str, S)) if S else "empty")
        sides.sort(key=lambda s: (s != "empty", len(s), s))
        if len(sides) == 1:
            return f"Delta_{sides[0]}" if sides[0] != "empty" else "Delta_empty"
        return "Delta_{" + "|".join(sides) + "}"
    from .catalog.spaces import graph_to_gen_name

    name = graph_to_gen_name(n, graph)
    if name:
        return _display_name(name, n)
    from .graphs import graph_literal

    return graph_literal(graph)


def _parse_divisor(text: str, n: int):
    """Accept D_empty / D_1 / D_12 / Phi / Theta_1 / a graph literal."""
    from .catalog.spaces import delta_graph, phi_graph, theta_graph
    from .graphs import parse_graph

    t = text.strip()
    if t.startswith("G("):
        return parse_graph(t)
    if t.lower() in ("phi",):
        return phi_graph(n)
    if t.lower().startswith("theta"):
        rest = t[5:].lstrip("_")
        if not rest:
            return theta_graph(n, frozenset({1}))
        return theta_graph(n, frozenset(int(c) for c in rest.split("_")[0]))
    if t.lower() in ("d_empty", "de", "d_e", "empty"):
        return delta_graph(n, frozenset())
    if t.lower().startswith("d"):
        digits = "".join(c for c in t if c.isdigit())
        if not digits:
            raise ValueError(f"cannot parse divisor {text!r}")
        return delta_graph(n, frozenset(int(c) for c in digits))
    raise ValueError(f"cannot parse divisor {text!r}")


def cmd_slice(args, cfg: Config) -> int:
    from .catalog import get_presentation, known_space_ids

    try:
        pres = get_presentation(args.space)
    except KeyError:
        raise _fail_usage(f"unknown space {args.space!r}; known: {', '.join(known_space_ids())}")
    if args.degree < 0 or args.degree > cfg.max_degree:
        raise _fail_usage(f"degree must be between 0 and {cfg.max_degree}")
    labels, grp = pres.degree_slice(args.degree)
    data = {
        "space": args.space,
        "degree": args.degree,
        "type": grp.describe(),
        "basis": list(labels),
    }
    if args.json:
        print(json.dumps(data))
    else:
        print(data["type"])
        if args.basis:
            print("basis:", ", ".join(labels))
    return 0


def _print_reports(reports, as_json: bool) -> int:
    if as_json:
        print(json.dumps([r.to_dict() for r in reports]))
    else:
        for r in reports:
            print(f"{r.status.upper():7} {r.check:28} [{r.paper_ref}] {r.computed}")
        n_fail = sum(1 for r in reports if r.status == "fail")
        print(f"-- {len(reports)} checks, {n_fail} failing")
    return 1 if any(r.status == "fail" for r in reports) else 0


def cmd_verify(args, cfg: Config) -> int:
    from .catalog import known_checks, run_all, run_check

    if args.check:
        if args.check not in known_checks():
            raise _fail_usage(f"unknown check {args.check!r}")
        reports = [run_check(args.check, cfg)]
    else:
        reports = run_all(args.filter, cfg)
        if not reports:
            raise _fail_usage(f"no checks match prefix {args.filter!r}")
    return _print_reports(reports, args.json)


def cmd_graphs(args, cfg: Config) -> int:
    from .graphs import enumerate_stable_graphs, graph_literal

    try:
        graphs = enumerate_stable_graphs(args.genus, args.n)
    except ValueError as exc:
        raise _fail_usage(str(exc))
    if args.json:
        print(json.dumps([graph_literal(g) for g in graphs]))
    else:
        for g in graphs:
            print(graph_literal(g))
        print(f"-- {len(graphs)} graphs")
    return 0


def cmd_intersect(args, cfg: Config) -> int:
    from .graphs import graph_literal, intersect_strata

    n = args.n
    try:
        ga = _parse_divisor(args.a, n)
        gb = _parse_divisor(args.b, n)
        got = intersect_strata(ga, gb, args.genus, n)
    except ValueError as exc:
        raise _fail_usage(str(exc))
    rows = []
    for g in got:
        if args.genus == 1:
            name = _graph_display(n, g)
        else:
            name = None
        rows.append({"graph": graph_literal(g), "name": name})
    if args.json:
        print(json.dumps(rows))
    else:
        if not rows:
            print("(empty)")
        for r in rows:
            print(r["name"] or r["graph"])
    return 0


def cmd_pullback(args, cfg: Config) -> int:
    from .catalog import get_presentation
    from .catalog.taut import forgetful_pullback_module

    if args.to != args.src + 1:
        raise _fail_usage("only one marking can be added at a time")
    if not 1 <= args.src <= 3:
        raise _fail_usage("supported source spaces have 1 <= n <= 3")
    src = get_presentation(f"dM1{args.src}")
    try:
        elt = src.element(args.cls)
    except Exception as exc:
        raise _fail_usage(f"cannot parse class {args.cls!r}: {exc}")
    out = forgetful_pullback_module(args.src, elt)
    if args.json:
        print(json.dumps({"class": str(out)}))
    else:
        print(out)
    return 0


def cmd_psi(args, cfg: Config) -> int:
    from .catalog.taut import psi_ring

    try:
        p = psi_ring(args.genus, args.n, args.i)
    except (ValueError, KeyError) as exc:
        raise _fail_usage(str(exc))
    if args.json:
        print(json.dumps({"psi": str(p)}))
    else:
        print(p)
    return 0


def cmd_witness(args, cfg: Config) -> int:
    from .catalog import run_all

    prefix = args.name or "witness."
    reports = run_all(prefix, cfg)
    if not reports:
        raise _fail_usage(f"no witness checks match {prefix!r}")
    return _print_reports(reports, args.json)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chowcalc",
        description="Exact Chow-group computations for moduli of pointed genus-one curves",
    )
    ap.add_argument("--config", help="path to a key=value config file")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("slice", help="isomorphism type of a degree slice")
    p.add_argument("--space", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--basis", action="store_true", help="also print basis labels")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_slice)

    p = sub.add_parser("verify", help="run verification checks")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--check", help="a single check id")
    g.add_argument("--all", action="store_true", help="run the whole registry")
    g.add_argument("--filter", help="run checks with this id prefix")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("graphs", help="enumerate stable graphs")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_graphs)

    p = sub.add_parser("intersect", help="generic intersection of two strata")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_intersect)

    p = sub.add_parser("pullback", help="forgetful pullback of a boundary class")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--from", dest="src", type=int, required=True)
    p.add_argument("--to", dest="to", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_pullback)

    p = sub.add_parser("psi", help="psi class on a stable-curve space")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_psi)

    p = sub.add_parser("witness", help="run the polynomial witness checks")
    p.add_argument("--name", help="check id prefix (default witness.)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_witness)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, ValueError) as exc:
        raise _fail_usage(f"bad config: {exc}")
    try:
        return args.fn(args, cfg)
    except SystemExit:
        raise
    return 0


if __name__ == "__main__":
    sys.exit(main())
