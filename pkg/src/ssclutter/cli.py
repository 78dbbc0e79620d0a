"""Command line front end: ``ssclutter <command> --input FILE``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .bipartite import NotDecomposable, decompose, is_ferrers, lex_strong_shelling
from .clutters import d_nonedges, e_chordal_peo, w_chordal_witness
from .complexes import dual_of_independence
from .core import Clutter, Graph, SimplicialComplex, ValidationError
from .formats import facets_dot, graph_dot, parse
from .generic_tree import generic_graph, generic_matrix, gt_report
from .graphs import chordless_cycle, complement_graph, find_peo, is_ess_graph
from .ideals import alexander_dual, find_linear_quotients, to_ideal
from .shelling import (
    FacetOrder,
    find_shelling,
    find_strong_shelling,
    is_geodesic,
    oracle_strong_shellable,
)
from .suites import DEFAULT_SEED, SUITES


@dataclass
class Verdict:
    predicate: str
    holds: bool
    certificate: Any = None
    witness: Any = None
    ms: int = 0
    informational: bool = False
    dot: str | None = None

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "holds": self.holds,
            "certificate": self.certificate,
            "witness": self.witness,
            "ms": self.ms,
        }


def _names(order: FacetOrder) -> list[list[str]]:
    return [list(f) for f in order.named()]


def _labels(g: Graph, vertices: Sequence[int]) -> list[str]:
    return [g.universe.labels[v] for v in vertices]


def _order_dot(cx: SimplicialComplex | Graph, order: FacetOrder | None) -> str:
    idx = list(order.order) if order is not None else None
    if isinstance(cx, Graph):
        return graph_dot(cx, idx)
    return facets_dot(cx, idx)


def cmd_ss(args) -> Verdict:
    cx = parse(args.input, "facets")
    order = find_strong_shelling(cx)
    witness = None
    if order is None:
        geodesic = not cx.is_pure or is_geodesic(cx)
        witness = "search exhausted" if geodesic else "facet set is not geodesic"
    certificate = _names(order) if order is not None else None
    if len(cx.facets) <= args.max_facets:
        truth = oracle_strong_shellable(cx, args.max_facets)
        if truth != (order is not None):
            raise AssertionError("search and exhaustive oracle disagree")
    return Verdict("strongly-shellable", order is not None, certificate, witness, dot=_order_dot(cx, order))


def cmd_shellable(args) -> Verdict:
    cx = parse(args.input, "facets")
    order = find_shelling(cx)
    cert = _names(order) if order is not None else None
    return Verdict("shellable", order is not None, cert, None if order is not None else "search exhausted",
                   dot=_order_dot(cx, order))


def _clutter_or_graph(path: str) -> Clutter:
    c = parse(path, "clutter")
    if c.edges and all(bin(e).count("1") == 2 for e in c.edges):
        return Graph(c.universe, c.edges)
    return c


def cmd_ess(args) -> Verdict:
    c = _clutter_or_graph(args.input)
    if isinstance(c, Graph):
        order = is_ess_graph(c)
        witness = None
        if order is None:
            cyc = chordless_cycle(complement_graph(c))
            witness = {"complement_chordless_cycle": _labels(c, cyc)}
        return Verdict("ess", order is not None, _names(order) if order is not None else None, witness,
                       dot=graph_dot(c, list(order.order) if order is not None else None))
    if not c.is_uniform:
        raise ValidationError("ESS is defined for uniform clutters")
    cx = SimplicialComplex(c.universe, c.edges)
    order = find_strong_shelling(cx)
    return Verdict("ess", order is not None, _names(order) if order is not None else None,
                   None if order is not None else "search exhausted", dot=_order_dot(cx, order))


def cmd_chordal(args) -> Verdict:
    g = parse(args.input, "edges")
    if args.complement:
        g = complement_graph(g)
    peo = find_peo(g)
    if peo is not None:
        return Verdict("chordal", True, _labels(g, peo.order), dot=graph_dot(g))
    return Verdict("chordal", False, None, {"chordless_cycle": _labels(g, chordless_cycle(g))},
                   dot=graph_dot(g))


def cmd_wchordal(args) -> Verdict:
    c = parse(args.input, "clutter")
    hit = w_chordal_witness(c)
    if hit is None:
        return Verdict("w-chordal", True)
    minor, spec = hit
    witness = {
        "steps": [list(s) for s in spec.steps],
        "minor_edges": [list(e) for e in minor.named_edges()],
    }
    return Verdict("w-chordal", False, None, witness)


def cmd_echordal(args) -> Verdict:
    c = parse(args.input, "clutter")
    order = e_chordal_peo(c)
    cert = [c.universe.labels[v] for v in order] if order is not None else None
    return Verdict("e-chordal", order is not None, cert, None if order is not None else "search exhausted")


def cmd_dual(args) -> Verdict:
    c = parse(args.input, "clutter")
    if args.d is None:
        dual = alexander_dual(to_ideal(c))
        return Verdict("alexander-dual", True, str(dual), informational=True)
    cx = dual_of_independence(c, args.d)
    order = find_strong_shelling(cx)
    cert = {
        "d_nonedges": [list(e) for e in d_nonedges(c, args.d).named_edges()],
        "facets": [list(f) for f in cx.named_facets()],
        "order": _names(order) if order is not None else None,
    }
    return Verdict("dual-strongly-shellable", order is not None, cert,
                   None if order is not None else "search exhausted", dot=_order_dot(cx, order))


def cmd_linquot(args) -> Verdict:
    c = parse(args.input, "clutter")
    ideal = to_ideal(c)
    order = find_linear_quotients(ideal)
    cert = [ideal.monomial(ideal.generators[p]) for p in order] if order is not None else None
    return Verdict("linear-quotients", order is not None, cert, None if order is not None else "search exhausted")


def cmd_generic_graph(args) -> Verdict:
    tree = parse(args.input, "tree")
    if args.report:
        rep = gt_report(tree)
        return Verdict("generic-graph-report", rep.ok, rep.to_dict(), rep.failed() or None,
                       dot=graph_dot(rep.generic.graph))
    gt = generic_graph(tree)
    mat = generic_matrix(tree)
    cert = {
        "vertices": list(gt.graph.universe.labels),
        "edges": [list(e) for e in gt.graph.named_edges()],
        "matrix": mat.dense(),
    }
    return Verdict("generic-graph", True, cert, informational=True, dot=graph_dot(gt.graph))


def cmd_ferrers(args) -> Verdict:
    g = parse(args.input, "edges")
    layout = is_ferrers(g)
    if layout is None:
        return Verdict("ferrers", False, None, "degree-sorted staircase fails")
    return Verdict("ferrers", True, json.loads(layout.to_json()))


def cmd_decompose(args) -> Verdict:
    g = parse(args.input, "edges")
    base = args.base if args.base is not None else g.universe.labels[0]
    try:
        dec = decompose(g, base)
    except NotDecomposable as exc:
        return Verdict("decomposable", False, None, exc.reason)
    order = lex_strong_shelling(g, dec.w)
    cert = {
        "base": g.universe.labels[dec.w],
        "d": list(dec.sequences.d),
        "dprime": list(dec.sequences.dprime),
        "x": _labels(g, dec.xs),
        "y": _labels(g, dec.ys),
        "z": _labels(g, dec.zs),
        "lex_order": _names(order),
    }
    return Verdict("decomposable", True, cert, dot=graph_dot(g, list(order.order)))


def cmd_suite(args) -> Verdict:
    fn = SUITES[args.name]
    kwargs: dict[str, Any] = {}
    if args.name not in ("lpath", "trees7"):
        kwargs["seed"] = args.seed
    if args.count is not None and args.name in ("equivalence5", "oracle", "clutter-chordal", "expansion", "preservation", "ideals"):
        kwargs["count"] = args.count
    rep = fn(**kwargs)
    return Verdict(f"suite:{rep.name}", rep.ok, rep.to_dict(), rep.first_failure)


COMMANDS: dict[str, tuple[Callable[[Any], Verdict], str]] = {
    "ss": (cmd_ss, "strong shellability of a facet list"),
    "shellable": (cmd_shellable, "shellability of a facet list"),
    "ess": (cmd_ess, "edgewise strong shellability of a graph or uniform clutter"),
    "chordal": (cmd_chordal, "chordality of a graph (or its complement)"),
    "wchordal": (cmd_wchordal, "W-chordality of a clutter"),
    "echordal": (cmd_echordal, "perfect elimination order of a uniform clutter"),
    "dual": (cmd_dual, "Alexander dual; with --d, strong shellability of I(c_d(C)) dual"),
    "linquot": (cmd_linquot, "linear quotients of the edge or facet ideal"),
    "generic-graph": (cmd_generic_graph, "generic graph and matrix of a tree"),
    "ferrers": (cmd_ferrers, "Ferrers layout of a bipartite graph"),
    "decompose": (cmd_decompose, "upward degree sequences of a bipartite graph"),
    "suite": (cmd_suite, "run a verification suite"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    parser = argparse.ArgumentParser(prog="ssclutter", description="Strong shellability toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, parents=[common])
        if name == "suite":
            p.add_argument("name", choices=sorted(SUITES))
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
            p.add_argument("--count", type=int)
            continue
        p.add_argument("--input", required=True, metavar="PATH")
        if name == "ss":
            p.add_argument("--max-facets", type=int, default=6,
                           help="cross-check with the exhaustive oracle up to this many facets")
        if name == "chordal":
            p.add_argument("--complement", action="store_true")
        if name == "dual":
            p.add_argument("--d", type=int)
        if name == "generic-graph":
            p.add_argument("--report", action="store_true")
        if name == "decompose":
            p.add_argument("--base", help="base vertex label (default: first vertex)")
    return parser


def _render_text(v: Verdict) -> str:
    lines = [f"{v.predicate}: {'yes' if v.holds else 'no'}"]
    if v.certificate is not None:
        lines.append(f"certificate: {json.dumps(v.certificate)}")
    if v.witness is not None:
        lines.append(f"witness: {json.dumps(v.witness)}")
    lines.append(f"time: {v.ms} ms")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fn = COMMANDS[args.command][0]
    start = time.perf_counter()
    try:
        verdict = fn(args)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    verdict.ms = int((time.perf_counter() - start) * 1000)
    if args.format == "json":
        print(json.dumps(verdict.to_dict()))
    elif args.format == "dot":
        if verdict.dot is None:
            print(f"error: {args.command} has no DOT output", file=sys.stderr)
            return 2
        print(verdict.dot)
    else:
        print(_render_text(verdict))
    return 0 if verdict.holds or verdict.informational else 1


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["COMMANDS", "Verdict", "build_parser", "main"]
