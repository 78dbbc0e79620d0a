"""Text and JSON input, JSON and DOT output.

Text files hold one facet or edge per line as whitespace-separated labels;
``#`` starts a comment. A line ``@vertices a b c`` fixes the label order and
may name isolated vertices. Otherwise labels are numbered in order of first
appearance.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import (
    Clutter,
    Graph,
    Labeling,
    SimplicialComplex,
    Tree,
    ValidationError,
    canonical_key,
    find_cycle,
    popcount,
)

KINDS = ("facets", "edges", "clutter", "tree")


class ParseError(ValidationError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _tokenize(text: str) -> tuple[list[str], list[tuple[int, list[str]]]]:
    declared: list[str] = []
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "@vertices":
            declared.extend(tokens[1:])
            continue
        if tokens[0].startswith("@"):
            raise ParseError(f"unknown directive {tokens[0]!r}", lineno)
        if len(set(tokens)) != len(tokens):
            raise ParseError("repeated label on one line", lineno)
        rows.append((lineno, tokens))
    return declared, rows


def _universe(declared: list[str], rows) -> Labeling:
    order = list(dict.fromkeys(declared))
    known = set(order)
    for lineno, tokens in rows:
        for tok in tokens:
            if tok not in known:
                if declared:
                    raise ParseError(f"label {tok!r} missing from @vertices", lineno)
                known.add(tok)
                order.append(tok)
    try:
        return Labeling(tuple(order))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def parse_text(text: str, kind: str) -> SimplicialComplex | Clutter:
    if kind not in KINDS:
        raise ValidationError(f"kind must be one of {KINDS}, got {kind!r}")
    declared, rows = _tokenize(text)
    universe = _universe(declared, rows)
    seen: dict[int, int] = {}
    masks = []
    for lineno, tokens in rows:
        m = universe.mask(tokens)
        if kind in ("edges", "tree") and len(tokens) != 2:
            raise ParseError(f"expected two labels per edge, got {len(tokens)}", lineno)
        if m in seen:
            raise ParseError(f"duplicate of line {seen[m]}", lineno)
        for other, where in seen.items():
            if other & m == m or other & m == other:
                small, big = (m, other) if other & m == m else (other, m)
                raise ParseError(
                    f"{universe.render(small)} is contained in {universe.render(big)} (line {where})",
                    lineno,
                )
        seen[m] = lineno
        masks.append(m)
    ordered = tuple(sorted(masks, key=canonical_key))
    if kind == "facets":
        return SimplicialComplex(universe, ordered)
    if kind == "clutter":
        return Clutter(universe, ordered)
    if kind == "edges":
        return Graph(universe, ordered)
    return _tree(universe, masks, [ln for ln, _ in rows])


def _tree(universe: Labeling, masks: list[int], lines: list[int]) -> Tree:
    for k in range(1, len(masks) + 1):
        prefix = Graph.from_masks(universe, masks[:k])
        if len(prefix.edges) > len(universe) - 1 or find_cycle(prefix) != "?":
            raise ParseError(f"edge closes a cycle {find_cycle(prefix)}", lines[k - 1])
    try:
        return Tree.from_masks(universe, masks)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def to_json(obj: Any) -> str:
    """JSON for graphs, trees, clutters and complexes (labels, not indices)."""
    u = getattr(obj, "universe", None)
    if isinstance(obj, SimplicialComplex):
        data = {"kind": "facets", "vertices": list(u.labels), "sets": [list(u.names(f)) for f in obj.facets]}
    elif isinstance(obj, Tree):
        data = {"kind": "tree", "vertices": list(u.labels), "sets": [list(u.names(e)) for e in obj.edges]}
    elif isinstance(obj, Graph):
        data = {"kind": "edges", "vertices": list(u.labels), "sets": [list(u.names(e)) for e in obj.edges]}
    elif isinstance(obj, Clutter):
        data = {"kind": "clutter", "vertices": list(u.labels), "sets": [list(u.names(e)) for e in obj.edges]}
    elif hasattr(obj, "to_json"):
        return obj.to_json()
    else:
        raise ValidationError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(data)


def from_json(text: str, kind: str | None = None) -> Any:
    data = json.loads(text)
    if "d" in data and "dprime" in data:
        from .bipartite import UpwardSequences

        return UpwardSequences.of(data["d"], data["dprime"])
    kind = kind or data.get("kind")
    if kind not in KINDS:
        raise ValidationError(f"unknown JSON kind {kind!r}")
    universe = Labeling.of(data["vertices"])
    masks = [universe.mask([str(x) for x in s]) for s in data["sets"]]
    ordered = tuple(sorted(masks, key=canonical_key))
    if kind == "facets":
        return SimplicialComplex(universe, ordered)
    if kind == "clutter":
        return Clutter(universe, ordered)
    if kind == "edges":
        return Graph(universe, ordered)
    return Tree(universe, ordered)


def parse(path: str | Path, kind: str) -> Any:
    """Read ``path`` as text (or JSON when it starts with ``{``)."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        obj = from_json(text)
        if kind == "clutter" and isinstance(obj, Clutter) and not isinstance(obj, SimplicialComplex):
            return Clutter(obj.universe, obj.edges)
        return obj
    return parse_text(text, kind)


def _q(label: str) -> str:
    return '"' + label.replace('"', '\\"') + '"'


def graph_dot(g: Graph, order: list[int] | None = None) -> str:
    """DOT graph; with ``order`` (edge indices) each edge is labelled by its position."""
    u = g.universe
    pos = {e: p + 1 for p, e in enumerate(order)} if order is not None else {}
    lines = ["graph G {"]
    for lab in u.labels:
        lines.append(f"  {_q(lab)};")
    for i, e in enumerate(g.edges):
        a, b = u.names(e)
        attr = f' [label="{pos[i]}"]' if i in pos else ""
        lines.append(f"  {_q(a)} -- {_q(b)}{attr};")
    lines.append("}")
    return "\n".join(lines)


def facets_dot(cx: SimplicialComplex, order: list[int] | None = None) -> str:
    """Facets as nodes (annotated with their position), linked when they share a ridge."""
    u = cx.universe
    seq = order if order is not None else list(range(len(cx.facets)))
    lines = ["graph F {"]
    for p, i in enumerate(seq, start=1):
        lines.append(f'  f{i} [label="{p}: {u.render(cx.facets[i])}"];')
    facets = cx.facets
    for a in range(len(facets)):
        for b in range(a + 1, len(facets)):
            if popcount(facets[a]) == popcount(facets[b]) and popcount(facets[a] & ~facets[b]) == 1:
                lines.append(f"  f{a} -- f{b};")
    lines.append("}")
    return "\n".join(lines)


__all__ = [
    "KINDS",
    "ParseError",
    "facets_dot",
    "from_json",
    "graph_dot",
    "parse",
    "parse_text",
    "to_json",
]
