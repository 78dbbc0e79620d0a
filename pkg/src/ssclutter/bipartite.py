"""ESS bipartite graphs: distance layers, upward degree sequences, Ferrers layouts.

A connected ESS bipartite graph is rebuilt from any base vertex w by two
non-increasing sequences: the upward degrees d of the neighbours of w and
the upward degrees d' of the second layer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .core import Graph, Labeling, TheoremViolation, ValidationError, iter_bits, popcount
from .graphs import bfs_distances, eccentricity, edge_complex, is_ess_graph
from .shelling import FacetOrder, verify_strong_order


class NotDecomposable(Exception):
    """The graph cannot be built from the chosen vertex by upward sequences."""

    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class LayerReport:
    """Distance layers D(w, i) with upward and downward neighbourhoods."""

    graph: Graph
    w: int
    layers: tuple[int, ...]
    unreachable: int
    up: tuple[int, ...]
    down: tuple[int, ...]

    @property
    def beyond_three(self) -> int:
        return sum(self.layers[4:], 0)

    def layer(self, i: int) -> int:
        return self.layers[i] if i < len(self.layers) else 0

    def upward_degree(self, v: int) -> int:
        return popcount(self.up[v])

    def upward_sequence(self, i: int) -> list[int]:
        return sorted((self.upward_degree(v) for v in iter_bits(self.layer(i))), reverse=True)

    def sizes(self) -> list[int]:
        return [popcount(m) for m in self.layers]


def layer_report(g: Graph, w: int | str) -> LayerReport:
    w = w if isinstance(w, int) else g.universe.position(w)
    dist = bfs_distances(g, w)
    depth = max(dist)
    layers = [0] * (depth + 1)
    unreachable = 0
    for v, d in enumerate(dist):
        if d < 0:
            unreachable |= 1 << v
        else:
            layers[d] |= 1 << v
    up = []
    down = []
    for v, d in enumerate(dist):
        if d < 0:
            up.append(0)
            down.append(0)
            continue
        up.append(g.adj[v] & (layers[d + 1] if d + 1 <= depth else 0))
        down.append(g.adj[v] & (layers[d - 1] if d >= 1 else 0))
    return LayerReport(g, w, tuple(layers), unreachable, tuple(up), tuple(down))


def _non_increasing(seq: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(seq, seq[1:]))


@dataclass(frozen=True)
class UpwardSequences:
    """d = (d_1 >= ... >= d_t) and d' of length d_1, zero beyond index d_t.

    Empty ``d`` describes the one-vertex graph.
    """

    d: tuple[int, ...]
    dprime: tuple[int, ...]

    def __post_init__(self) -> None:
        d, dp = self.d, self.dprime
        if any(x < 0 for x in d + dp):
            raise ValidationError("upward degrees are non-negative")
        if not _non_increasing(d):
            raise ValidationError(f"d must be non-increasing, got {list(d)}")
        if not _non_increasing(dp):
            raise ValidationError(f"d' must be non-increasing, got {list(dp)}")
        if not d:
            if dp:
                raise ValidationError("d' must be empty when d is empty")
            return
        if len(dp) != d[0]:
            raise ValidationError(f"d' must have length d_1 = {d[0]}, got {len(dp)}")
        if any(dp[d[-1]:]):
            raise ValidationError(f"d' entries beyond position d_t = {d[-1]} must be zero")

    @classmethod
    def of(cls, d: Sequence[int], dprime: Sequence[int]) -> "UpwardSequences":
        return cls(tuple(d), tuple(dprime))

    @property
    def t(self) -> int:
        return len(self.d)

    def to_json(self) -> str:
        return json.dumps({"d": list(self.d), "dprime": list(self.dprime)})

    @classmethod
    def from_json(cls, text: str) -> "UpwardSequences":
        data = json.loads(text)
        return cls.of(data["d"], data["dprime"])


def construct_from_sequences(seqs: UpwardSequences) -> Graph:
    """Vertices w, x1..xt, y1..y_{d_1}, z1..z_{d'_1} in that order."""
    t = seqs.t
    ny = seqs.d[0] if t else 0
    nz = seqs.dprime[0] if seqs.dprime else 0
    labels = ["w"] + [f"x{i}" for i in range(1, t + 1)]
    labels += [f"y{j}" for j in range(1, ny + 1)] + [f"z{k}" for k in range(1, nz + 1)]
    if len(labels) > 64:
        raise ValidationError("constructed graph exceeds 64 vertices")
    x0, y0, z0 = 1, 1 + t, 1 + t + ny
    edges = [1 | (1 << (x0 + i)) for i in range(t)]
    for i, di in enumerate(seqs.d):
        edges += [(1 << (x0 + i)) | (1 << (y0 + j)) for j in range(di)]
    for k, dk in enumerate(seqs.dprime):
        edges += [(1 << (y0 + k)) | (1 << (z0 + m)) for m in range(dk)]
    return Graph.from_masks(Labeling(tuple(labels)), edges)


@dataclass(frozen=True)
class Decomposition:
    """Layer orders realising ``sequences`` from base vertex ``w``."""

    graph: Graph
    w: int
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    zs: tuple[int, ...]
    sequences: UpwardSequences

    def vertex_order(self) -> list[int]:
        return [self.w, *self.xs, *self.ys, *self.zs]


def bipartition(g: Graph) -> tuple[int, int] | None:
    """Two-colouring (colour 0 holds the least vertex of each component)."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in iter_bits(g.adj[v]):
                if colour[u] < 0:
                    colour[u] = 1 - colour[v]
                    stack.append(u)
                elif colour[u] == colour[v]:
                    return None
    zero = sum(1 << v for v in range(g.n) if colour[v] == 0)
    return zero, g.universe.full & ~zero


def _chain_sort(vertices: list[int], nbhd: Sequence[int], label: str) -> list[int]:
    """Sort by neighbourhood size descending; fail unless the sets form a chain."""
    order = sorted(vertices, key=lambda v: (-popcount(nbhd[v]), v))
    for a, b in zip(order, order[1:]):
        if nbhd[b] & ~nbhd[a]:
            raise NotDecomposable(f"upward neighbourhoods in {label} are not nested")
    return order


def decompose(g: Graph, w: int | str) -> Decomposition:
    """Recover the construction from ``w``; raises NotDecomposable otherwise."""
    w = w if isinstance(w, int) else g.universe.position(w)
    rep = layer_report(g, w)
    if rep.unreachable:
        raise NotDecomposable("graph is disconnected")
    if bipartition(g) is None:
        raise NotDecomposable("graph is not bipartite")
    if rep.beyond_three:
        raise NotDecomposable("some vertex lies at distance more than 3 from the base")
    d1, d2, d3 = rep.layer(1), rep.layer(2), rep.layer(3)
    xs = _chain_sort(list(iter_bits(d1)), rep.up, "D(w,1)")
    for y in iter_bits(d2):
        if rep.up[y] and rep.down[y] != d1:
            raise NotDecomposable(
                f"{g.universe.labels[y]} has upward neighbours but misses part of D(w,1)"
            )
    ys = sorted(iter_bits(d2), key=lambda v: (-popcount(rep.down[v]), -popcount(rep.up[v]), v))
    for a, b in zip(ys, ys[1:]):
        if rep.up[b] & ~rep.up[a]:
            raise NotDecomposable("upward neighbourhoods in D(w,2) are not nested")
    zs = sorted(iter_bits(d3), key=lambda v: (-popcount(rep.down[v]), v))
    d = tuple(popcount(rep.up[x]) for x in xs)
    dprime = tuple(popcount(rep.up[y]) for y in ys)
    try:
        seqs = UpwardSequences(d, dprime)
    except ValidationError as exc:
        raise NotDecomposable(str(exc)) from None
    dec = Decomposition(g, w, tuple(xs), tuple(ys), tuple(zs), seqs)
    if not _layer_bijection_ok(dec):
        raise NotDecomposable("graph differs from the construction under the layer orders")
    return dec


def _layer_bijection_ok(dec: Decomposition) -> bool:
    built = construct_from_sequences(dec.sequences)
    order = dec.vertex_order()
    if built.n != dec.graph.n:
        return False
    mapped = set()
    for e in built.edges:
        a, b = iter_bits(e)
        mapped.add((1 << order[a]) | (1 << order[b]))
    return mapped == set(dec.graph.edges)


def recover_sequences(g: Graph, w: int | str) -> UpwardSequences:
    return decompose(g, w).sequences


def lex_strong_shelling(g: Graph, w: int | str) -> FacetOrder:
    """Edges in lexicographic order for w, x's, y's, z's (earlier vertex first)."""
    dec = decompose(g, w)
    rank = {v: r for r, v in enumerate(dec.vertex_order())}

    def key(i: int) -> tuple[int, int]:
        a, b = sorted(rank[v] for v in iter_bits(g.edges[i]))
        return (a, b)

    cx = edge_complex(g)
    order = tuple(sorted(range(len(g.edges)), key=key))
    check = verify_strong_order(cx, order)
    if not check:
        raise TheoremViolation(f"lexicographic edge order fails at {check.violation}")
    return FacetOrder(cx, order, "strong")


@dataclass(frozen=True)
class FerrersLayout:
    """Side orders under which edges are closed towards the first vertices."""

    graph: Graph
    xs: tuple[int, ...]
    ys: tuple[int, ...]

    def partition(self) -> tuple[int, ...]:
        return tuple(self.graph.degree(x) for x in self.xs)

    def to_json(self) -> str:
        lab = self.graph.universe.labels
        return json.dumps({"x": [lab[v] for v in self.xs], "y": [lab[v] for v in self.ys]})


def staircase_ok(g: Graph, xs: Sequence[int], ys: Sequence[int]) -> bool:
    """Every x's neighbourhood is an initial run of ys, runs non-increasing."""
    prev = len(ys)
    prefix = [0]
    for y in ys:
        prefix.append(prefix[-1] | 1 << y)
    for x in xs:
        k = g.degree(x)
        if k > prev or g.adj[x] != prefix[k]:
            return False
        prev = k
    return True


def is_ferrers(g: Graph) -> FerrersLayout | None:
    """Degree-sorted staircase test; raises on non-bipartite input."""
    parts = bipartition(g)
    if parts is None:
        raise ValidationError("Ferrers recognition needs a bipartite graph")
    xs = sorted(iter_bits(parts[0]), key=lambda v: (-g.degree(v), v))
    ys = sorted(iter_bits(parts[1]), key=lambda v: (-g.degree(v), v))
    if staircase_ok(g, xs, ys):
        return FerrersLayout(g, tuple(xs), tuple(ys))
    return None


def eccentric_center(g: Graph) -> int:
    """Least vertex within distance 2 of every vertex."""
    for v in range(g.n):
        e = eccentricity(g, v)
        if e is not None and e <= 2:
            return v
    if g.n and is_ess_graph(g) is not None and bipartition(g) is not None and all(g.adj):
        raise TheoremViolation("ESS bipartite graph without a vertex of eccentricity <= 2")
    raise ValidationError("no vertex of eccentricity <= 2 (input is not a connected ESS bipartite graph)")


def _side_code(rows: int, cols: Sequence[int]) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(rows)):
        code = tuple(sorted(sum(1 << perm[r] for r in iter_bits(c)) for c in cols))
        if best is None or code < best:
            best = code
    return best  # type: ignore[return-value]


def bipartite_code(g: Graph) -> tuple | None:
    """Isomorphism invariant for connected bipartite graphs; None otherwise.

    Canonical form of the biadjacency matrix: rows are permuted exhaustively
    on the smaller side, columns sorted. Intended for small graphs.
    """
    parts = bipartition(g)
    if parts is None or g.n == 0 or min(bfs_distances(g, 0)) < 0:
        return None
    a_side, b_side = (list(iter_bits(p)) for p in parts)
    if len(a_side) > len(b_side):
        a_side, b_side = b_side, a_side
    options = [(a_side, b_side)] + ([(b_side, a_side)] if len(a_side) == len(b_side) else [])
    codes = []
    for rows, cols in options:
        pos = {v: i for i, v in enumerate(rows)}
        col_masks = [sum(1 << pos[u] for u in iter_bits(g.adj[c])) for c in cols]
        codes.append(_side_code(len(rows), col_masks))
    return (len(a_side), len(b_side), min(codes))


def connected_bipartite_graphs(n: int) -> Iterator[Graph]:
    """One connected bipartite graph on labels 1..n per isomorphism class."""
    if n == 1:
        yield Graph(Labeling.range(1), ())
        return
    universe = Labeling.range(n)
    seen = set()
    for a in range(1, n // 2 + 1):
        b = n - a
        for bits in range(1 << (a * b)):
            edges = [
                (1 << r) | (1 << (a + c))
                for r in range(a)
                for c in range(b)
                if bits >> (r * b + c) & 1
            ]
            if len(edges) < n - 1:
                continue
            g = Graph.from_masks(universe, edges)
            code = bipartite_code(g)
            if code is None or code in seen:
                continue
            seen.add(code)
            yield g


__all__ = [
    "Decomposition",
    "FerrersLayout",
    "LayerReport",
    "NotDecomposable",
    "UpwardSequences",
    "bipartite_code",
    "bipartition",
    "connected_bipartite_graphs",
    "construct_from_sequences",
    "decompose",
    "eccentric_center",
    "is_ferrers",
    "layer_report",
    "lex_strong_shelling",
    "recover_sequences",
    "staircase_ok",
]
