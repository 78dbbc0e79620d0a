"""The generic graph G_T of a tree and the structure of its independence complex.

Vertices of G_T are the symbols x_{i,j}, one for each orientation of each
tree edge. For every pair of tree vertices i != j there is exactly one edge,
joining x_{i,b} and x_{j,e}, where b and e are the second and the
second-to-last vertices on the tree path from i to j.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

from .clutters import independence_complex
from .core import (
    Graph,
    Labeling,
    SimplicialComplex,
    Tree,
    ValidationError,
    iter_bits,
    popcount,
)
from .graphs import bfs_distances, clique_number, diameter, is_connected, is_ess_graph, leaves
from .shelling import FacetOrder, codim_one_graph, verify_strong_order


def _symbol(tree: Tree, i: int, j: int) -> str:
    lab = tree.universe.labels
    return f"x_{{{lab[i]},{lab[j]}}}"


def _parents(tree: Tree) -> list[list[int]]:
    """parents[r][v]: neighbour of v on the path towards r (r itself maps to -1)."""
    n = tree.n
    out = []
    for r in range(n):
        par = [-1] * n
        seen = 1 << r
        queue = deque([r])
        while queue:
            v = queue.popleft()
            for u in iter_bits(tree.adj[v] & ~seen):
                seen |= 1 << u
                par[u] = v
                queue.append(u)
        out.append(par)
    return out


def path_ends(tree: Tree, i: int | str, j: int | str) -> tuple[int, int]:
    """(b(i,j), e(i,j)): second and second-to-last vertices of the i-j path."""
    i = i if isinstance(i, int) else tree.universe.position(i)
    j = j if isinstance(j, int) else tree.universe.position(j)
    if i == j:
        raise ValidationError("path ends need two distinct vertices")
    par = _parents(tree)
    return par[j][i], par[i][j]


@dataclass(frozen=True)
class GenericGraph:
    """G_T together with the map (i, j) -> vertex index of x_{i,j}."""

    tree: Tree
    graph: Graph
    vertex: dict[tuple[int, int], int] = field(compare=False)

    def symbol(self, i: int, j: int) -> int:
        return self.vertex[(i, j)]

    def pair(self, v: int) -> tuple[int, int]:
        for key, idx in self.vertex.items():
            if idx == v:
                return key
        raise ValidationError(f"no vertex {v}")


def _tree_edges(tree: Tree) -> list[tuple[int, int]]:
    return [tuple(iter_bits(e)) for e in tree.edges]  # type: ignore[misc]


def generic_graph(tree: Tree) -> GenericGraph:
    if tree.n < 2:
        raise ValidationError("the generic graph needs a tree with at least 2 vertices")
    vertex: dict[tuple[int, int], int] = {}
    labels = []
    for i, j in _tree_edges(tree):
        for a, b in ((i, j), (j, i)):
            vertex[(a, b)] = len(labels)
            labels.append(_symbol(tree, a, b))
    par = _parents(tree)
    edges = []
    for i, j in combinations(range(tree.n), 2):
        edges.append((1 << vertex[(i, par[j][i])]) | (1 << vertex[(j, par[i][j])]))
    return GenericGraph(tree, Graph.from_masks(Labeling(tuple(labels)), edges), vertex)


@dataclass(frozen=True)
class GenericMatrix:
    """Sparse symbolic matrix: one row per tree edge, columns are tree vertices."""

    tree: Tree
    rows: tuple[tuple[tuple[int, str], tuple[int, str]], ...]

    def dense(self) -> list[list[str]]:
        out = []
        for row in self.rows:
            line = ["0"] * self.tree.n
            for col, sym in row:
                line[col] = sym
            out.append(line)
        return out

    def render(self) -> str:
        cells = self.dense()
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def to_json(self) -> str:
        lab = self.tree.universe.labels
        return json.dumps({"rows": [{lab[c]: s for c, s in row} for row in self.rows]})


def generic_matrix(tree: Tree) -> GenericMatrix:
    """Row for edge {i, j}, i < j: -x_{i,j} in column i and x_{j,i} in column j."""
    rows = tuple(
        ((i, "-" + _symbol(tree, i, j)), (j, _symbol(tree, j, i))) for i, j in _tree_edges(tree)
    )
    return GenericMatrix(tree, rows)


@dataclass(frozen=True)
class OrientationAssignment:
    """One symbol x_{u,v} per tree edge, as a vertex set of G_T."""

    generic: GenericGraph
    vertices: int

    def __post_init__(self) -> None:
        tree = self.generic.tree
        if popcount(self.vertices) != tree.n - 1:
            raise ValidationError("an orientation assignment picks n-1 symbols")
        for i, j in _tree_edges(tree):
            pair = (1 << self.generic.symbol(i, j)) | (1 << self.generic.symbol(j, i))
            if popcount(self.vertices & pair) != 1:
                raise ValidationError("an orientation assignment picks one symbol per tree edge")

    def __str__(self) -> str:
        return self.generic.graph.universe.render(self.vertices)


def out_tree_assignment(gt: GenericGraph | Tree, root: int | str) -> OrientationAssignment:
    """Orient every tree edge away from ``root``."""
    if isinstance(gt, Tree):
        gt = generic_graph(gt)
    tree = gt.tree
    root = root if isinstance(root, int) else tree.universe.position(root)
    dist = bfs_distances(tree, root)
    m = 0
    for i, j in _tree_edges(tree):
        m |= 1 << (gt.symbol(i, j) if dist[i] < dist[j] else gt.symbol(j, i))
    return OrientationAssignment(gt, m)


def prufer_trees(n: int) -> Iterator[Tree]:
    """All labelled trees on the labels 1..n, decoded from Prüfer sequences."""
    if n < 2:
        raise ValidationError("Prüfer enumeration needs n >= 2")
    universe = Labeling.range(n)
    for seq in product(range(n), repeat=n - 2):
        yield Tree.from_masks(universe, _decode_prufer(n, seq))


def _decode_prufer(n: int, seq: tuple[int, ...]) -> list[int]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for v in seq:
        leaf = heapq.heappop(heap)
        edges.append((1 << leaf) | (1 << v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(heap, v)
    a, b = heap
    edges.append((1 << a) | (1 << b))
    return edges


def tree_centres(g: Graph) -> list[int]:
    """The one or two centres of a tree, found by peeling leaves."""
    remaining = g.universe.full
    deg = [popcount(a) for a in g.adj]
    layer = [v for v in range(g.n) if deg[v] <= 1]
    left = g.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            remaining &= ~(1 << v)
            for u in iter_bits(g.adj[v] & remaining):
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return list(iter_bits(remaining))


def _rooted_code(g: Graph, root: int) -> str:
    def code(v: int, parent: int) -> str:
        kids = sorted(code(u, v) for u in iter_bits(g.adj[v]) if u != parent)
        return "(" + "".join(kids) + ")"

    return code(root, -1)


def tree_code(g: Graph) -> str | None:
    """AHU canonical code of an unlabelled tree; None if ``g`` is not a tree."""
    if g.n == 0 or len(g.edges) != g.n - 1 or not is_connected(g):
        return None
    return min(_rooted_code(g, c) for c in tree_centres(g))


def connected_order(tree: Tree, start: int = 0) -> list[int]:
    """Breadth-first vertex order: every prefix induces a connected subtree."""
    dist = bfs_distances(tree, start)
    return sorted(range(tree.n), key=lambda v: (dist[v], v))


@dataclass
class GTReport:
    """Every structural claim about G_T, evaluated for one tree."""

    tree: Tree
    generic: GenericGraph
    clique_number: int
    tree_leaves: int
    graph_leaves: int
    diameter: int | None
    connected: bool
    ess_order: FacetOrder | None
    independence: SimplicialComplex
    assignments: list[OrientationAssignment]
    strong_order: FacetOrder | None
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_dict(self) -> dict:
        u = self.generic.graph.universe
        return {
            "tree": [list(self.tree.universe.names(e)) for e in self.tree.edges],
            "vertices": list(u.labels),
            "edges": [list(u.names(e)) for e in self.generic.graph.edges],
            "clique_number": self.clique_number,
            "tree_leaves": self.tree_leaves,
            "graph_leaves": self.graph_leaves,
            "diameter": self.diameter,
            "connected": self.connected,
            "ess_order": None if self.ess_order is None else [list(f) for f in self.ess_order.named()],
            "independence_facets": [list(f) for f in self.independence.named_facets()],
            "strong_order": None if self.strong_order is None else [list(f) for f in self.strong_order.named()],
            "checks": self.checks,
            "ok": self.ok,
        }


def _four_edge_property(g: Graph) -> bool:
    adj = g.adj
    for e1, e2 in combinations(g.edges, 2):
        a, b = iter_bits(e1)
        if not (adj[a] | adj[b]) & e2:
            return False
    return True


def _observations(gt: GenericGraph) -> tuple[bool, bool]:
    tree, adj = gt.tree, gt.graph.adj
    tleaves = tree.leaves
    nbr = {i: next(iter_bits(tree.adj[i])) for i in tleaves}
    obs_a = all(adj[gt.symbol(nbr[i], i)] == 1 << gt.symbol(i, nbr[i]) for i in tleaves)
    obs_b = all(
        adj[gt.symbol(i, nbr[i])] >> gt.symbol(j, nbr[j]) & 1 for i, j in combinations(tleaves, 2)
    )
    return obs_a, obs_b


def gt_report(tree: Tree) -> GTReport:
    gt = generic_graph(tree)
    g = gt.graph
    n = tree.n
    checks: dict[str, bool] = {}

    omega = clique_number(g)
    t_leaves = len(tree.leaves)
    g_leaves = len(leaves(g))
    checks["clique_equals_leaves"] = omega == t_leaves == g_leaves
    diam = diameter(g)
    connected = is_connected(g)
    checks["connected"] = connected
    if n >= 3:
        checks["diameter_three"] = diam == 3

    ess = is_ess_graph(g)
    checks["ess"] = ess is not None

    indep = independence_complex(g)
    assignments = [out_tree_assignment(gt, v) for v in range(n)]
    checks["facets_are_out_trees"] = set(indep.facets) == {a.vertices for a in assignments}
    checks["pure_dimension"] = (
        len(indep.facets) == n and indep.is_pure and indep.dim == n - 2
    )

    masks = [a.vertices for a in assignments]
    dist = [bfs_distances(tree, v) for v in range(n)]
    checks["facet_distance_is_tree_distance"] = all(
        popcount(masks[u] & ~masks[v]) == dist[u][v] for u in range(n) for v in range(n)
    )

    strong = None
    if checks["facets_are_out_trees"]:
        pos = {f: k for k, f in enumerate(indep.facets)}
        strong = FacetOrder(indep, tuple(pos[masks[v]] for v in connected_order(tree)))
        ok = bool(verify_strong_order(indep, strong))
        if ok:
            strong = FacetOrder(indep, strong.order, "strong")
        checks["connected_order_is_strong"] = ok
        checks["bi_strongly_shellable"] = ok and ess is not None
        checks["codim_one_graph_is_tree"] = tree_code(codim_one_graph(indep)) == tree_code(tree)
    else:
        checks["connected_order_is_strong"] = False
        checks["bi_strongly_shellable"] = False
        checks["codim_one_graph_is_tree"] = False

    obs_a, obs_b = _observations(gt)
    checks["leaf_observation"] = obs_a
    checks["leaf_pair_observation"] = obs_b
    checks["four_edge_property"] = _four_edge_property(g)

    return GTReport(
        tree=tree,
        generic=gt,
        clique_number=omega,
        tree_leaves=t_leaves,
        graph_leaves=g_leaves,
        diameter=diam,
        connected=connected,
        ess_order=ess,
        independence=indep,
        assignments=assignments,
        strong_order=strong,
        checks=checks,
    )


__all__ = [
    "GTReport",
    "GenericGraph",
    "GenericMatrix",
    "OrientationAssignment",
    "connected_order",
    "generic_graph",
    "generic_matrix",
    "gt_report",
    "out_tree_assignment",
    "path_ends",
    "prufer_trees",
    "tree_centres",
    "tree_code",
]
