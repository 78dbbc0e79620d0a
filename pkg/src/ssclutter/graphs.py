"""Graph chordality and edgewise strong shellability (ESS).

A graph is ESS exactly when its complement is chordal. The constructive
direction is :func:`peo_to_strong_shelling`: given a perfect elimination
ordering v_1, ..., v_n of the complement, the inductive construction places
the edges of the graph on {v_1, ..., v_{n-1}} first and then the edges
{v_i, v_n} with i increasing. Unrolling the recursion, edges are sorted by
the position of their later endpoint, then of their earlier endpoint.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .complexes import expand
from .core import (
    Graph,
    Labeling,
    SimplicialComplex,
    TheoremViolation,
    ValidationError,
    compress,
    iter_bits,
    popcount,
)
from .shelling import FacetOrder, OrderCheck, verify_strong_order


@dataclass(frozen=True)
class PEO:
    """Perfect elimination ordering: later neighbours of each vertex form a clique."""

    graph: Graph
    order: tuple[int, ...]

    def labels(self) -> list[str]:
        return [self.graph.universe.labels[v] for v in self.order]


def complement_graph(g: Graph) -> Graph:
    n = g.n
    edges = [
        (1 << a) | (1 << b)
        for a in range(n)
        for b in range(a + 1, n)
        if not g.adj[a] >> b & 1
    ]
    return Graph.from_masks(g.universe, edges)


def edge_complex(g: Graph) -> SimplicialComplex:
    """The one-dimensional complex whose facets are the edges (void if edgeless)."""
    return SimplicialComplex(g.universe, g.edges)


def induced_subgraph(g: Graph, w: int) -> Graph:
    edges = [compress(e, w) for e in g.edges if e & ~w == 0]
    return Graph.from_masks(g.universe.restrict(w), edges)


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search; returns the reverse of the visit order."""
    n = g.n
    weight = [0] * n
    numbered = 0
    visit = []
    for _ in range(n):
        best = -1
        for v in range(n):
            if not numbered >> v & 1 and (best < 0 or weight[v] > weight[best]):
                best = v
        visit.append(best)
        numbered |= 1 << best
        for u in iter_bits(g.adj[best] & ~numbered):
            weight[u] += 1
    return visit[::-1]


def peo_violation(g: Graph, order: Sequence[int]) -> tuple[int, int, int] | None:
    """First (v, a, b) with a, b later neighbours of v that are not adjacent."""
    later = g.universe.full
    for v in order:
        later &= ~(1 << v)
        nbrs = g.adj[v] & later
        for a in iter_bits(nbrs):
            missing = nbrs & ~g.adj[a] & ~(1 << a)
            if missing:
                return v, a, next(iter_bits(missing))
    return None


def is_peo(g: Graph, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(g.n)):
        raise ValidationError("order is not a permutation of the vertices")
    return peo_violation(g, order) is None


def find_peo(g: Graph) -> PEO | None:
    order = mcs_order(g)
    if peo_violation(g, order) is None:
        return PEO(g, tuple(order))
    return None


def is_chordal(g: Graph) -> bool:
    return find_peo(g) is not None


def _shortest_path(g: Graph, a: int, b: int, allowed: int) -> list[int] | None:
    parent = {a: -1}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            path = [b]
            while parent[path[-1]] != -1:
                path.append(parent[path[-1]])
            return path[::-1]
        for u in iter_bits(g.adj[v] & allowed):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    return None


def _normalize_cycle(cycle: list[int]) -> list[int]:
    i = cycle.index(min(cycle))
    cyc = cycle[i:] + cycle[:i]
    if cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return cyc


def chordless_cycle(g: Graph) -> list[int] | None:
    """A chordless cycle of length at least 4, or None when ``g`` is chordal.

    The MCS failure (v with non-adjacent later neighbours a, b) is tried
    first; a shortest a-b path avoiding the rest of N[v] closes the cycle.
    """
    order = mcs_order(g)
    hit = peo_violation(g, order)
    if hit is None:
        return None
    triples = [hit]
    for v in range(g.n):
        nb = list(iter_bits(g.adj[v]))
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                if not g.adj[a] >> b & 1:
                    triples.append((v, a, b))
    for v, a, b in triples:
        blocked = (g.adj[v] | (1 << v)) & ~((1 << a) | (1 << b))
        path = _shortest_path(g, a, b, g.universe.full & ~blocked)
        if path is not None:
            return _normalize_cycle([v] + path)
    raise TheoremViolation("MCS order failed but no chordless cycle exists")


def verify_graph_order(g: Graph, order: FacetOrder | Sequence[int]) -> OrderCheck:
    """Strong shelling check for an edge order using only disjoint pairs.

    Two disjoint edges need an earlier edge meeting both of them.
    """
    idx = order.order if isinstance(order, FacetOrder) else tuple(order)
    seq = [g.edges[i] for i in idx]
    for j, ej in enumerate(seq):
        for i in range(j):
            ei = seq[i]
            if ei & ej:
                continue
            if not any(ek & ei and ek & ej for ek in seq[:j]):
                return OrderCheck(False, (ei, ej))
    return OrderCheck(True)


def peo_to_strong_shelling(g: Graph, peo: PEO | Sequence[int] | None = None) -> FacetOrder | None:
    """Strong shelling order of the edges built from a PEO of the complement.

    ``peo`` may supply the complement's elimination order (vertex indices);
    by default one is found by maximum cardinality search.
    """
    comp = complement_graph(g)
    if peo is None:
        peo = find_peo(comp)
        if peo is None:
            return None
    elif not isinstance(peo, PEO):
        if not is_peo(comp, peo):
            raise ValidationError("supplied order is not a PEO of the complement")
        peo = PEO(comp, tuple(peo))
    pos = {v: p for p, v in enumerate(peo.order)}

    def key(i: int) -> tuple[int, int]:
        a, b = sorted((pos[v] for v in iter_bits(g.edges[i])))
        return (b, a)

    order = FacetOrder(edge_complex(g), tuple(sorted(range(len(g.edges)), key=key)), "strong")
    check = verify_strong_order(order.complex, order)
    if not check:
        raise TheoremViolation(
            f"order from complement PEO {peo.labels()} fails at {check.violation}"
        )
    return order


def is_ess_graph(g: Graph) -> FacetOrder | None:
    """Strong shelling order of the edge set via the complement's PEO, else None."""
    order = peo_to_strong_shelling(g)
    if order is not None and not verify_graph_order(g, order):
        raise TheoremViolation("certificate passes the full check but not the pairwise one")
    return order


@dataclass(frozen=True)
class QuotientMap:
    """Surjective vertex map from ``source`` onto the labels ``target``."""

    source: Graph
    mapping: Mapping[str, str]
    target: Labeling

    def __post_init__(self) -> None:
        missing = [lab for lab in self.source.universe.labels if lab not in self.mapping]
        if missing:
            raise ValidationError(f"quotient map undefined on {missing[0]!r}")
        image = {self.mapping[lab] for lab in self.source.universe.labels}
        for lab in image:
            self.target.position(lab)
        if len(image) != len(self.target):
            unhit = [lab for lab in self.target.labels if lab not in image][0]
            raise ValidationError(f"quotient map is not surjective: {unhit!r} has no preimage")

    @classmethod
    def of(cls, source: Graph, mapping: Mapping[object, object]) -> "QuotientMap":
        m = {str(k): str(v) for k, v in mapping.items()}
        for lab in source.universe.labels:
            m.setdefault(lab, lab)
        target: list[str] = []
        for lab in source.universe.labels:
            if m[lab] not in target:
                target.append(m[lab])
        return cls(source, m, Labeling(tuple(target)))

    def image(self, v: int) -> int:
        return self.target.index[self.mapping[self.source.universe.labels[v]]]

    def fiber(self, label: str) -> int:
        return sum(1 << v for v in range(self.source.n) if self.mapping[self.source.universe.labels[v]] == label)

    def is_proper(self) -> bool:
        """Every fiber is an independent set of the source."""
        g = self.source
        for e in g.edges:
            a, b = iter_bits(e)
            if self.image(a) == self.image(b):
                return False
        return True


def quotient_graph(g: Graph, f: QuotientMap | Mapping[object, object]) -> Graph:
    if not isinstance(f, QuotientMap):
        f = QuotientMap.of(g, f)
    if f.source != g:
        raise ValidationError("quotient map belongs to a different graph")
    edges = set()
    for e in g.edges:
        a, b = (f.image(v) for v in iter_bits(e))
        if a != b:
            edges.add((1 << a) | (1 << b))
    return Graph.from_masks(f.target, edges)


def blow_up(g: Graph, v: int | str, m: int) -> Graph:
    """Replace ``v`` by independent clones v_1, ..., v_m with v's neighbourhood."""
    if m < 1:
        raise ValidationError("blow-up multiplicity must be at least 1")
    v = v if isinstance(v, int) else g.universe.position(v)
    if g.n - 1 + m > 64:
        raise ValidationError("blow-up exceeds the 64-vertex universe")
    base = g.universe.labels[v]
    clones = [f"{base}_{i}" for i in range(1, m + 1)]
    for c in clones:
        if c in g.universe.index:
            raise ValidationError(f"clone label {c!r} already in use")
    labels = list(g.universe.labels[:v]) + clones + list(g.universe.labels[v + 1:])
    universe = Labeling(tuple(labels))

    def new_index(u: int) -> int:
        return u if u < v else u + m - 1

    edges = []
    for e in g.edges:
        if e >> v & 1:
            (u,) = iter_bits(e & ~(1 << v))
            for c in range(m):
                edges.append((1 << (v + c)) | (1 << new_index(u)))
        else:
            a, b = iter_bits(e)
            edges.append((1 << new_index(a)) | (1 << new_index(b)))
    return Graph.from_masks(universe, edges)


def graph_expansion(g: Graph, s: Sequence[int]) -> Graph:
    """The (s_1, ..., s_n)-expansion of a graph, fibers joined into cliques.

    Built as the complement of the facet graph of the expanded complement
    complex, which is exactly the expansion.
    """
    expanded = expand(edge_complex(complement_graph(g)), s)
    return complement_graph(Graph.from_masks(expanded.universe, expanded.facets))


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; -1 marks unreachable vertices."""
    dist = [-1] * g.n
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
        for v in iter_bits(frontier):
            dist[v] = d
    return dist


def distance(g: Graph, a: int | str, b: int | str) -> int | None:
    """Hops between two vertices, or None when unreachable."""
    a = a if isinstance(a, int) else g.universe.position(a)
    b = b if isinstance(b, int) else g.universe.position(b)
    d = bfs_distances(g, a)[b]
    return None if d < 0 else d


def eccentricity(g: Graph, v: int) -> int | None:
    dist = bfs_distances(g, v)
    return None if min(dist) < 0 else max(dist)


def diameter(g: Graph) -> int | None:
    """Largest distance over all pairs; None if disconnected or empty."""
    if g.n == 0:
        return None
    best = 0
    for v in range(g.n):
        e = eccentricity(g, v)
        if e is None:
            return None
        best = max(best, e)
    return best


def is_connected(g: Graph) -> bool:
    return g.n == 0 or min(bfs_distances(g, 0)) >= 0


def line_graph(g: Graph) -> Graph:
    labels = Labeling(tuple(g.universe.render(e) for e in g.edges))
    edges = [
        (1 << i) | (1 << j)
        for i in range(len(g.edges))
        for j in range(i + 1, len(g.edges))
        if g.edges[i] & g.edges[j]
    ]
    return Graph.from_masks(labels, edges)


def edge_distance(g: Graph, e1: int | Iterable[str], e2: int | Iterable[str]) -> int | None:
    """Distance between two edges measured in the line graph."""
    e1 = e1 if isinstance(e1, int) else g.universe.mask(e1)
    e2 = e2 if isinstance(e2, int) else g.universe.mask(e2)
    idx = {e: i for i, e in enumerate(g.edges)}
    if e1 not in idx or e2 not in idx:
        raise ValidationError("both arguments must be edges of the graph")
    return distance(line_graph(g), idx[e1], idx[e2])


def clique_number(g: Graph) -> int:
    """Size of a largest clique (Bron-Kerbosch with pivoting on bitmasks)."""
    best = 0

    def expand_clique(size: int, cand: int, excl: int) -> None:
        nonlocal best
        if not cand and not excl:
            best = max(best, size)
            return
        if size + popcount(cand) <= best:
            return
        pivot = next(iter_bits(cand | excl))
        for v in iter_bits(cand & ~g.adj[pivot]):
            expand_clique(size + 1, cand & g.adj[v], excl & g.adj[v])
            cand &= ~(1 << v)
            excl |= 1 << v

    expand_clique(0, g.universe.full, 0)
    return best


def leaves(g: Graph) -> list[int]:
    return [v for v in range(g.n) if popcount(g.adj[v]) == 1]


__all__ = [
    "PEO",
    "QuotientMap",
    "blow_up",
    "bfs_distances",
    "chordless_cycle",
    "clique_number",
    "complement_graph",
    "diameter",
    "distance",
    "eccentricity",
    "edge_complex",
    "edge_distance",
    "find_peo",
    "graph_expansion",
    "induced_subgraph",
    "is_chordal",
    "is_connected",
    "is_ess_graph",
    "is_peo",
    "leaves",
    "line_graph",
    "mcs_order",
    "peo_to_strong_shelling",
    "quotient_graph",
    "verify_graph_order",
]
