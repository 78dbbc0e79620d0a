"""Shelling and strong shelling: verifiers, searches, and a brute-force oracle.

Both searches exploit one fact: whether a facet may be appended to a prefix
depends only on the *set* of facets already placed, never on their order.
The search is therefore a depth-first walk through subsets of facets with a
table of dead subsets, so each subset is expanded at most once. Candidates
are tried in canonical facet order, which makes the first order found the
lexicographically least valid one.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .core import Graph, Labeling, SimplicialComplex, ValidationError, popcount

ORACLE_MAX_FACETS = 8


@dataclass(frozen=True)
class FacetOrder:
    """A permutation of a complex's facets.

    ``order[p]`` is the index (into ``complex.facets``) of the facet placed at
    position ``p``. ``status`` records what the order has been verified as:
    ``"unverified"``, ``"shelling"`` or ``"strong"``.
    """

    complex: SimplicialComplex
    order: tuple[int, ...]
    status: str = "unverified"

    def __post_init__(self) -> None:
        if sorted(self.order) != list(range(len(self.complex.facets))):
            raise ValidationError("facet order is not a permutation of the facets")

    @property
    def facets(self) -> list[int]:
        return [self.complex.facets[i] for i in self.order]

    def named(self) -> list[tuple[str, ...]]:
        u = self.complex.universe
        return [u.names(f) for f in self.facets]

    def __len__(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class OrderCheck:
    """Outcome of verifying an order; falsy when a violation was found."""

    ok: bool
    violation: tuple[int, int] | None = None  # (earlier facet, later facet)

    def __bool__(self) -> bool:
        return self.ok


def facet_distance(f: int, g: int) -> int:
    """|F \\ G| for two facets of equal size."""
    if popcount(f) != popcount(g):
        raise ValidationError("facet distance needs facets of equal cardinality")
    return popcount(f & ~g)


def order_from_facets(cx: SimplicialComplex, facets: Iterable[object]) -> FacetOrder:
    """Build a FacetOrder from facet masks or label collections."""
    pos = {f: i for i, f in enumerate(cx.facets)}
    order = []
    for f in facets:
        m = f if isinstance(f, int) else cx.universe.mask(f)
        if m not in pos:
            raise ValidationError(f"{cx.universe.render(m)} is not a facet")
        order.append(pos[m])
    return FacetOrder(cx, tuple(order))


def _as_indices(cx: SimplicialComplex, order: FacetOrder | Sequence[int]) -> tuple[int, ...]:
    if isinstance(order, FacetOrder):
        return order.order
    order = tuple(order)
    if sorted(order) != list(range(len(cx.facets))):
        raise ValidationError("order is not a permutation of the facets")
    return order


def verify_strong_order(cx: SimplicialComplex, order: FacetOrder | Sequence[int]) -> OrderCheck:
    """Check the strong shelling condition for every pair i < j."""
    seq = [cx.facets[i] for i in _as_indices(cx, order)]
    for j in range(1, len(seq)):
        fj = seq[j]
        near = [fk for fk in seq[:j] if popcount(fj & ~fk) == 1]
        for i in range(j):
            fi = seq[i]
            if not any((fi & fj) & ~fk == 0 and fk & ~(fi | fj) == 0 for fk in near):
                return OrderCheck(False, (fi, fj))
    return OrderCheck(True)


def verify_shelling_order(cx: SimplicialComplex, order: FacetOrder | Sequence[int]) -> OrderCheck:
    """Check: for i < j some k < j has F_j \\ F_k = {v} with v outside F_i."""
    seq = [cx.facets[i] for i in _as_indices(cx, order)]
    for j in range(1, len(seq)):
        fj = seq[j]
        ridge_out = 0
        for fk in seq[:j]:
            d = fj & ~fk
            if popcount(d) == 1:
                ridge_out |= d
        for i in range(j):
            if not (fj & ~seq[i]) & ridge_out:
                return OrderCheck(False, (seq[i], fj))
    return OrderCheck(True)


def _strong_witnesses(facets: Sequence[int]) -> list[list[int]]:
    """table[j][i] = bitmask of facets k that resolve the pair (i, j)."""
    t = len(facets)
    table = [[0] * t for _ in range(t)]
    for j, fj in enumerate(facets):
        near = [k for k, fk in enumerate(facets) if k != j and popcount(fj & ~fk) == 1]
        row = table[j]
        for i, fi in enumerate(facets):
            if i == j:
                continue
            m = 0
            for k in near:
                fk = facets[k]
                if (fi & fj) & ~fk == 0 and fk & ~(fi | fj) == 0:
                    m |= 1 << k
            row[i] = m
    return table


def _shelling_witnesses(facets: Sequence[int]) -> list[list[int]]:
    t = len(facets)
    table = [[0] * t for _ in range(t)]
    for j, fj in enumerate(facets):
        near = [(k, fj & ~fk) for k, fk in enumerate(facets) if k != j and popcount(fj & ~fk) == 1]
        row = table[j]
        for i, fi in enumerate(facets):
            if i == j:
                continue
            m = 0
            for k, v in near:
                if not v & fi:
                    m |= 1 << k
            row[i] = m
    return table


def search_order(t: int, witness: Sequence[Sequence[int]]) -> list[int] | None:
    """Least permutation of range(t) in which every pair (i before j)
    has some k before j with bit k set in ``witness[j][i]``.

    Generic over the pair condition; shared by the shelling searches and the
    linear-quotient search.
    """
    if t == 0:
        return []
    full = (1 << t) - 1
    dead: set[int] = set()
    order: list[int] = []

    def appendable(j: int, placed: int) -> bool:
        row = witness[j]
        m = placed
        while m:
            low = m & -m
            if not row[low.bit_length() - 1] & placed:
                return False
            m ^= low
        return True

    def extend(placed: int) -> bool:
        if placed == full:
            return True
        if placed in dead:
            return False
        rest = full & ~placed
        while rest:
            low = rest & -rest
            rest ^= low
            j = low.bit_length() - 1
            if appendable(j, placed):
                order.append(j)
                if extend(placed | low):
                    return True
                order.pop()
        dead.add(placed)
        return False

    limit = sys.getrecursionlimit()
    if limit < t + 100:
        sys.setrecursionlimit(t + 100)
    return order if extend(0) else None


def is_geodesic(cx: SimplicialComplex) -> bool:
    """Whether codimension-one-graph distances equal facet distances (pure only).

    Every prefix of a strong shelling order of a pure complex has this
    property, the full facet set included, so failing it refutes strong
    shellability without any search.
    """
    facets = cx.facets
    t = len(facets)
    nbrs = [[k for k in range(t) if popcount(facets[j] & ~facets[k]) == 1] for j in range(t)]
    for s in range(t):
        dist = [-1] * t
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in nbrs[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        fs = facets[s]
        for k in range(t):
            if dist[k] != popcount(fs & ~facets[k]):
                return False
    return True


def find_shelling(cx: SimplicialComplex) -> FacetOrder | None:
    """A shelling order, or None once the whole search space is exhausted."""
    order = search_order(len(cx.facets), _shelling_witnesses(cx.facets))
    if order is None:
        return None
    return FacetOrder(cx, tuple(order), "shelling")


def find_strong_shelling(cx: SimplicialComplex) -> FacetOrder | None:
    """A strong shelling order, or None once the search space is exhausted.

    Non-pure complexes are searched with the raw pairwise condition. For
    pure complexes the geodesic test runs first and rejects early.
    """
    if cx.is_pure and len(cx.facets) > 2 and not is_geodesic(cx):
        return None
    order = search_order(len(cx.facets), _strong_witnesses(cx.facets))
    if order is None:
        return None
    return FacetOrder(cx, tuple(order), "strong")


def is_strongly_shellable(cx: SimplicialComplex) -> bool:
    return find_strong_shelling(cx) is not None


def oracle_strong_shellable(cx: SimplicialComplex, max_facets: int = ORACLE_MAX_FACETS) -> bool:
    """Ground truth by trying every permutation of the facets."""
    t = len(cx.facets)
    if t > max_facets:
        raise ValidationError(f"oracle refuses {t} facets (limit {max_facets})")
    return any(verify_strong_order(cx, p) for p in permutations(range(t)))


def codim_one_graph(cx: SimplicialComplex) -> Graph:
    """Facets as vertices, adjacent when they differ in exactly one vertex."""
    if not cx.is_pure:
        raise ValidationError("codimension one graph needs a pure complex")
    labels = Labeling(tuple(cx.universe.render(f) for f in cx.facets))
    facets = cx.facets
    edges = [
        (1 << a) | (1 << b)
        for a in range(len(facets))
        for b in range(a + 1, len(facets))
        if popcount(facets[a] & ~facets[b]) == 1
    ]
    return Graph.from_masks(labels, edges)


__all__ = [
    "FacetOrder",
    "OrderCheck",
    "codim_one_graph",
    "facet_distance",
    "find_shelling",
    "find_strong_shelling",
    "is_geodesic",
    "is_strongly_shellable",
    "oracle_strong_shellable",
    "order_from_facets",
    "search_order",
    "verify_shelling_order",
    "verify_strong_order",
]
