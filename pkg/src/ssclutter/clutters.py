"""Clutter operations and the two clutter chordality notions.

Woodroofe chordality (W-chordal) asks that every minor have a simplicial
vertex; Emtander chordality (E-chordal) asks for a perfect elimination
order. Both are decided here by exhaustive search, which is fine at the
desk scale this package targets (eight or so vertices).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .core import (
    Clutter,
    Labeling,
    SimplicialComplex,
    ValidationError,
    build_clutter,
    canonical_key,
    clutter_from_minimal,
    compress,
    iter_bits,
    minimal_transversals,
    popcount,
)

W_CHORDAL_MAX_VERTICES = 10


def _index(c: Clutter, v: int | str) -> int:
    return v if isinstance(v, int) else c.universe.position(v)


def delete_vertex(c: Clutter, v: int | str) -> Clutter:
    v = _index(c, v)
    keep = c.universe.full & ~(1 << v)
    edges = [compress(e, keep) for e in c.edges if not e >> v & 1]
    return Clutter(c.universe.restrict(keep), tuple(sorted(edges, key=canonical_key)))


def contract_vertex(c: Clutter, v: int | str) -> Clutter:
    """Strip ``v`` from every edge and keep the minimal results.

    Contracting the only vertex of an edge ``{v}`` yields the clutter whose
    single edge is empty.
    """
    v = _index(c, v)
    keep = c.universe.full & ~(1 << v)
    return clutter_from_minimal(c.universe.restrict(keep), (compress(e, keep) for e in c.edges))


def remove_vertex(c: Clutter, v: int | str, mode: str = "delete") -> Clutter:
    if mode == "delete":
        return delete_vertex(c, v)
    if mode == "contract":
        return contract_vertex(c, v)
    raise ValueError(f"mode must be 'delete' or 'contract', not {mode!r}")


def induced_subclutter(c: Clutter, u: int | Iterable[str]) -> Clutter:
    """Edges lying inside ``u``, on the universe ``u``."""
    if not isinstance(u, int):
        u = c.universe.mask(u)
    edges = [compress(e, u) for e in c.edges if e & ~u == 0]
    return Clutter(c.universe.restrict(u), tuple(sorted(edges, key=canonical_key)))


def vertex_complement(c: Clutter) -> Clutter:
    if not c.is_uniform:
        raise ValidationError("vertex complement needs a uniform clutter")
    full = c.universe.full
    return Clutter(c.universe, tuple(sorted((full & ~e for e in c.edges), key=canonical_key)))


def d_nonedges(c: Clutter, d: int) -> Clutter:
    """All d-subsets of the vertex set that are not edges."""
    if d < 1:
        raise ValidationError("d must be at least 1")
    edges = c._edge_set
    out = [
        m
        for m in (sum(1 << b for b in combo) for combo in combinations(range(c.n), d))
        if m not in edges
    ]
    return Clutter(c.universe, tuple(sorted(out, key=canonical_key)))


def independence_complex(c: Clutter) -> SimplicialComplex:
    """Complex of vertex sets containing no edge.

    Maximal independent sets are the complements of minimal transversals.
    """
    full = c.universe.full
    facets = sorted((full & ~t for t in minimal_transversals(c.edges)), key=canonical_key)
    return SimplicialComplex(c.universe, tuple(facets))


def is_simplicial_vertex(c: Clutter, v: int | str) -> bool:
    """Every two edges through ``v`` contain a third edge in their union minus ``v``."""
    v = _index(c, v)
    bit = 1 << v
    through = [e for e in c.edges if e & bit]
    for e1, e2 in combinations(through, 2):
        room = (e1 | e2) & ~bit
        if not any(e & ~room == 0 for e in c.edges):
            return False
    return True


def simplicial_vertices(c: Clutter) -> list[int]:
    return [v for v in range(c.n) if is_simplicial_vertex(c, v)]


@dataclass(frozen=True)
class MinorSpec:
    """A replayable sequence of deletions and contractions (by label)."""

    steps: tuple[tuple[str, str], ...] = ()

    @property
    def deleted(self) -> frozenset[str]:
        return frozenset(lab for op, lab in self.steps if op == "delete")

    @property
    def contracted(self) -> frozenset[str]:
        return frozenset(lab for op, lab in self.steps if op == "contract")

    def then(self, op: str, label: str) -> "MinorSpec":
        return MinorSpec(self.steps + ((op, label),))

    def apply(self, c: Clutter) -> Clutter:
        for op, label in self.steps:
            c = remove_vertex(c, label, op)
        return c


def _minor_key(c: Clutter) -> tuple[int, tuple[int, ...]]:
    return (c.n, c.edges)


def w_chordal_witness(c: Clutter) -> tuple[Clutter, MinorSpec] | None:
    """A minor (with at least one vertex) lacking a simplicial vertex, or None.

    Minors are explored breadth first, fewest operations first, and
    memoized on their edge structure.
    """
    if c.n > W_CHORDAL_MAX_VERTICES:
        raise ValidationError(
            f"W-chordality search limited to {W_CHORDAL_MAX_VERTICES} vertices, got {c.n}"
        )
    seen = {_minor_key(c)}
    queue = deque([(c, MinorSpec())])
    while queue:
        minor, spec = queue.popleft()
        if minor.n == 0:
            continue
        if not any(is_simplicial_vertex(minor, v) for v in range(minor.n)):
            return minor, spec
        for v, label in enumerate(minor.universe.labels):
            for op in ("delete", "contract"):
                child = remove_vertex(minor, v, op)
                key = _minor_key(child)
                if key not in seen:
                    seen.add(key)
                    queue.append((child, spec.then(op, label)))
    return None


def is_w_chordal(c: Clutter) -> bool:
    return w_chordal_witness(c) is None


def complete_clutter(n: int, d: int, universe: Labeling | None = None) -> Clutter:
    """K_n^d: all d-subsets of n vertices; n isolated points when n < d."""
    if n < 0 or d < 0:
        raise ValidationError("n and d must be non-negative")
    universe = universe or Labeling.range(n)
    if len(universe) != n:
        raise ValidationError("universe size must equal n")
    if n < d:
        return Clutter(universe, ())
    edges = (sum(1 << b for b in combo) for combo in combinations(range(n), d))
    return Clutter(universe, tuple(sorted(edges, key=canonical_key)))


def _elimination_ok(c: Clutter, x: int, tail: int, d: int) -> bool:
    """Whether ``x`` may be eliminated first from the vertex set ``tail``.

    Neighbourhoods are taken inside the subclutter induced on ``tail``.
    """
    bit = 1 << x
    inside = [e for e in c.edges if e & ~tail == 0]
    closed = 0
    for e in inside:
        if e & bit:
            closed |= e
    if not closed & ~bit:
        return True
    m = popcount(closed)
    if m < d:
        return False
    return sum(1 for e in inside if e & ~closed == 0) == comb(m, d)


def _uniform_d(c: Clutter) -> int:
    sizes = {popcount(e) for e in c.edges}
    if len(sizes) > 1:
        raise ValidationError("perfect elimination orders need a uniform clutter")
    return sizes.pop() if sizes else 0


def is_perfect_elimination_order(c: Clutter, order: Sequence[int]) -> bool:
    d = _uniform_d(c)
    if sorted(order) != list(range(c.n)):
        raise ValidationError("order is not a permutation of the vertices")
    tail = c.universe.full
    for x in order:
        if not _elimination_ok(c, x, tail, d):
            return False
        tail &= ~(1 << x)
    return True


def e_chordal_peo(c: Clutter) -> tuple[int, ...] | None:
    """A perfect elimination order (vertex indices) or None if none exists.

    Backtracks over eligible vertices with a table of dead vertex sets. When
    the clutter has edges, orders starting at a non-isolated vertex are
    tried first.
    """
    d = _uniform_d(c)
    full = c.universe.full
    dead: set[int] = set()
    order: list[int] = []

    def isolated(x: int) -> bool:
        return not any(e >> x & 1 and e != 1 << x for e in c.edges)

    def extend(tail: int) -> bool:
        if not tail:
            return True
        if tail in dead:
            return False
        cands = list(iter_bits(tail))
        if tail == full and c.edges:
            cands.sort(key=isolated)
        for x in cands:
            if _elimination_ok(c, x, tail, d):
                order.append(x)
                if extend(tail & ~(1 << x)):
                    return True
                order.pop()
        dead.add(tail)
        return False

    return tuple(order) if extend(full) else None


def is_e_chordal(c: Clutter) -> bool:
    return e_chordal_peo(c) is not None


def layered_matroid(
    x_labels: Sequence[object], y_labels: Sequence[object], lam: int, i: int, j: int
) -> SimplicialComplex:
    """Complex whose facets are the (λ)-sets taking k points of X and λ-k of Y, i ≤ k ≤ j.

    The universe lists X's labels first, then Y's.
    """
    nx, ny = len(x_labels), len(y_labels)
    if lam < 1:
        raise ValidationError("lambda must be positive")
    if not max(0, lam - ny) <= i <= j <= min(lam, nx):
        raise ValidationError(
            f"need max(0, {lam}-{ny}) <= i <= j <= min({lam}, {nx}); got i={i}, j={j}"
        )
    universe = Labeling.of(list(x_labels) + list(y_labels))
    facets = []
    for k in range(i, j + 1):
        for xs in combinations(range(nx), k):
            xm = sum(1 << b for b in xs)
            for ys in combinations(range(nx, nx + ny), lam - k):
                facets.append(xm | sum(1 << b for b in ys))
    return SimplicialComplex(universe, tuple(sorted(facets, key=canonical_key)))


__all__ = [
    "MinorSpec",
    "build_clutter",
    "complete_clutter",
    "contract_vertex",
    "d_nonedges",
    "delete_vertex",
    "e_chordal_peo",
    "independence_complex",
    "induced_subclutter",
    "is_e_chordal",
    "is_perfect_elimination_order",
    "is_simplicial_vertex",
    "is_w_chordal",
    "layered_matroid",
    "remove_vertex",
    "simplicial_vertices",
    "vertex_complement",
    "w_chordal_witness",
]
