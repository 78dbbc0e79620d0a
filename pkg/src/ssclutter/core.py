"""Label universes, bitmask faces and validated constructors.

A face (or edge, or squarefree monomial support) is a plain ``int`` whose
set bits index into a :class:`Labeling`. Everything built here is
immutable and canonically ordered, so equal inputs give equal values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

MAX_VERTICES = 64

# A VertexSet is an int bitmask over a Labeling.
VertexSet = int


class ValidationError(ValueError):
    """Raised when input data violates a structural invariant."""


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(mask: int) -> list[int]:
    return list(iter_bits(mask))


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def canonical_key(mask: int) -> tuple[int, int]:
    """Global tie-breaker: larger sets first, then smaller bit patterns."""
    return (-popcount(mask), mask)


def maximal_sets(sets: Iterable[int]) -> list[int]:
    """Drop duplicates and every set strictly contained in another."""
    ordered = sorted(set(sets), key=canonical_key)
    kept: list[int] = []
    for s in ordered:
        if not any(s & k == s for k in kept):
            kept.append(s)
    return kept


def minimal_sets(sets: Iterable[int]) -> list[int]:
    """Drop duplicates and every set strictly containing another."""
    ordered = sorted(set(sets), key=lambda m: (popcount(m), m))
    kept: list[int] = []
    for s in ordered:
        if not any(k & s == k for k in kept):
            kept.append(s)
    return sorted(kept, key=canonical_key)


def compress(mask: int, support: int) -> int:
    """Re-index ``mask`` onto the bits of ``support`` packed from 0."""
    out = 0
    pos = 0
    for b in iter_bits(support):
        if mask >> b & 1:
            out |= 1 << pos
        pos += 1
    return out


@dataclass(frozen=True)
class Labeling:
    """Ordered universe of distinct string labels (at most 64)."""

    labels: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) > MAX_VERTICES:
            raise ValidationError(
                f"universe has {len(labels)} labels; at most {MAX_VERTICES} supported"
            )
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            seen = set()
            dup = next(lab for lab in labels if lab in seen or seen.add(lab))
            raise ValidationError(f"duplicate label {dup!r}")
        object.__setattr__(self, "index", index)

    @classmethod
    def of(cls, labels: Iterable[object]) -> "Labeling":
        return cls(tuple(str(x) for x in labels))

    @classmethod
    def range(cls, n: int, start: int = 1) -> "Labeling":
        return cls(tuple(str(i) for i in range(start, start + n)))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return str(label) in self.index

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def position(self, label: object) -> int:
        try:
            return self.index[str(label)]
        except KeyError:
            raise ValidationError(f"label {label!r} is not in the universe") from None

    def mask(self, labels: Iterable[object]) -> int:
        """Bitmask of a collection of labels.

        A plain string is treated as a single label only when it is one;
        otherwise each character is a label, so ``mask("12")`` is {1, 2}.
        """
        if isinstance(labels, str):
            labels = [labels] if labels in self.index else list(labels)
        m = 0
        for lab in labels:
            m |= 1 << self.position(lab)
        return m

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in iter_bits(mask))

    def render(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"

    def restrict(self, support: int) -> "Labeling":
        """Sub-universe on the labels in ``support``, order preserved."""
        return Labeling(tuple(self.labels[i] for i in iter_bits(support)))

    def without(self, label: object) -> "Labeling":
        return self.restrict(self.full & ~(1 << self.position(label)))


def _check_within(sets: Iterable[int], universe: Labeling) -> None:
    full = universe.full
    for s in sets:
        if s & ~full:
            bad = next(iter_bits(s & ~full))
            raise ValidationError(f"vertex index {bad} lies outside a universe of size {len(universe)}")


def _coerce_sets(sets: Iterable[object], universe: Labeling) -> list[int]:
    out = []
    for s in sets:
        if isinstance(s, int):
            out.append(s)
        else:
            out.append(universe.mask(s))
    _check_within(out, universe)
    return out


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facets.

    ``facets == ()`` is the void complex (no faces at all) and
    ``facets == (0,)`` is the empty complex ``{∅}``; they are different.
    """

    universe: Labeling
    facets: tuple[int, ...]

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int | None:
        if not self.facets:
            return None
        return popcount(self.facets[0]) - 1

    @property
    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) <= 1

    @property
    def vertex_support(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    def contains_face(self, face: int) -> bool:
        return any(face & f == face for f in self.facets)

    def named_facets(self) -> list[tuple[str, ...]]:
        return [self.universe.names(f) for f in self.facets]

    def __str__(self) -> str:
        if self.is_void:
            return "void"
        return "<" + ", ".join(self.universe.render(f) for f in self.facets) + ">"


def build_complex(facet_sets: Iterable[object], universe: Labeling | Iterable[object]) -> SimplicialComplex:
    """Normalize any family of sets to the complex they generate."""
    if not isinstance(universe, Labeling):
        universe = Labeling.of(universe)
    masks = _coerce_sets(facet_sets, universe)
    return SimplicialComplex(universe, tuple(maximal_sets(masks)))


def void_complex(universe: Labeling) -> SimplicialComplex:
    return SimplicialComplex(universe, ())


def empty_complex(universe: Labeling) -> SimplicialComplex:
    return SimplicialComplex(universe, (0,))


@dataclass(frozen=True)
class Clutter:
    """An antichain of edges over a universe.

    The edge list ``(0,)`` (a single empty edge) is only produced by
    contraction; the public constructor rejects it.
    """

    universe: Labeling
    edges: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def uniformity(self) -> int | None:
        sizes = {popcount(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def is_uniform(self) -> bool:
        return len({popcount(e) for e in self.edges}) <= 1

    @property
    def min_edge_size(self) -> int | None:
        return min((popcount(e) for e in self.edges), default=None)

    def has_edge(self, e: int) -> bool:
        return e in self._edge_set

    @property
    def _edge_set(self) -> frozenset[int]:
        cached = self.__dict__.get("_es")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_es", cached)
        return cached

    def named_edges(self) -> list[tuple[str, ...]]:
        return [self.universe.names(e) for e in self.edges]

    def __str__(self) -> str:
        return "{" + ", ".join(self.universe.render(e) for e in self.edges) + "}"


def _canonical_edges(edges: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(edges), key=canonical_key))


def build_clutter(edge_sets: Iterable[object], universe: Labeling | Iterable[object]) -> Clutter:
    """Validated clutter; comparable or empty edges are rejected, not pruned."""
    if not isinstance(universe, Labeling):
        universe = Labeling.of(universe)
    masks = _coerce_sets(edge_sets, universe)
    for m in masks:
        if m == 0:
            raise ValidationError("empty edge")
    uniq = sorted(set(masks), key=canonical_key)
    for a, b in combinations(uniq, 2):
        if a & b == b:
            raise ValidationError(
                f"edge {universe.render(b)} is contained in edge {universe.render(a)}"
            )
        if a & b == a:
            raise ValidationError(
                f"edge {universe.render(a)} is contained in edge {universe.render(b)}"
            )
    return Clutter(universe, tuple(uniq))


def clutter_from_minimal(universe: Labeling, sets: Iterable[int]) -> Clutter:
    """Clutter of the inclusion-minimal members of ``sets`` (may be ``{∅}``)."""
    return Clutter(universe, tuple(minimal_sets(sets)))


@dataclass(frozen=True)
class Graph(Clutter):
    """Simple undirected graph: a clutter whose edges all have two vertices."""

    adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        adj = [0] * len(self.universe)
        for e in self.edges:
            if popcount(e) != 2:
                raise ValidationError(f"graph edge {self.universe.render(e)} does not have two vertices")
            a, b = iter_bits(e)
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_masks(cls, universe: Labeling, edges: Iterable[int]) -> "Graph":
        return cls(universe, _canonical_edges(edges))

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)


def build_graph(edge_sets: Iterable[object], universe: Labeling | Iterable[object]) -> Graph:
    if not isinstance(universe, Labeling):
        universe = Labeling.of(universe)
    masks = _coerce_sets(edge_sets, universe)
    for m in masks:
        if popcount(m) != 2:
            raise ValidationError(f"graph edge {universe.render(m)} does not have two vertices")
    return Graph.from_masks(universe, masks)


def graph_from_pairs(pairs: Iterable[Sequence[object]], labels: Iterable[object] | None = None) -> Graph:
    """Convenience: graph from label pairs, universe in first-appearance order."""
    pairs = [tuple(str(x) for x in p) for p in pairs]
    order: list[str] = [str(x) for x in labels] if labels is not None else []
    seen = set(order)
    for p in pairs:
        for x in p:
            if x not in seen:
                seen.add(x)
                order.append(x)
    return build_graph(pairs, Labeling(tuple(order)))


@dataclass(frozen=True)
class Tree(Graph):
    """Connected acyclic graph."""

    def __post_init__(self) -> None:
        super().__post_init__()
        n = len(self.universe)
        if n == 0:
            raise ValidationError("a tree needs at least one vertex")
        comp = connected_component(self.adj, 0)
        if comp != self.universe.full:
            missing = next(iter_bits(self.universe.full & ~comp))
            raise ValidationError(
                f"tree is disconnected: vertex {self.universe.labels[missing]} unreachable"
            )
        if len(self.edges) != n - 1:
            raise ValidationError(f"tree contains a cycle: {find_cycle(self)}")

    @property
    def leaves(self) -> list[int]:
        return [v for v in range(len(self.universe)) if self.degree(v) == 1]


def build_tree(edge_sets: Iterable[object], universe: Labeling | Iterable[object]) -> Tree:
    g = build_graph(edge_sets, universe)
    return Tree(g.universe, g.edges)


def connected_component(adj: Sequence[int], start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def find_cycle(g: Graph) -> str:
    """Render some cycle of ``g`` as a label path (used in error messages)."""
    n = len(g.universe)
    forest = [0] * n
    root = list(range(n))

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for e in g.edges:
        a, b = iter_bits(e)
        ra, rb = find(a), find(b)
        if ra == rb:
            path = _forest_path(forest, a, b)
            return "-".join(g.universe.labels[x] for x in path + [a])
        root[ra] = rb
        forest[a] |= 1 << b
        forest[b] |= 1 << a
    return "?"


def _forest_path(adj: Sequence[int], a: int, b: int) -> list[int]:
    parent = {a: -1}
    queue = [a]
    for v in queue:
        if v == b:
            break
        for u in iter_bits(adj[v]):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def minimal_transversals(edges: Iterable[int]) -> list[int]:
    """Inclusion-minimal sets meeting every edge (Berge's incremental method).

    No edges gives ``[0]``; an empty edge gives ``[]``.
    """
    trans = [0]
    for e in sorted(set(edges), key=lambda m: (popcount(m), m)):
        grown = set()
        for t in trans:
            if t & e:
                grown.add(t)
            else:
                for v in iter_bits(e):
                    grown.add(t | 1 << v)
        trans = minimal_sets(grown)
        if not trans:
            break
    return trans


class TheoremViolation(AssertionError):
    """A construction that is proven to work produced an invalid certificate."""
