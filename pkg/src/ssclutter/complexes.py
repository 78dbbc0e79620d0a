"""Structural operations on simplicial complexes."""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .core import (
    Clutter,
    Labeling,
    SimplicialComplex,
    ValidationError,
    compress,
    iter_bits,
    maximal_sets,
    popcount,
)

MATROID_EXHAUSTION_LIMIT = 20


def _normalized(universe: Labeling, sets) -> SimplicialComplex:
    return SimplicialComplex(universe, tuple(maximal_sets(sets)))


def induced_subcomplex(cx: SimplicialComplex, w: int) -> SimplicialComplex:
    """All faces of ``cx`` inside ``w``; same universe."""
    if cx.is_void:
        return cx
    return _normalized(cx.universe, (f & w for f in cx.facets))


def _drop_vertex(cx: SimplicialComplex, v: int, sets) -> SimplicialComplex:
    keep = cx.universe.full & ~(1 << v)
    universe = cx.universe.restrict(keep)
    return _normalized(universe, (compress(s, keep) for s in sets))


def _vertex_index(cx_universe: Labeling, v: int | str) -> int:
    return v if isinstance(v, int) else cx_universe.position(v)


def link(cx: SimplicialComplex, v: int | str) -> SimplicialComplex:
    """Link of ``v``, on the universe with ``v`` removed (void if ``v`` is in no face)."""
    v = _vertex_index(cx.universe, v)
    bit = 1 << v
    return _drop_vertex(cx, v, (f & ~bit for f in cx.facets if f & bit))


def deletion(cx: SimplicialComplex, v: int | str) -> SimplicialComplex:
    """Faces avoiding ``v``, on the universe with ``v`` removed."""
    v = _vertex_index(cx.universe, v)
    bit = 1 << v
    return _drop_vertex(cx, v, (f & ~bit for f in cx.facets))


def is_shedding_vertex(cx: SimplicialComplex, v: int | str) -> bool:
    """No facet of the link of ``v`` is a facet of the deletion of ``v``."""
    lk = set(link(cx, v).facets)
    return not lk.intersection(deletion(cx, v).facets)


def complement_complex(cx: SimplicialComplex) -> SimplicialComplex:
    """Facets replaced by their complements in the universe (pure input only)."""
    if not cx.is_pure:
        raise ValidationError("complement complex is only defined for pure complexes")
    full = cx.universe.full
    return _normalized(cx.universe, (full & ~f for f in cx.facets))


def expand(cx: SimplicialComplex, s: Sequence[int]) -> SimplicialComplex:
    """The (s_1, ..., s_n)-expansion; vertex i becomes x_{i,1}, ..., x_{i,s_i}."""
    u = cx.universe
    if len(s) != len(u):
        raise ValidationError(f"expected {len(u)} multiplicities, got {len(s)}")
    if any(k < 1 for k in s):
        raise ValidationError("multiplicities must be positive")
    if sum(s) > 64:
        raise ValidationError(f"expanded universe has {sum(s)} vertices; at most 64 supported")
    labels = []
    first = []
    for i, lab in enumerate(u.labels):
        first.append(len(labels))
        labels.extend(f"x_{{{lab},{j}}}" for j in range(1, s[i] + 1))
    universe = Labeling(tuple(labels))
    facets = []
    for f in cx.facets:
        verts = list(iter_bits(f))
        for choice in product(*(range(s[i]) for i in verts)):
            m = 0
            for i, r in zip(verts, choice):
                m |= 1 << (first[i] + r)
            facets.append(m)
    return _normalized(universe, facets)


def is_matroid_complex(cx: SimplicialComplex) -> bool:
    """Every induced subcomplex is pure (checked over all vertex subsets)."""
    if cx.is_void:
        return True
    support = cx.vertex_support
    verts = list(iter_bits(support))
    if len(verts) > MATROID_EXHAUSTION_LIMIT:
        raise ValidationError(
            f"{len(verts)} vertices is too many to exhaust all subsets; sample subsets instead"
        )
    facets = cx.facets
    for code in range(1 << len(verts)):
        w = 0
        for pos, b in enumerate(verts):
            if code >> pos & 1:
                w |= 1 << b
        restricted = maximal_sets(f & w for f in facets)
        if len({popcount(r) for r in restricted}) > 1:
            return False
    return True


def dual_of_independence(c: Clutter, d: int) -> SimplicialComplex:
    """Alexander dual of the independence complex of the d-non-edges of ``c``.

    Its facets are the complements of the d-non-edges; void when there are none.
    """
    from .clutters import d_nonedges

    full = c.universe.full
    return _normalized(c.universe, (full & ~e for e in d_nonedges(c, d).edges))


__all__ = [
    "complement_complex",
    "deletion",
    "dual_of_independence",
    "expand",
    "induced_subcomplex",
    "is_matroid_complex",
    "is_shedding_vertex",
    "link",
]
