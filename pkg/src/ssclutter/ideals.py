"""Squarefree monomial ideals, stored as antichains of variable supports.

No coefficients are involved: for squarefree monomials the colon ideal
<f_1, ..., f_{i-1}> : f_i is generated by the monomials
supp(f_j) \\ supp(f_i), so linear quotients is a condition on supports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    Clutter,
    Labeling,
    SimplicialComplex,
    ValidationError,
    canonical_key,
    iter_bits,
    minimal_sets,
    minimal_transversals,
    popcount,
)
from .shelling import OrderCheck, search_order


def _monomial_key(m: int) -> tuple[int, tuple[int, ...]]:
    return (popcount(m), tuple(iter_bits(m)))


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generators as vertex-set masks over ``universe`` (the variables)."""

    universe: Labeling
    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        gens = self.generators
        if len(set(gens)) != len(gens):
            raise ValidationError("repeated generator")
        for g in gens:
            if g >> len(self.universe):
                raise ValidationError("generator uses a variable outside the universe")
        if minimal_sets(gens) != sorted(gens, key=canonical_key):
            raise ValidationError("generators are not minimal (one divides another)")

    @classmethod
    def of(cls, universe: Labeling, supports) -> "MonomialIdeal":
        return cls(universe, tuple(minimal_sets(supports)))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, m: int) -> bool:
        return any(g & ~m == 0 for g in self.generators)

    def monomial(self, m: int) -> str:
        if not m:
            return "1"
        return "*".join(f"x{self.universe.labels[v]}" for v in iter_bits(m))

    def sorted_generators(self) -> list[int]:
        return sorted(self.generators, key=_monomial_key)

    def __str__(self) -> str:
        return ", ".join(self.monomial(g) for g in self.sorted_generators())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.universe == other.universe and set(self.generators) == set(other.generators)

    def __hash__(self) -> int:
        return hash((self.universe, frozenset(self.generators)))


def to_ideal(obj: Clutter | SimplicialComplex) -> MonomialIdeal:
    """Edge ideal of a graph or clutter; facet ideal of a complex."""
    if isinstance(obj, SimplicialComplex):
        return MonomialIdeal.of(obj.universe, obj.facets)
    return MonomialIdeal.of(obj.universe, obj.edges)


def alexander_dual(ideal: MonomialIdeal) -> MonomialIdeal:
    """Minimal transversals of the generator supports.

    The zero ideal and the unit ideal are rejected: their duals fall outside
    squarefree monomial ideals with proper generators.
    """
    if ideal.is_zero:
        raise ValidationError("the Alexander dual of the zero ideal is not defined here")
    if 0 in ideal.generators:
        raise ValidationError("the Alexander dual of the unit ideal is not defined here")
    return MonomialIdeal.of(ideal.universe, minimal_transversals(ideal.generators))


def _colon_witnesses(gens: Sequence[int]) -> list[list[int]]:
    """table[i][j]: mask of k with supp f_k \\ supp f_i a single variable inside supp f_j \\ supp f_i."""
    t = len(gens)
    table = [[0] * t for _ in range(t)]
    for i, fi in enumerate(gens):
        linear = [(k, gens[k] & ~fi) for k in range(t) if k != i and popcount(gens[k] & ~fi) == 1]
        row = table[i]
        for j, fj in enumerate(gens):
            if j == i:
                continue
            rest = fj & ~fi
            m = 0
            for k, var in linear:
                if var & rest:
                    m |= 1 << k
            row[j] = m
    return table


def linear_quotients_in_order(ideal: MonomialIdeal, order: Sequence[int]) -> OrderCheck:
    """Check linear quotients for the generators taken as ``ideal.generators[order[p]]``.

    On failure ``violation`` holds (f_j, f_i): f_j's colon monomial by f_i has
    no linear divisor among earlier colons.
    """
    order = tuple(order)
    if sorted(order) != list(range(len(ideal.generators))):
        raise ValidationError("order is not a permutation of the generators")
    seq = [ideal.generators[p] for p in order]
    for i in range(1, len(seq)):
        fi = seq[i]
        linear = 0
        for fk in seq[:i]:
            d = fk & ~fi
            if popcount(d) == 1:
                linear |= d
        for fj in seq[:i]:
            if not (fj & ~fi) & linear:
                return OrderCheck(False, (fj, fi))
    return OrderCheck(True)


def generator_order(ideal: MonomialIdeal, supports: Sequence[int]) -> list[int]:
    """Indices into ``ideal.generators`` for a sequence of generator supports."""
    pos = {g: p for p, g in enumerate(ideal.generators)}
    try:
        return [pos[s] for s in supports]
    except KeyError as exc:
        raise ValidationError(f"{exc.args[0]} is not a generator") from None


def find_linear_quotients(ideal: MonomialIdeal) -> list[int] | None:
    """Least generator order with linear quotients, or None when none exists."""
    return search_order(len(ideal.generators), _colon_witnesses(ideal.generators))


def brute_force_dual(ideal: MonomialIdeal) -> MonomialIdeal:
    """Dual by testing every squarefree monomial against each variable prime."""
    n = len(ideal.universe)
    if n > 16:
        raise ValidationError("brute-force dual limited to 16 variables")
    members = [m for m in range(1 << n) if all(m & g for g in ideal.generators)]
    return MonomialIdeal.of(ideal.universe, members)


__all__ = [
    "MonomialIdeal",
    "alexander_dual",
    "brute_force_dual",
    "find_linear_quotients",
    "generator_order",
    "linear_quotients_in_order",
    "to_ideal",
]
