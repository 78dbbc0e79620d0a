from __future__ import annotations

from itertools import combinations, permutations

import networkx as nx
from hypothesis import strategies as st

from ssclutter.core import Graph, Labeling, SimplicialComplex, iter_bits, maximal_sets


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(tuple(iter_bits(e)) for e in g.edges)
    return h


def brute_strong(cx: SimplicialComplex) -> bool:
    """Try every facet permutation against the textbook definition."""
    facets = cx.facets
    for perm in permutations(facets):
        if all(_strong_step(perm[:j], perm[j]) for j in range(1, len(perm))):
            return True
    return len(facets) == 0


def _strong_step(prefix, fj) -> bool:
    for fi in prefix:
        lo, hi = fi & fj, fi | fj
        if not any(
            fk & lo == lo and fk | hi == hi and bin(fj & ~fk).count("1") == 1
            for fk in prefix
        ):
            return False
    return True


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 6) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_masks(Labeling.range(n), [(1 << a) | (1 << b) for a, b in chosen])


@st.composite
def pure_complexes(draw, max_n: int = 5, max_facets: int = 6) -> SimplicialComplex:
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, n))
    pool = [sum(1 << v for v in c) for c in combinations(range(n), k)]
    facets = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=max_facets, unique=True))
    return SimplicialComplex(Labeling.range(n), tuple(maximal_sets(facets)))


@st.composite
def squarefree_supports(draw, max_n: int = 7):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=6))
    return n, gens


# criterion number -> "PASS criterion N: ..." line, filled by test_acceptance
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
