from __future__ import annotations

from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ssclutter.core import Graph, Labeling, TheoremViolation, ValidationError, build_graph, graph_from_pairs
from ssclutter.graphs import (
    QuotientMap,
    blow_up,
    chordless_cycle,
    clique_number,
    complement_graph,
    diameter,
    distance,
    edge_complex,
    edge_distance,
    find_peo,
    graph_expansion,
    induced_subgraph,
    is_chordal,
    is_ess_graph,
    is_peo,
    line_graph,
    peo_to_strong_shelling,
    quotient_graph,
    verify_graph_order,
)
from ssclutter.shelling import find_strong_shelling, verify_strong_order
from ssclutter.suites import path_complex

from conftest import graphs, to_nx

U4 = Labeling.range(4)
C4 = build_graph(["12", "23", "34", "14"], U4)
TWO_K2 = build_graph(["13", "24"], U4)


def edges_of(g):
    return sorted("".join(e) for e in g.named_edges())


def test_complement_examples():
    assert complement_graph(C4) == TWO_K2
    k4 = build_graph(["".join(p) for p in combinations("1234", 2)], U4)
    assert complement_graph(k4).edges == ()


def test_find_peo_on_path():
    path = build_graph(["12", "23", "34"], U4)
    peo = find_peo(path)
    assert peo is not None and is_peo(path, peo.order)


def test_c4_has_chordless_cycle_witness():
    assert find_peo(C4) is None
    assert [C4.universe.labels[v] for v in chordless_cycle(C4)] == ["1", "2", "3", "4"]


def test_c5_with_one_chord_reports_the_remaining_square():
    g = build_graph(["12", "23", "34", "45", "15", "13"], Labeling.range(5))
    assert find_peo(g) is None
    cycle = [g.universe.labels[v] for v in chordless_cycle(g)]
    assert cycle == ["1", "3", "4", "5"]


def test_constructive_order_on_c4():
    order = peo_to_strong_shelling(C4, [0, 1, 2, 3])
    assert ["".join(e) for e in order.named()] == ["12", "23", "14", "34"]
    assert verify_strong_order(order.complex, order)


def test_constructive_order_rejects_non_peo():
    path = build_graph(["12", "23", "34"], U4)
    # complement of the path is 13, 14, 24 (a path 3-1-4-2); 1 first is not simplicial
    with pytest.raises(ValidationError):
        peo_to_strong_shelling(path, [0, 1, 2, 3])


def test_ess_examples():
    assert is_ess_graph(C4) is not None
    assert is_ess_graph(TWO_K2) is None
    assert peo_to_strong_shelling(TWO_K2) is None
    l5 = Graph(path_complex(5).universe, path_complex(5).facets)
    assert is_ess_graph(l5) is None
    k3 = build_graph(["12", "13", "23"], Labeling.range(3))
    assert verify_strong_order(edge_complex(k3), peo_to_strong_shelling(k3))


def test_quotient_of_path():
    g = graph_from_pairs([("a", "b1"), ("b1", "b2"), ("b2", "c")])
    f = QuotientMap.of(g, {"b1": "b", "b2": "b"})
    assert edges_of(quotient_graph(g, f)) == ["ab", "bc"]
    assert not f.is_proper()
    g2 = graph_from_pairs([("a", "b1"), ("b2", "c")])
    assert QuotientMap.of(g2, {"b1": "b", "b2": "b"}).is_proper()


def test_identity_quotient():
    assert quotient_graph(C4, {}) == C4


def test_quotient_must_be_surjective():
    with pytest.raises(ValidationError, match="surjective"):
        QuotientMap(C4, {lab: "x" for lab in "1234"}, Labeling.of(["x", "y"]))


def test_blow_up_examples():
    edge = build_graph(["12"], Labeling.range(2))
    assert blow_up(edge, "2", 1).edges == edge.edges
    star = blow_up(edge, "2", 2)
    assert edges_of(star) == ["12_1", "12_2"]


def test_distances():
    path = build_graph(["12", "23", "34"], U4)
    assert distance(path, "1", "4") == 3
    assert diameter(path) == 3
    assert distance(TWO_K2, "1", "2") is None
    assert edge_distance(path, "12", "34") == 2


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6))
def test_five_way_equivalence(g):
    ess = find_strong_shelling(edge_complex(g)) is not None
    chordal = nx.is_chordal(to_nx(complement_graph(g)))
    built = peo_to_strong_shelling(g)
    assert ess == chordal == (built is not None) == (is_ess_graph(g) is not None)
    if built is not None:
        assert verify_strong_order(built.complex, built)
        assert verify_graph_order(g, built)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7))
def test_chordality_matches_networkx(g):
    chordal = nx.is_chordal(to_nx(g))
    assert is_chordal(g) == chordal
    peo = find_peo(g)
    if chordal:
        assert is_peo(g, peo.order)
    else:
        cycle = chordless_cycle(g)
        assert len(cycle) >= 4
        h = to_nx(g).subgraph(cycle)
        assert h.number_of_edges() == len(cycle) and all(d == 2 for _, d in h.degree())


@given(graphs(max_n=7))
def test_complement_is_an_involution(g):
    assert complement_graph(complement_graph(g)) == g


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=6), st.data())
def test_peo_restricts_to_induced_subgraphs(g, data):
    peo = find_peo(g)
    if peo is None:
        return
    w = data.draw(st.integers(1, g.universe.full))
    sub = induced_subgraph(g, w)
    kept = [v for v in peo.order if w >> v & 1]
    pos = {v: i for i, v in enumerate(v for v in range(g.n) if w >> v & 1)}
    assert is_peo(sub, [pos[v] for v in kept])


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=2, max_n=7))
def test_metrics_match_networkx(g):
    h = to_nx(g)
    assert clique_number(g) == max((len(c) for c in nx.find_cliques(h)), default=0)
    if nx.is_connected(h):
        assert diameter(g) == nx.diameter(h)
    else:
        assert diameter(g) is None
    lg = line_graph(g)
    assert lg.n == len(g.edges)
    assert len(lg.edges) == nx.line_graph(h).number_of_edges()


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=5), st.lists(st.integers(1, 2), min_size=5, max_size=5))
def test_expansion_preserves_chordality(g, s):
    s = s[: g.n]
    ex = graph_expansion(g, s)
    assert ex.n == sum(s)
    assert is_chordal(ex) == is_chordal(g)
    # edge rule: copies of adjacent vertices are adjacent, fibers are cliques
    first = [sum(s[:i]) for i in range(g.n)]
    for a, b in combinations(range(g.n), 2):
        for ra, rb in product(range(s[a]), range(s[b])):
            assert ex.adjacent(first[a] + ra, first[b] + rb) == g.adjacent(a, b)
    for a in range(g.n):
        for r1, r2 in combinations(range(s[a]), 2):
            assert ex.adjacent(first[a] + r1, first[a] + r2)


def test_constructive_order_raises_when_verification_fails(monkeypatch):
    import ssclutter.graphs as graphs_mod
    from ssclutter.shelling import OrderCheck

    monkeypatch.setattr(graphs_mod, "verify_strong_order", lambda cx, o: OrderCheck(False, (1, 2)))
    with pytest.raises(TheoremViolation):
        peo_to_strong_shelling(C4)
