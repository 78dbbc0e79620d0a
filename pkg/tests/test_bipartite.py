from __future__ import annotations

from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ssclutter.bipartite import (
    NotDecomposable,
    UpwardSequences,
    bipartite_code,
    bipartition,
    connected_bipartite_graphs,
    construct_from_sequences,
    decompose,
    eccentric_center,
    is_ferrers,
    layer_report,
    lex_strong_shelling,
    recover_sequences,
    staircase_ok,
)
from ssclutter.core import Labeling, ValidationError, build_graph, graph_from_pairs, iter_bits
from ssclutter.graphs import eccentricity, edge_complex, is_ess_graph
from ssclutter.shelling import find_strong_shelling, verify_strong_order
from ssclutter.suites import SAMPLE_SEQUENCES

from conftest import to_nx

SAMPLE = construct_from_sequences(SAMPLE_SEQUENCES)
C4 = build_graph(["12", "23", "34", "14"], Labeling.range(4))


def labels(g, mask):
    return sorted(g.universe.names(mask))


def test_layers_of_a_star_and_a_path():
    star = graph_from_pairs([("c", "a"), ("c", "b"), ("c", "d")])
    rep = layer_report(star, "c")
    assert labels(star, rep.layer(1)) == ["a", "b", "d"] and rep.layer(2) == 0
    path = build_graph(["12", "23", "34"], Labeling.range(4))
    assert [labels(path, m) for m in layer_report(path, "1").layers] == [["1"], ["2"], ["3"], ["4"]]


def test_sample_instance_shape():
    assert SAMPLE.n == 10 and len(SAMPLE.edges) == 15
    assert layer_report(SAMPLE, "w").sizes() == [1, 3, 4, 2]


def test_sample_instance_recovers_its_sequences():
    seqs = recover_sequences(SAMPLE, "w")
    assert seqs.d == (4, 3, 2) and seqs.dprime == (2, 1, 0, 0)


def test_small_constructions():
    p = construct_from_sequences(UpwardSequences.of([1], [0]))
    assert sorted("".join(e) for e in p.named_edges()) == ["wx1", "x1y1"]
    ds = construct_from_sequences(UpwardSequences.of([3], [0, 0, 0]))
    # w is just one more leaf at x1: the star K_{1,4}
    assert sorted(ds.degree(v) for v in range(ds.n)) == [1, 1, 1, 1, 4]
    single = construct_from_sequences(UpwardSequences.of([], []))
    assert single.n == 1 and not single.edges


@pytest.mark.parametrize(
    "d, dprime, message",
    [
        ([2, 3], [0, 0, 0], "non-increasing"),
        ([2], [0, 1], "non-increasing"),
        ([2], [1], "length"),
        ([2, 1], [1, 1], "beyond"),
    ],
)
def test_sequences_are_validated(d, dprime, message):
    with pytest.raises(ValidationError, match=message):
        UpwardSequences.of(d, dprime)


def test_sequences_round_trip_json():
    assert UpwardSequences.from_json(SAMPLE_SEQUENCES.to_json()) == SAMPLE_SEQUENCES


def test_c4_decomposes_from_every_vertex():
    for v in range(4):
        dec = decompose(C4, v)
        assert dec.sequences.d == (1, 1) and dec.sequences.dprime == (0,)


def test_disconnected_graph_is_not_decomposable():
    with pytest.raises(NotDecomposable, match="disconnected"):
        decompose(build_graph(["13", "24"], Labeling.range(4)), "1")


def test_lex_orders():
    p = construct_from_sequences(UpwardSequences.of([1], [0]))
    assert ["".join(e) for e in lex_strong_shelling(p, "w").named()] == ["wx1", "x1y1"]
    order = lex_strong_shelling(SAMPLE, "w")
    assert len(order) == 15 and verify_strong_order(order.complex, order)
    assert verify_strong_order(edge_complex(C4), lex_strong_shelling(C4, "1"))


def test_ferrers_examples():
    k23 = graph_from_pairs([(a, b) for a in "ab" for b in "cde"])
    assert is_ferrers(k23) is not None
    c6 = build_graph(["12", "23", "34", "45", "56", "16"], Labeling.range(6))
    assert is_ferrers(c6) is None
    assert not any(
        staircase_ok(c6, xs, ys) for xs in permutations([0, 2, 4]) for ys in permutations([1, 3, 5])
    )
    with pytest.raises(ValidationError, match="bipartite"):
        is_ferrers(build_graph(["12", "23", "13"], Labeling.range(3)))


def test_sample_instance_is_ferrers_along_its_layers():
    layout = is_ferrers(SAMPLE)
    assert layout is not None
    rep = layer_report(SAMPLE, "w")
    sides = {sum(1 << v for v in layout.xs), sum(1 << v for v in layout.ys)}
    assert sides == {rep.layer(0) | rep.layer(2), rep.layer(1) | rep.layer(3)}


def test_eccentric_centres():
    star = graph_from_pairs([("c", "a"), ("c", "b"), ("c", "d")])
    assert star.universe.labels[eccentric_center(star)] == "c"
    assert eccentricity(SAMPLE, SAMPLE.universe.position("y1")) <= 2
    assert eccentricity(SAMPLE, eccentric_center(SAMPLE)) <= 2
    assert eccentric_center(C4) == 0


def test_connected_bipartite_counts_match_the_graph_atlas():
    atlas = {}
    for h in nx.graph_atlas_g()[1:]:
        if nx.is_connected(h) and nx.is_bipartite(h):
            atlas[h.number_of_nodes()] = atlas.get(h.number_of_nodes(), 0) + 1
    ours = {n: sum(1 for _ in connected_bipartite_graphs(n)) for n in range(1, 8)}
    assert ours == atlas == {1: 1, 2: 1, 3: 1, 4: 3, 5: 5, 6: 17, 7: 44}


def test_bipartite_code_is_an_isomorphism_invariant():
    graphs = list(connected_bipartite_graphs(6))
    for a in graphs:
        for b in graphs:
            same = nx.is_isomorphic(to_nx(a), to_nx(b))
            assert (bipartite_code(a) == bipartite_code(b)) == same


@st.composite
def sequences(draw):
    t = draw(st.integers(1, 3))
    d = sorted(draw(st.lists(st.integers(1, 4), min_size=t, max_size=t)), reverse=True)
    head = sorted(draw(st.lists(st.integers(0, 3), min_size=d[-1], max_size=d[-1])), reverse=True)
    return UpwardSequences.of(d, head + [0] * (d[0] - d[-1]))


@settings(max_examples=80, deadline=None)
@given(sequences())
def test_constructions_are_ess_and_round_trip(seqs):
    g = construct_from_sequences(seqs)
    assert bipartition(g) is not None
    assert is_ess_graph(g) is not None
    assert find_strong_shelling(edge_complex(g)) is not None
    assert recover_sequences(g, "w") == seqs
    assert is_ferrers(g) is not None
    for v in range(g.n):
        dec = decompose(g, v)
        built = construct_from_sequences(dec.sequences)
        assert nx.is_isomorphic(to_nx(built), to_nx(g))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(2, 4), st.data())
def test_ferrers_recognition_matches_exhaustive_orders(a, b, data):
    cells = [(r, c) for r in range(a) for c in range(b)]
    chosen = data.draw(st.lists(st.sampled_from(cells), unique=True, min_size=1))
    u = Labeling.range(a + b)
    g = build_graph([u.names((1 << r) | (1 << (a + c))) for r, c in chosen], u)
    live = [v for v in range(g.n) if g.adj[v]]
    if len(live) != g.n:
        return  # isolated vertices would change the bipartition
    parts = bipartition(g)
    xs, ys = (list(iter_bits(p)) for p in parts)
    truth = any(staircase_ok(g, px, py) for px in permutations(xs) for py in permutations(ys))
    assert (is_ferrers(g) is not None) == truth
