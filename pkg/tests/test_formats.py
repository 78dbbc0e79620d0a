from __future__ import annotations

import pytest
from hypothesis import given, settings

from ssclutter.bipartite import UpwardSequences
from ssclutter.core import Graph, SimplicialComplex, Tree
from ssclutter.formats import ParseError, facets_dot, from_json, graph_dot, parse, parse_text, to_json
from ssclutter.graphs import is_ess_graph
from ssclutter.shelling import find_strong_shelling

from conftest import graphs, pure_complexes


def test_edges_text():
    g = parse_text("1 2\n2 3\n", "edges")
    assert isinstance(g, Graph)
    assert sorted("".join(e) for e in g.named_edges()) == ["12", "23"]


def test_facets_text_with_comment():
    cx = parse_text("1 2 3\n# note\n2 3 4\n", "facets")
    assert isinstance(cx, SimplicialComplex)
    assert sorted("".join(f) for f in cx.named_facets()) == ["123", "234"]


def test_domination_is_an_error_with_line_number():
    with pytest.raises(ParseError) as info:
        parse_text("1 2\n1 2 3\n", "facets")
    assert info.value.line == 2 and "line 2" in str(info.value)


def test_duplicate_and_bad_edge_lines():
    with pytest.raises(ParseError, match="duplicate of line 1"):
        parse_text("a b\n\nb a\n", "edges")
    with pytest.raises(ParseError, match="two labels"):
        parse_text("a b c\n", "edges")
    with pytest.raises(ParseError, match="repeated label"):
        parse_text("a a\n", "edges")


def test_vertices_directive():
    g = parse_text("@vertices c b a d\na b\n", "edges")
    assert g.universe.labels == ("c", "b", "a", "d")
    with pytest.raises(ParseError, match="missing from @vertices"):
        parse_text("@vertices a b\na z\n", "edges")
    with pytest.raises(ParseError, match="unknown directive"):
        parse_text("@colour red\n", "edges")


def test_tree_cycle_reported_at_closing_line():
    with pytest.raises(ParseError) as info:
        parse_text("1 2\n2 3\n3 1\n", "tree")
    assert info.value.line == 3
    t = parse_text("1 2\n1 3\n1 4\n", "tree")
    assert isinstance(t, Tree)


def test_parse_reads_files_and_json(tmp_path):
    p = tmp_path / "c4.edges"
    p.write_text("1 2\n2 3\n3 4\n1 4\n")
    g = parse(p, "edges")
    assert is_ess_graph(g) is not None
    q = tmp_path / "c4.json"
    q.write_text(to_json(g))
    assert parse(q, "edges") == g


def test_dot_output_marks_positions():
    g = parse_text("1 2\n2 3\n", "edges")
    dot = graph_dot(g, [1, 0])
    assert '"1" -- "2" [label="2"]' in dot and '"2" -- "3" [label="1"]' in dot
    cx = parse_text("1 2\n2 3\n", "facets")
    text = facets_dot(cx, list(find_strong_shelling(cx).order))
    assert 'label="1: {1,2}"' in text and "f0 -- f1" in text


@given(graphs(max_n=6))
def test_graph_json_round_trip(g):
    assert from_json(to_json(g)) == g


@given(pure_complexes())
def test_complex_json_round_trip(cx):
    assert from_json(to_json(cx)) == cx


def test_sequence_json_round_trip():
    s = UpwardSequences.of([4, 3, 2], [2, 1, 0, 0])
    assert from_json(to_json(s)) == s


@settings(max_examples=40)
@given(graphs(max_n=6))
def test_text_round_trip_with_declared_vertices(g):
    lines = ["@vertices " + " ".join(g.universe.labels)]
    lines += [" ".join(e) for e in g.named_edges()]
    assert parse_text("\n".join(lines), "edges") == g
