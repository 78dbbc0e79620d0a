from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from ssclutter.core import (
    Labeling,
    ValidationError,
    build_clutter,
    build_complex,
    build_tree,
    canonical_key,
    compress,
    maximal_sets,
    minimal_sets,
    minimal_transversals,
    popcount,
)


def test_labeling_rejects_duplicates_and_oversize():
    with pytest.raises(ValidationError, match="duplicate"):
        Labeling.of(["a", "b", "a"])
    with pytest.raises(ValidationError, match="at most 64"):
        Labeling.range(65)


def test_labeling_mask_and_names():
    u = Labeling.of(["a", "b", "10"])
    assert u.mask(["a", "10"]) == 0b101
    assert u.mask("10") == 0b100  # a whole label wins over characters
    assert u.names(0b011) == ("a", "b")
    with pytest.raises(ValidationError, match="not in the universe"):
        u.mask(["z"])


def test_build_complex_drops_dominated_faces():
    cx = build_complex(["12", "1"], Labeling.range(2))
    assert cx.named_facets() == [("1", "2")]


def test_void_complex_has_no_dimension():
    cx = build_complex([], Labeling.range(3))
    assert cx.is_void and cx.dim is None


def test_triangle_boundary_has_dimension_one():
    cx = build_complex(["12", "23", "13"], Labeling.range(3))
    assert len(cx.facets) == 3 and cx.dim == 1 and cx.is_pure


def test_build_complex_rejects_foreign_label():
    with pytest.raises(ValidationError, match="'7'"):
        build_complex(["17"], Labeling.range(3))


def test_build_clutter_accepts_antichains():
    c = build_clutter(["12", "23"], Labeling.range(3))
    assert c.is_uniform and c.uniformity == 2
    k43 = build_clutter(["123", "124", "134", "234"], Labeling.range(4))
    assert k43.uniformity == 3


def test_build_clutter_names_comparable_edges():
    with pytest.raises(ValidationError, match=r"\{1,2\} is contained in edge \{1,2,3\}"):
        build_clutter(["12", "123"], Labeling.range(3))


def test_build_clutter_rejects_empty_edge():
    with pytest.raises(ValidationError, match="empty edge"):
        build_clutter([[]], Labeling.range(2))


def test_build_tree_examples():
    star = build_tree(["12", "13", "14"], Labeling.range(4))
    assert sorted(star.leaves) == [1, 2, 3]
    path = build_tree(["12", "23", "34"], Labeling.range(4))
    assert sorted(path.leaves) == [0, 3]


def test_build_tree_reports_cycle():
    with pytest.raises(ValidationError, match="cycle"):
        build_tree(["12", "23", "13"], Labeling.range(3))


def test_build_tree_reports_disconnection():
    with pytest.raises(ValidationError, match="unreachable"):
        build_tree(["12", "34"], Labeling.range(4))


def test_compress_packs_support_bits():
    # support bits 1, 2, 4 become 0, 1, 2
    assert compress(0b10100, 0b10110) == 0b110


def test_minimal_transversals_small():
    # edges 12, 23 -> transversals 2 and 13
    assert sorted(minimal_transversals([0b011, 0b110])) == [0b010, 0b101]
    assert minimal_transversals([]) == [0]
    assert minimal_transversals([0]) == []


@given(st.lists(st.integers(0, 255), max_size=12))
def test_maximal_and_minimal_sets_are_antichains(sets):
    for pick, cmp in ((maximal_sets, lambda a, b: a | b == b), (minimal_sets, lambda a, b: a & b == b)):
        out = pick(sets)
        assert out == sorted(set(out), key=canonical_key)
        for a in out:
            for b in out:
                if a != b:
                    assert not cmp(a, b)
        assert set(out) <= set(sets)


@given(st.lists(st.integers(1, 127), min_size=1, max_size=6))
def test_minimal_transversals_match_brute_force(edges):
    hitting = [m for m in range(128) if all(m & e for e in edges)]
    expected = {m for m in hitting if not any(h != m and h & m == h for h in hitting)}
    got = minimal_transversals(edges)
    assert set(got) == expected
    assert all(popcount(t) >= 1 for t in got)
