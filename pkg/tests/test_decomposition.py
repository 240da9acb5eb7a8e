import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_gallai_colorings
from gallai import (
    CapExceeded,
    ColoredKn,
    GallaiPartition,
    Leaf,
    Node,
    RainbowTriangleError,
    build_odd_extremal,
    compose,
    decompose_full,
    enumerate_gallai,
    gallai_partition,
    load_coloring,
    parse_tree,
    random_gallai,
    reduced_graph,
    refine_connected,
    tree_to_coloring,
)
from gallai.decomposition import spans_connected

gallai_params = st.tuples(st.integers(1, 30), st.integers(1, 5), st.integers(0, 2**32 - 1))


def _is_module(c, block):
    m = c.matrix
    inside = set(block)
    return all(len({int(m[x, b]) for b in block}) == 1 for x in range(c.order) if x not in inside)


# -- gallai_partition ----------------------------------------------------------------


def test_partition_of_monochromatic_k4_is_singletons():
    part = gallai_partition(ColoredKn.monochromatic(4))
    assert part.blocks == ((0,), (1,), (2,), (3,))
    assert part.between_colors() == {1}


def test_partition_of_odd_extremal_3_2():
    part = gallai_partition(build_odd_extremal(3, 2))
    assert [len(b) for b in part.blocks] == [6, 6]
    assert part.between == {(0, 1): 2}


def test_partition_rejects_rainbow():
    with pytest.raises(RainbowTriangleError) as info:
        gallai_partition(load_coloring("3 3\n0 1 1\n0 2 2\n1 2 3\n"))
    assert info.value.witness.vertices == (0, 1, 2)


@settings(max_examples=120, deadline=None)
@given(gallai_params)
def test_partition_is_sound_and_coarsest(params):
    n, k, seed = params
    if n < 2:
        return
    c = random_gallai(n, k, seed)
    part = gallai_partition(c)
    part.validate(c)
    assert all(_is_module(c, b) for b in part.blocks)
    # Two-block partitions are the coarsest possible; otherwise no union of
    # blocks short of everything may itself be a module joined in one color.
    if part.p > 2 and len(part.between_colors()) == 2:
        for i, j in itertools.combinations(range(part.p), 2):
            merged = part.blocks[i] + part.blocks[j]
            assert not _is_module(c, merged)


def test_partition_prime_reduced_graph():
    # C5 in red with the complementary C5 in blue is prime: only singletons.
    c = ColoredKn.from_function(5, 2, lambda u, v: 1 if (v - u) % 5 in (1, 4) else 2)
    part = gallai_partition(c)
    assert part.p == 5 and part.between_colors() == {1, 2}


# -- refine_connected ------------------------------------------------------------------


def _four_block_instance():
    # Reduced coloring: red (1) on {0,1} and {2,3}, blue (2) elsewhere; blocks of size 2.
    red = {(0, 1), (2, 3)}
    base = ColoredKn.from_function(4, 2, lambda i, j: 1 if (i, j) in red else 2)
    c = compose(base, [ColoredKn.monochromatic(2, 1, 2)] * 4)
    blocks = tuple((2 * i, 2 * i + 1) for i in range(4))
    between = {(i, j): base.color(i, j) for i, j in itertools.combinations(range(4), 2)}
    part = GallaiPartition(blocks, between, 2)
    part.validate(c)
    return c, part


def test_refine_four_block_example():
    c, part = _four_block_instance()
    assert not spans_connected(part)
    out = refine_connected(c, part)
    assert out.blocks == ((0, 1, 2, 3), (4, 5, 6, 7))
    assert out.between == {(0, 1): 2}
    assert spans_connected(out)


def test_refine_two_blocks_is_identity():
    c = build_odd_extremal(3, 2)
    part = gallai_partition(c)
    assert refine_connected(c, part) == part


def test_refine_monochromatic_k5_is_identity():
    c = ColoredKn.monochromatic(5)
    part = gallai_partition(c)
    assert refine_connected(c, part) == part


@settings(max_examples=120, deadline=None)
@given(gallai_params)
def test_refine_output_spans(params):
    n, k, seed = params
    if n < 2:
        return
    c = random_gallai(n, k, seed)
    out = refine_connected(c, gallai_partition(c))
    out.validate(c)
    assert spans_connected(out)


# -- reduced graph, compose -------------------------------------------------------------


def test_reduced_graph_examples():
    part = GallaiPartition(((0,), (1,)), {(0, 1): 5}, 5)
    r = reduced_graph(part)
    assert (r.order, r.color(0, 1)) == (2, 5)
    assert reduced_graph(gallai_partition(ColoredKn.monochromatic(4))) == ColoredKn.monochromatic(4)
    top = reduced_graph(gallai_partition(build_odd_extremal(3, 3)))
    assert top.order == 2 and top.color(0, 1) == 3


def test_compose_single_vertices():
    k2 = ColoredKn.monochromatic(2)
    assert compose(k2, [ColoredKn.monochromatic(1)] * 2) == k2


def test_compose_rebuilds_odd_extremal_byte_for_byte():
    base = ColoredKn.monochromatic(2, 2, 2)
    out = compose(base, [ColoredKn.monochromatic(6, 1, 1)] * 2)
    assert out.to_text() == build_odd_extremal(3, 2).to_text()


def test_compose_part_count_mismatch():
    with pytest.raises(ValueError):
        compose(ColoredKn.monochromatic(3), [ColoredKn.monochromatic(1)] * 2)


@settings(max_examples=120, deadline=None)
@given(gallai_params)
def test_partition_compose_roundtrip(params):
    n, k, seed = params
    if n < 2:
        return
    c = random_gallai(n, k, seed)
    part = gallai_partition(c)
    rebuilt = compose(reduced_graph(part), [c.restrict(b) for b in part.blocks])
    order = [v for b in part.blocks for v in b]
    # compose lists block vertices consecutively; map back to the original ids.
    assert rebuilt.relabel(order).with_color_count(c.color_count) == c


# -- trees ------------------------------------------------------------------------------


def test_tree_examples():
    assert decompose_full(ColoredKn.monochromatic(1)) == Leaf(0)
    t = decompose_full(ColoredKn.monochromatic(3))
    assert isinstance(t, Node) and t.children == (Leaf(0), Leaf(1), Leaf(2))
    t = decompose_full(build_odd_extremal(3, 2))
    assert t.reduced == ColoredKn.monochromatic(2, 2, 2)
    for child in t.children:
        assert isinstance(child, Node) and len(child.children) == 6
        assert all(isinstance(x, Leaf) for x in child.children)
        assert child.reduced.colors_used() == {1}


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_tree_depth_tracks_extremal_levels(k):
    assert decompose_full(build_odd_extremal(3, k)).depth == k


@settings(max_examples=100, deadline=None)
@given(gallai_params)
def test_tree_text_roundtrip(params):
    n, k, seed = params
    c = random_gallai(n, k, seed)
    tree = decompose_full(c)
    assert sorted(tree.leaves()) == list(range(n))
    parsed = parse_tree(tree.to_text(), k)
    assert parsed.to_text() == tree.to_text()
    assert tree_to_coloring(parsed, k) == c


def test_parse_tree_errors():
    with pytest.raises(ValueError):
        parse_tree("(1 | 0, 1")
    with pytest.raises(ValueError):
        parse_tree("(1 2 | 0, 1)")
    with pytest.raises(ValueError):
        parse_tree("(1 | 0, 1) x")


# -- random generation --------------------------------------------------------------------


def test_random_single_vertex():
    assert random_gallai(1, 3, 5).order == 1


def test_random_large_is_gallai_and_deterministic():
    from gallai import find_rainbow_triangle

    c = random_gallai(50, 4, 7)
    assert find_rainbow_triangle(c) is None
    assert random_gallai(50, 4, 7) == c
    assert random_gallai(50, 4, 8) != c


# -- enumeration ---------------------------------------------------------------------------


def test_enumeration_small_counts():
    assert sum(1 for _ in enumerate_gallai(3, 2)) == 8
    assert sum(1 for _ in enumerate_gallai(3, 3)) == 21
    assert sum(1 for _ in enumerate_gallai(2, 1)) == 1


@pytest.mark.parametrize("n, k", [(n, k) for n in range(1, 6) for k in range(1, 4)])
def test_enumeration_matches_brute_force(n, k):
    got = [tuple(int(x) for x in c.triangle) for c in enumerate_gallai(n, k)]
    assert len(got) == len(set(got))
    assert set(got) == brute_gallai_colorings(n, k)


def _restricted_growth(colors):
    top = 0
    for x in colors:
        if x > top + 1:
            return False
        top = max(top, x)
    return True


@pytest.mark.parametrize("n, k", [(3, 3), (4, 3), (5, 2), (5, 3)])
def test_reduced_enumeration_is_one_per_color_orbit(n, k):
    got = {tuple(int(x) for x in c.triangle) for c in enumerate_gallai(n, k, reduced=True)}
    assert got == {t for t in brute_gallai_colorings(n, k) if _restricted_growth(t)}


def test_enumeration_caps():
    with pytest.raises(CapExceeded):
        next(enumerate_gallai(8, 2))
    with pytest.raises(CapExceeded):
        next(enumerate_gallai(4, 4))
    assert next(enumerate_gallai(8, 2, max_order=8)).order == 8


def test_frozen_raw_counts():
    # Values from the brute-force oracle, frozen.
    assert [sum(1 for _ in enumerate_gallai(n, 3)) for n in range(1, 6)] == [1, 3, 21, 279, 6129]
