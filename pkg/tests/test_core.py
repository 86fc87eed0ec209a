import random

import pytest
from hypothesis import given, settings, strategies as st

from twostruct.core import (
    Color,
    ColorCatalog,
    TwoStructure,
    build_structure,
    from_graph,
    from_tournament,
    is_reversible,
    linear_order,
    meet,
    star,
    substructure,
)
from twostruct.errors import (
    BadPartnerInvolution,
    EmptySet,
    NotATournament,
    StarViolation,
    UnknownColor,
    UnusedColor,
    VertexSetMismatch,
)
from twostruct.generators import cyclic_triangle, path_graph, random_nonreversible, random_structure

from conftest import nonrev3

seeds = st.integers(min_value=0, max_value=10 ** 6)


def _random(seed):
    return random_structure(random.Random(seed), 6, 4)


def _random_any(seed):
    rng = random.Random(seed)
    if rng.random() < 0.5:
        return random_structure(rng, 6, 4)
    return random_nonreversible(rng, rng.randint(2, 5), rng.randint(2, 4)) or random_structure(rng)


def test_single_vertex_with_a_color_is_unused():
    cat = ColorCatalog.build([("e", "sym")])
    with pytest.raises(UnusedColor):
        build_structure(1, cat, [[-1]])


def test_cyclic_triangle_from_a_matrix():
    cat = ColorCatalog.build([("a", "asym", "b"), ("b", "asym", "a")])
    s = build_structure(3, cat, [[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    assert s.epsilon == 2
    assert s == cyclic_triangle()


def test_asymmetric_color_on_both_orientations():
    cat = ColorCatalog.build([("a", "asym", "b"), ("b", "asym", "a")])
    with pytest.raises(StarViolation):
        build_structure(2, cat, {(0, 1): 0, (1, 0): 0})


def test_catalog_validation():
    with pytest.raises(BadPartnerInvolution):
        ColorCatalog((Color("a", 1), Color("b", 1)))
    with pytest.raises(UnknownColor):
        ColorCatalog.build([("a", "asym", "nope")])
    with pytest.raises(UnknownColor):
        ColorCatalog.build([("a",), ("a",)])
    with pytest.raises(UnknownColor):
        TwoStructure(ColorCatalog.build([("a", "sym")]), [[-1, 3], [3, -1]])


def test_missing_pair():
    cat = ColorCatalog.build([("e", "sym")])
    with pytest.raises(VertexSetMismatch):
        build_structure(2, cat, {(0, 1): 0})


def test_graphs():
    p4 = path_graph(4)
    assert p4.epsilon == 2
    assert p4.reversibility.symmetric == (0, 1)
    k3 = from_graph(3, [(0, 1), (1, 2), (0, 2)])
    empty = from_graph(3, [])
    assert k3.epsilon == 1 and empty.epsilon == 1
    assert k3 == empty
    assert k3.catalog.names != empty.catalog.names


def test_tournaments():
    l3 = from_tournament(3, [(0, 1), (1, 2), (0, 2)])
    assert l3.reversibility.asymmetric == (0, 1) and l3.is_tournament
    assert cyclic_triangle().reversibility.asymmetric == (0, 1)
    with pytest.raises(NotATournament):
        from_tournament(2, [(0, 1), (1, 0)])
    with pytest.raises(NotATournament):
        from_tournament(3, [(0, 1), (1, 2)])


def test_star_of_nonreversible():
    s = nonrev3()
    assert not s.is_reversible
    assert star(s) != s
    assert star(star(s)) == s


def test_nonreversible_detected():
    s = nonrev3()
    rev = is_reversible(s)
    assert not rev.reversible
    assert s.star_map is None


def test_meet_names():
    s = path_graph(3)
    m = meet(s, star(s))
    assert m == s
    assert set(m.catalog.names) == {"edge&edge", "nonedge&nonedge"}


def test_substructure():
    p4 = path_graph(4)
    assert substructure(p4, range(4)).structure == p4
    edge = substructure(p4, [0, 1])
    assert edge.structure.epsilon == 1 and edge.structure.catalog.names == ("edge",)
    assert edge.colors == (p4.catalog.index("edge"),)
    pair = substructure(cyclic_triangle(), [0, 1]).structure
    assert pair == linear_order(2)
    with pytest.raises(EmptySet):
        substructure(p4, [])
    with pytest.raises(VertexSetMismatch):
        substructure(p4, [0, 9])


def test_substructure_drops_one_sided_pairing():
    s = TwoStructure(ColorCatalog.build([("a", "asym", "b"), ("b", "asym", "a"), ("c", "sym")]),
                     [[-1, 0, 2], [1, -1, 2], [2, 2, -1]])
    sub = substructure(s, [0, 2]).structure
    assert sub.catalog.names == ("c",)
    assert sub.catalog.colors[0].partner == 0


@given(seeds)
def test_star_is_an_involution(seed):
    s = _random_any(seed)
    assert star(star(s)) == s


@given(seeds)
def test_reversible_equals_its_star(seed):
    s = _random(seed)
    assert s.is_reversible
    assert star(s) == s


@given(seeds)
def test_meet_properties(seed):
    s = _random_any(seed)
    assert meet(s, s) == s
    m = meet(s, star(s))
    assert m.is_reversible
    if s.is_reversible:
        assert m == s


@given(seeds)
def test_asymmetric_colors_pair_up(seed):
    rev = _random(seed).reversibility
    assert len(rev.asymmetric) % 2 == 0


@settings(max_examples=50)
@given(st.integers(1, 6), st.data())
def test_complement_and_dual(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, b in zip(pairs, bits) if b]
    other = [p for p, b in zip(pairs, bits) if not b]
    assert from_graph(n, edges) == from_graph(n, other)
    arcs = [(u, v) if b else (v, u) for (u, v), b in zip(pairs, bits)]
    assert from_tournament(n, arcs) == from_tournament(n, [(v, u) for u, v in arcs])
