import pytest

from twostruct.core import TwoStructure, from_graph, linear_order
from twostruct.decomposition import (
    clan_tree,
    completeness_profile,
    gallai_family,
    inclusive_clans,
    maximal_families,
    prime_clans,
    prime_envelope,
    quotient,
)
from twostruct.errors import EmptySet, NotAFactorization, NotReversible, TooSmall
from twostruct.generators import cyclic_triangle, p3_plus_two, path_graph, two_k2

from conftest import k3, min_cycle_max, naive_prime_clans, nonrev3


def test_prime_clans_match_the_definition(named):
    _, s = named
    assert prime_clans(s) == naive_prime_clans(s)


def test_prime_clans_examples():
    assert prime_clans(path_graph(3)) == [(), (0,), (1,), (2,), (0, 2), (0, 1, 2)]
    assert prime_clans(path_graph(4)) == [(), (0,), (1,), (2,), (3,), (0, 1, 2, 3)]
    assert prime_clans(two_k2()) == [(), (0,), (1,), (2,), (3,), (0, 1), (2, 3), (0, 1, 2, 3)]


def test_quotients():
    s = path_graph(3)
    q = quotient(s, [[0, 2], [1]])
    assert q.n == 2 and q.catalog.names == ("edge",)
    q = quotient(two_k2(), [[0, 1], [2, 3]])
    assert q.catalog.names == ("nonedge",)
    assert quotient(s, [[v] for v in range(3)]) == s


def test_quotient_orders_blocks_by_least_vertex():
    s = linear_order(3)
    q = quotient(s, [[2], [0, 1]])
    assert q.color_name(q.color(0, 1)) == "fwd"


def test_quotient_rejects_non_factorizations():
    s = path_graph(3)
    with pytest.raises(NotAFactorization):
        quotient(s, [[0, 1], [2]])
    with pytest.raises(NotAFactorization):
        quotient(s, [[0, 2]])
    with pytest.raises(NotAFactorization):
        quotient(s, [[0, 2], [1, 2]])


def test_prime_envelope():
    assert prime_envelope(path_graph(4), [1, 2])[0] == (0, 1, 2, 3)
    assert prime_envelope(path_graph(3), [0]) == ((0,), (0, 2))
    assert prime_envelope(path_graph(3), [0, 1])[0] == (0, 1, 2)
    assert prime_envelope(path_graph(3), range(3))[1] is None
    with pytest.raises(EmptySet):
        prime_envelope(path_graph(3), [])


def test_gallai_family():
    assert gallai_family(path_graph(3)) == [(0, 2), (1,)]
    assert gallai_family(path_graph(4)) == [(0,), (1,), (2,), (3,)]
    assert gallai_family(two_k2()) == [(0, 1), (2, 3)]
    with pytest.raises(TooSmall):
        gallai_family(linear_order(1))


def _leaf(v):
    return {"vertices": [v], "label": None, "children": []}


def test_trees():
    p3 = path_graph(3)
    assert clan_tree(p3).to_json(p3) == {
        "vertices": [0, 1, 2],
        "label": {"kind": "complete", "color": "edge"},
        "children": [
            {"vertices": [0, 2], "label": {"kind": "complete", "color": "nonedge"},
             "children": [_leaf(0), _leaf(2)]},
            _leaf(1),
        ],
    }
    l4 = linear_order(4)
    assert clan_tree(l4).to_json(l4) == {
        "vertices": [0, 1, 2, 3], "label": {"kind": "linear", "color": "fwd"},
        "children": [_leaf(v) for v in range(4)]}
    p4 = path_graph(4)
    assert clan_tree(p4).to_json(p4) == {
        "vertices": [0, 1, 2, 3], "label": {"kind": "primitive", "color": None},
        "children": [_leaf(v) for v in range(4)]}


def test_linear_orientation_prefers_the_least_vertex_first():
    reversed_chain = linear_order(4)
    rows = [[reversed_chain.matrix[3 - u][3 - v] if u != v else -1 for v in range(4)]
            for u in range(4)]
    s = TwoStructure(reversed_chain.catalog, rows)
    tree = clan_tree(s)
    assert [c.vertices for c in tree.children] == [(0,), (1,), (2,), (3,)]
    assert s.color_name(tree.label.color) == "bwd"


def test_families():
    f = maximal_families(path_graph(3))
    assert (f.complete, f.linear, f.primitive) == ([(0, 2)], [], [])
    assert f.upsilon == (1,) and f.upsilon_down == ()
    f = maximal_families(linear_order(4))
    assert (f.complete, f.linear, f.primitive) == ([], [(0, 1, 2, 3)], [])
    f = maximal_families(path_graph(4))
    assert (f.complete, f.linear, f.primitive) == ([], [], [(0, 1, 2, 3)])


def test_four_cycle():
    # two non-adjacent pairs, joined completely
    f = maximal_families(from_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))
    assert f.complete == [(0, 2), (1, 3)]
    assert f.upsilon == ()


def test_no_vertex_is_its_own_upper_envelope(named):
    _, s = named
    assert maximal_families(s).upsilon_down == ()


def test_completeness_profiles():
    p = completeness_profile(two_k2())
    assert p.c == 2 and all(v == () for v in p.isolated.values())
    s = p3_plus_two()
    p = completeness_profile(s)
    assert p.c == 2 and p.isolated[s.catalog.index("nonedge")] == (3, 4)
    p = completeness_profile(k3())
    assert p.c == 3 and p.isolated == {0: (0, 1, 2)}
    assert completeness_profile(linear_order(1)).c == 1
    with pytest.raises(NotReversible):
        completeness_profile(nonrev3())


def test_inclusive_clans():
    assert inclusive_clans(path_graph(3)) == [(0, 2), (0, 1, 2)]
    assert inclusive_clans(path_graph(4)) == [(0, 1, 2, 3)]
    assert inclusive_clans(linear_order(4)) == [(0, 1, 2, 3)]
    assert inclusive_clans(cyclic_triangle()) == [(0, 1, 2)]
    assert inclusive_clans(min_cycle_max()) == [(1, 2, 3), (0, 1, 2, 3), (1, 2, 3, 4), (0, 1, 2, 3, 4)]
