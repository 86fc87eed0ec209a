import random

import pytest

from twostruct.bound import count_primitive_1extensions, exhaustive_extension
from twostruct.clans import enumerate_clans, is_primitive
from twostruct.core import (
    Color,
    ColorCatalog,
    TwoStructure,
    from_graph,
    linear_order,
    meet,
    star,
    substructure,
)
from twostruct.decomposition import maximal_families
from twostruct.errors import (
    NotAnExtension,
    NotComplete,
    NotEComplete,
    NotFaithful,
    NotPrimitive,
    PowerMismatch,
    PreconditionFailed,
    TooFewColors,
)
from twostruct.extensions import (
    Extension,
    ceil_log,
    extend_asym_linear_top,
    extend_log,
    extend_power_case,
    extend_small_c,
    extend_tournament,
    extend_via_inclusive,
    is_faithful,
    lift_nonreversible,
    one_extensions_of_primitive,
    primitivize_complete_clan,
    small_c_candidates,
    sumner_extension,
    verify_clan_killing,
)
from twostruct.bound import _faithful_extensions
from twostruct.generators import (
    cyclic_triangle,
    p3_plus_two,
    path_graph,
    random_structure,
    random_tournament,
    two_k2,
)

from conftest import cycle_below_top, f1, k3, min_cycle_max, nonrev3, two_k4


def identity(sigma):
    return Extension(sigma, sigma.n, tuple(range(sigma.epsilon)))


def assert_good(sigma, ext, k=None):
    assert is_primitive(ext.tau)
    assert is_faithful(sigma, ext).faithful
    if k is not None:
        assert ext.k == k


def k3_plus_one():
    return from_graph(4, [(0, 1), (1, 2), (0, 2)])


def four_colors_with_triangle():
    """Triangle 0,1,2 in e; vertex 3 reaches them by f, a and f."""
    cat = ColorCatalog.build([("e", "sym"), ("f", "sym"), ("a", "asym", "ar"), ("ar", "asym", "a")])
    rows = [[-1, 0, 0, 1], [0, -1, 0, 3], [0, 0, -1, 1], [1, 2, 1, -1]]
    return TwoStructure(cat, rows)


def k4_among_five_colors():
    """A 4-clique in e, vertex 4 joined to it by f, vertex 5 by g, and 4 -> 5 in a."""
    cat = ColorCatalog.build([("e", "sym"), ("f", "sym"), ("g", "sym"),
                              ("a", "asym", "ar"), ("ar", "asym", "a")])
    rows = [[-1] * 6 for _ in range(6)]
    for u in range(4):
        for v in range(4):
            if u != v:
                rows[u][v] = 0
        rows[u][4] = rows[4][u] = 1
        rows[u][5] = rows[5][u] = 2
    rows[4][5], rows[5][4] = 3, 4
    return TwoStructure(cat, rows)


def test_ceil_log():
    assert [ceil_log(2, x) for x in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    assert ceil_log(4, 4) == 1 and ceil_log(3, 10) == 3


def test_identity_is_faithful():
    s = path_graph(4)
    assert is_faithful(s, identity(s)).faithful


def test_restriction_is_checked():
    s = path_graph(3)
    with pytest.raises(NotAnExtension):
        is_faithful(s, Extension(two_k2(), 3, (0, 1)))


def test_one_extensions_of_primitive():
    assert one_extensions_of_primitive(cyclic_triangle()) == []
    exts = one_extensions_of_primitive(path_graph(4))
    assert len(exts) == 2 ** 4 - 2 * 4 - 2
    for e in exts:
        assert_good(path_graph(4), e, 1)
    with pytest.raises(NotPrimitive):
        one_extensions_of_primitive(linear_order(3))


def test_one_extensions_match_enumeration():
    rng = random.Random(11)
    seen = 0
    while seen < 25:
        s = random_structure(rng, 5, 4)
        if not is_primitive(s):
            continue
        seen += 1
        count = len(one_extensions_of_primitive(s))
        assert count == s.epsilon ** s.n - s.epsilon * s.n - s.epsilon
        assert count == count_primitive_1extensions(s)


def test_primitivize_complete_clan():
    s = two_k2()
    ext = primitivize_complete_clan(s, [0, 1], s.catalog.index("edge"))
    assert ext.k == 2
    assert is_primitive(substructure(ext.tau, [0, 1, 4, 5]).structure)
    assert is_faithful(s, ext).faithful
    s = k3_plus_one()
    assert primitivize_complete_clan(s, [0, 1, 2], s.catalog.index("edge")).k == 2
    s = four_colors_with_triangle()
    ext = primitivize_complete_clan(s, [0, 1, 2], 0)
    assert ext.k == 1
    assert is_primitive(substructure(ext.tau, [0, 1, 2, 4]).structure)


def test_primitivize_errors():
    s = two_k2()
    with pytest.raises(NotEComplete):
        primitivize_complete_clan(s, [0, 2], s.catalog.index("edge"))
    with pytest.raises(TooFewColors):
        primitivize_complete_clan(k3(), [0, 1], 0)


def test_asym_linear_top():
    s = cycle_below_top()
    assert_good(s, extend_asym_linear_top(s), 1)
    with pytest.raises(PreconditionFailed):
        extend_asym_linear_top(linear_order(4))
    with pytest.raises(PreconditionFailed):
        extend_asym_linear_top(p3_plus_two())


def test_asym_linear_top_splits_every_clan():
    s = cycle_below_top()
    ext = extend_asym_linear_top(s)
    a = s.n
    for c in enumerate_clans(s, 2):
        assert len({ext.tau.color(v, a) for v in c}) == 2


def test_via_inclusive():
    s = min_cycle_max()
    assert_good(s, extend_via_inclusive(s), 1)
    with pytest.raises(PreconditionFailed):
        extend_via_inclusive(cyclic_triangle())
    with pytest.raises(PreconditionFailed):
        extend_via_inclusive(path_graph(3))


def test_via_inclusive_on_random_tournaments():
    rng = random.Random(3)
    tried = 0
    for _ in range(300):
        t = random_tournament(rng, rng.randint(3, 7))
        try:
            ext = extend_via_inclusive(t)
        except PreconditionFailed:
            continue
        tried += 1
        assert_good(t, ext, 1)
    assert tried > 20


def test_small_c():
    s = f1()
    assert_good(s, extend_small_c(s), 1)
    with pytest.raises(PreconditionFailed):
        extend_small_c(two_k2())
    with pytest.raises(PreconditionFailed):
        extend_small_c(path_graph(4))


def test_log():
    assert_good(two_k2(), extend_log(two_k2()), 2)
    assert_good(k3_plus_one(), extend_log(k3_plus_one()), 2)
    with pytest.raises(PreconditionFailed):
        extend_log(k4_among_five_colors())


def test_power_case():
    assert_good(two_k2(), extend_power_case(two_k2()), 1)
    assert_good(two_k4(), extend_power_case(two_k4()), 2)
    assert_good(two_k4(), extend_power_case(two_k4(), 2), 2)
    with pytest.raises(PowerMismatch):
        extend_power_case(two_k4(), 1)
    with pytest.raises(PreconditionFailed):
        extend_power_case(p3_plus_two())


def test_tournaments():
    ext = extend_tournament(linear_order(4))
    assert_good(linear_order(4), ext, 1)
    assert ext.tau.is_tournament
    assert_good(linear_order(3), extend_tournament(linear_order(3)), 2)
    with pytest.raises(PreconditionFailed):
        extend_tournament(cyclic_triangle())


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (7, 3)])
def test_sumner(n, k):
    s = from_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    ext = sumner_extension(s)
    assert ext.k == k
    assert is_primitive(ext.tau)
    assert not is_faithful(s, ext).e1
    assert ext.tau.is_symmetric


def test_sumner_needs_one_color():
    with pytest.raises(NotComplete):
        sumner_extension(path_graph(3))


def test_lift_of_a_reversible_structure():
    s = two_k2()
    mu = meet(s, star(s))
    rho = extend_power_case(mu)
    tau = lift_nonreversible(s, rho)
    assert tau.tau == rho.tau


def test_lift_nonreversible():
    s = nonrev3()
    mu = meet(s, star(s))
    rho = exhaustive_extension(mu, 1)
    ext = lift_nonreversible(s, rho)
    assert_good(s, ext, 1)
    assert meet(ext.tau, star(ext.tau)) == rho.tau


def test_lift_rejects_new_colors():
    s = nonrev3()
    mu = meet(s, star(s))
    n = mu.n
    cat = ColorCatalog(mu.catalog.colors + (Color("new", mu.epsilon),))
    rows = [list(r) + [mu.epsilon] for r in mu.matrix] + [[mu.epsilon] * n + [-1]]
    rho = Extension(TwoStructure(cat, rows), n, tuple(range(mu.epsilon)))
    with pytest.raises(NotFaithful):
        lift_nonreversible(s, rho)


def test_clan_killing_examples():
    s = two_k2()
    report = verify_clan_killing(s, extend_log(s))
    assert report.conclusion and report.survivors == []
    report = verify_clan_killing(s, identity(s))
    assert not report.hypotheses["E3"]
    assert not report.conclusion
    assert report.violations


def test_clan_killing_on_small_c_candidates():
    s = f1()
    checked = 0
    for ext in small_c_candidates(s):
        report = verify_clan_killing(s, ext)
        if all(report.hypotheses.values()):
            checked += 1
            assert report.conclusion and not report.corollary_violations
    report = verify_clan_killing(s, extend_small_c(s))
    assert report.conclusion and not report.corollary_violations


def test_clan_killing_over_all_one_vertex_extensions():
    rng = random.Random(5)
    held = 0
    for _ in range(120):
        s = random_structure(rng, 5, 3)
        if s.epsilon < 2 or s.n < 3:
            continue
        fam = maximal_families(s)
        families = [()] + [(x,) for x in fam.linear + fam.primitive]
        for rows in _faithful_extensions(s, 1):
            ext = Extension(TwoStructure(s.catalog, [list(r) for r in rows]), s.n,
                            tuple(range(s.epsilon)))
            for family in families:
                report = verify_clan_killing(s, ext, family)
                if all(report.hypotheses.values()):
                    held += 1
                    assert report.conclusion, (s.matrix, rows, family)
                    assert not report.corollary_violations, (s.matrix, rows, family)
    assert held > 500
