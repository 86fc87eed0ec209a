import itertools
import random
from pathlib import Path

import pytest

from twostruct.core import ColorCatalog, TwoStructure, from_graph, from_tournament, linear_order
from twostruct.generators import cyclic_triangle, p3_plus_two, path_graph, random_structure, two_k2

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


# A clan checker that reads the definition literally, kept apart from the
# bitmask closure used by the library.
def naive_is_clan(sigma, clan):
    clan = set(clan)
    for x in range(sigma.n):
        if x in clan:
            continue
        if len({sigma.color(x, u) for u in clan}) > 1 or len({sigma.color(u, x) for u in clan}) > 1:
            return False
    return True


def naive_clans(sigma):
    return [c for r in range(sigma.n + 1) for c in itertools.combinations(range(sigma.n), r)
            if naive_is_clan(sigma, c)]


def naive_prime_clans(sigma):
    clans = [set(c) for c in naive_clans(sigma)]
    return [tuple(sorted(c)) for c in clans
            if not any(c & d and not c <= d and not d <= c for d in clans)]


def naive_is_primitive(sigma):
    return sigma.n >= 3 and all(len(c) in (0, 1, sigma.n) for c in naive_clans(sigma))


def f1():
    """Chain 0 < 1 < 2 in an asymmetric color, vertex 3 joined to all by a symmetric one."""
    cat = ColorCatalog.build([("a", "asym", "ar"), ("ar", "asym", "a"), ("b", "sym")])
    return TwoStructure(cat, [[-1, 0, 0, 2], [1, -1, 0, 2], [1, 1, -1, 2], [2, 2, 2, -1]])


def two_k4():
    return from_graph(8, [(u, v) for blk in (range(4), range(4, 8))
                          for u in blk for v in blk if u < v])


def cycle_below_top():
    """A 3-cycle on 0..2, all of it beating 3."""
    return from_tournament(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])


def min_cycle_max():
    """0 beats everything, a 3-cycle on 1..3, 4 beaten by everything."""
    arcs = [(1, 2), (2, 3), (3, 1)] + [(0, v) for v in range(1, 5)] + [(v, 4) for v in range(1, 4)]
    return from_tournament(5, arcs)


def nonrev3():
    cat = ColorCatalog.build([("x",), ("y",), ("z",)])
    return TwoStructure(cat, [[-1, 0, 1], [0, -1, 1], [0, 2, -1]])


def k3():
    return from_graph(3, [(0, 1), (1, 2), (0, 2)])


NAMED = {
    "P3": lambda: path_graph(3),
    "P4": lambda: path_graph(4),
    "2K2": two_k2,
    "C3T": cyclic_triangle,
    "L3": lambda: linear_order(3),
    "L4": lambda: linear_order(4),
    "K3": k3,
    "P3+2": p3_plus_two,
    "F1": f1,
    "2K4": two_k4,
    "cycle-top": cycle_below_top,
    "min-cycle-max": min_cycle_max,
    "nonrev3": nonrev3,
}


def random_structures(count=200, seed=2024, max_n=6, max_eps=4):
    rng = random.Random(seed)
    return [random_structure(rng, max_n, max_eps) for _ in range(count)]


@pytest.fixture(params=sorted(NAMED))
def named(request):
    return request.param, NAMED[request.param]()


# criterion name -> (passed, detail), filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for name, (ok, detail) in ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
