"""Small structures for tests and experiments: exhaustive enumeration up to
isomorphism, seeded random structures and a few named fixtures."""

from __future__ import annotations

import itertools
import random
from typing import List, Optional, Tuple

from twostruct.core import Color, ColorCatalog, TwoStructure, from_graph, from_tournament, linear_order
from twostruct.extensions import Extension


def _iso_key(n: int, rows) -> Tuple:
    """Lexicographically least relabelled matrix; cell values are compared as they are."""
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(rows[perm[u]][perm[v]] for u in range(n) for v in range(n) if u != v)
        if best is None or key < best:
            best = key
    return best


def all_graphs(n: int) -> List[TwoStructure]:
    """One graph per isomorphism class (1, 2, 4, 11, 34 for n = 1..5)."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    seen, out = set(), []
    for bits in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if bits >> i & 1]
        adj = [[0] * n for _ in range(n)]
        for u, v in edges:
            adj[u][v] = adj[v][u] = 1
        key = _iso_key(n, adj)
        if key not in seen:
            seen.add(key)
            out.append(from_graph(n, edges))
    return out


def all_tournaments(n: int) -> List[TwoStructure]:
    """One tournament per isomorphism class (1, 1, 2, 4, 12 for n = 1..5)."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    seen, out = set(), []
    for bits in range(1 << len(pairs)):
        arcs = [(v, u) if bits >> i & 1 else (u, v) for i, (u, v) in enumerate(pairs)]
        t = from_tournament(n, arcs)
        # a tournament and its reverse are different classes, so fwd stays fwd
        key = _iso_key(n, t.matrix)
        if key not in seen:
            seen.add(key)
            out.append(t)
    return out


def _compress(catalog_spec, rows) -> TwoStructure:
    """Drop colors that never occur and renumber the rest."""
    n = len(rows)
    used = sorted({rows[u][v] for u in range(n) for v in range(n) if u != v})
    cmap = {c: i for i, c in enumerate(used)}
    colors = []
    for c in used:
        name, partner = catalog_spec[c]
        colors.append(Color(name, cmap.get(partner) if partner is not None else None))
    out = [[cmap[rows[u][v]] if u != v else -1 for v in range(n)] for u in range(n)]
    return TwoStructure(ColorCatalog(tuple(colors)), out)


def random_reversible(rng: random.Random, n: int, n_sym: int, n_asym_pairs: int) -> TwoStructure:
    """Each unordered pair gets a uniformly chosen symmetric color or asymmetric pair
    (in a random direction). Colors that end up unused are dropped."""
    spec = [(f"s{i}", i) for i in range(n_sym)]
    for j in range(n_asym_pairs):
        base = n_sym + 2 * j
        spec += [(f"a{j}", base + 1), (f"a{j}r", base)]
    choices = n_sym + n_asym_pairs
    rows = [[-1] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            x = rng.randrange(choices)
            if x < n_sym:
                rows[u][v] = rows[v][u] = x
            else:
                c = n_sym + 2 * (x - n_sym) + rng.randrange(2)
                rows[u][v], rows[v][u] = c, spec[c][1]
    return _compress(spec, rows)


def random_structure(rng: random.Random, max_n: int = 6, max_eps: int = 4) -> TwoStructure:
    n = rng.randint(1, max_n)
    while True:
        n_asym = rng.randint(0, max_eps // 2)
        n_sym = rng.randint(0, max_eps - 2 * n_asym)
        if n_sym + n_asym:
            break
    return random_reversible(rng, n, n_sym, n_asym)


def random_nonreversible(rng: random.Random, n: int, n_colors: int,
                         tries: int = 1000) -> Optional[TwoStructure]:
    """Ordered pairs colored independently; None if every draw came out reversible."""
    spec = [(f"c{i}", None) for i in range(n_colors)]
    for _ in range(tries):
        rows = [[rng.randrange(n_colors) if u != v else -1 for v in range(n)] for u in range(n)]
        s = _compress(spec, rows)
        if not s.is_reversible:
            return s
    return None


def random_tournament(rng: random.Random, n: int) -> TwoStructure:
    arcs = [(u, v) if rng.random() < 0.5 else (v, u) for u in range(n) for v in range(u + 1, n)]
    return from_tournament(n, arcs)


def path_graph(n: int) -> TwoStructure:
    return from_graph(n, [(i, i + 1) for i in range(n - 1)])


def cyclic_triangle() -> TwoStructure:
    return from_tournament(3, [(0, 1), (1, 2), (2, 0)])


def two_k2() -> TwoStructure:
    return from_graph(4, [(0, 1), (2, 3)])


def p3_plus_two() -> TwoStructure:
    return from_graph(5, [(0, 1), (1, 2)])


def linear_order_fixture(n_plus_one: int, variant: str) -> Tuple[TwoStructure, Extension]:
    """The linear order on ``0..n`` plus a vertex ``a = n+1`` beating the even vertices
    below ``n`` and beaten by the odd ones, with the pair ``{n, a}`` colored so that one
    faithfulness condition fails.

    ``variant="new-color"`` joins ``n`` and ``a`` by a fresh symmetric color;
    ``variant="both-forward"`` puts both ``(n, a)`` and ``(a, n)`` in the forward class."""
    sigma = linear_order(n_plus_one)
    n = n_plus_one - 1
    a = n + 1
    fwd, bwd = 0, 1
    size = n + 2
    rows = [list(r) + [-1] for r in sigma.matrix] + [[-1] * size]
    for i in range(n):
        if i % 2 == 0:
            rows[a][i], rows[i][a] = fwd, bwd
        else:
            rows[i][a], rows[a][i] = fwd, bwd
    if variant == "new-color":
        cat = ColorCatalog((Color("fwd", 1), Color("bwd", 0), Color("tie", 2)))
        rows[n][a] = rows[a][n] = 2
    elif variant == "both-forward":
        cat = ColorCatalog((Color("fwd"), Color("bwd")))
        rows[n][a] = rows[a][n] = fwd
    else:
        raise ValueError(f"unknown variant {variant!r}")
    tau = TwoStructure(cat, rows)
    return sigma, Extension(tau, sigma.n, (0, 1), "fixture")
