"""Finite 2-structures: construction, star, meet, restriction and equality.

A 2-structure on vertices ``0..n-1`` is stored as an ``n x n`` matrix of
color ids (the diagonal holds ``-1``) together with a :class:`ColorCatalog`.
Two pairs are equivalent exactly when they carry the same color id.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from twostruct.errors import (
    BadPartnerInvolution,
    EmptySet,
    NotATournament,
    StarViolation,
    UnknownColor,
    UnusedColor,
    VertexSetMismatch,
)

VertexSet = Tuple[int, ...]
ColorId = int


def vset(vertices: Iterable[int]) -> VertexSet:
    """Sorted duplicate-free tuple."""
    return tuple(sorted(set(vertices)))


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_mask(mask: int) -> VertexSet:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def family_key(s: Sequence[int]):
    """Ordering used for every family of vertex sets: size, then lexicographic."""
    return (len(s), tuple(s))


@dataclass(frozen=True)
class Color:
    name: str
    # index of the star partner; the color's own index when symmetric,
    # None when no pairing is declared
    partner: Optional[int] = None


@dataclass(frozen=True)
class ColorCatalog:
    colors: Tuple[Color, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        seen = set()
        for c in self.colors:
            if not c.name or any(ch.isspace() for ch in c.name):
                raise UnknownColor(f"bad color name {c.name!r}")
            if c.name in seen:
                raise UnknownColor(f"duplicate color name {c.name!r}")
            seen.add(c.name)
        k = len(self.colors)
        for i, c in enumerate(self.colors):
            if c.partner is None:
                continue
            p = c.partner
            if not 0 <= p < k:
                raise BadPartnerInvolution(f"{c.name}: partner index {p} out of range")
            if self.colors[p].partner != i:
                raise BadPartnerInvolution(
                    f"{c.name} -> {self.colors[p].name} is not returned by its partner"
                )

    @classmethod
    def build(cls, spec: Sequence[Tuple]) -> "ColorCatalog":
        """Build from ``(name, "sym")``, ``(name, "asym", partner_name)`` or ``(name,)``."""
        names = [s[0] for s in spec]
        index = {n: i for i, n in enumerate(names)}
        colors = []
        for i, s in enumerate(spec):
            if len(s) == 1 or s[1] is None:
                colors.append(Color(s[0]))
            elif s[1] == "sym":
                colors.append(Color(s[0], i))
            elif s[1] == "asym":
                if s[2] not in index:
                    raise UnknownColor(f"unknown partner {s[2]!r}")
                if index[s[2]] == i:
                    raise BadPartnerInvolution(f"{s[0]} is declared asymmetric but partners itself")
                colors.append(Color(s[0], index[s[2]]))
            else:
                raise UnknownColor(f"unknown color kind {s[1]!r}")
        return cls(tuple(colors))

    def __len__(self):
        return len(self.colors)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.colors)

    def index(self, name: str) -> ColorId:
        for i, c in enumerate(self.colors):
            if c.name == name:
                return i
        raise UnknownColor(name)

    @property
    def declared(self) -> bool:
        return all(c.partner is not None for c in self.colors)


class Reversibility(NamedTuple):
    reversible: bool
    symmetric: Tuple[ColorId, ...]
    asymmetric: Tuple[ColorId, ...]


class TwoStructure:
    """Immutable finite 2-structure."""

    def __init__(self, catalog: ColorCatalog, matrix: Sequence[Sequence[int]]):
        n = len(matrix)
        if n < 1:
            raise VertexSetMismatch("a 2-structure needs at least one vertex")
        rows = []
        used = set()
        k = len(catalog)
        for u, row in enumerate(matrix):
            if len(row) != n:
                raise VertexSetMismatch(f"row {u} has length {len(row)}, expected {n}")
            r = []
            for v, c in enumerate(row):
                if u == v:
                    r.append(-1)
                    continue
                if not isinstance(c, int) or not 0 <= c < k:
                    raise UnknownColor(f"pair ({u},{v}) has unknown color {c!r}")
                used.add(c)
                r.append(c)
            rows.append(tuple(r))
        for i, col in enumerate(catalog.colors):
            if col.partner is None:
                continue
            for u in range(n):
                for v in range(n):
                    if u != v and rows[u][v] == i and rows[v][u] != col.partner:
                        raise StarViolation(
                            f"({u},{v}) is {col.name} but ({v},{u}) is "
                            f"{catalog.colors[rows[v][u]].name}, expected "
                            f"{catalog.colors[col.partner].name}"
                        )
        unused = [catalog.colors[i].name for i in range(k) if i not in used]
        if unused:
            raise UnusedColor(f"colors never used: {', '.join(unused)}")
        self._n = n
        self._catalog = catalog
        self._matrix = tuple(rows)

    @property
    def n(self) -> int:
        return self._n

    @property
    def catalog(self) -> ColorCatalog:
        return self._catalog

    @property
    def matrix(self) -> Tuple[Tuple[int, ...], ...]:
        return self._matrix

    @property
    def epsilon(self) -> int:
        return len(self._catalog)

    @property
    def vertices(self) -> VertexSet:
        return tuple(range(self._n))

    def color(self, u: int, v: int) -> ColorId:
        if u == v:
            raise VertexSetMismatch("the diagonal carries no color")
        return self._matrix[u][v]

    def color_name(self, c: ColorId) -> str:
        return self._catalog.colors[c].name

    @cached_property
    def reversibility(self) -> Reversibility:
        star = {}
        for u in range(self._n):
            for v in range(self._n):
                if u == v:
                    continue
                c, d = self._matrix[u][v], self._matrix[v][u]
                if star.setdefault(c, d) != d:
                    return Reversibility(False, (), ())
        sym = tuple(sorted(c for c, d in star.items() if c == d))
        asym = tuple(sorted(c for c, d in star.items() if c != d))
        return Reversibility(True, sym, asym)

    @property
    def is_reversible(self) -> bool:
        return self.reversibility.reversible

    @cached_property
    def star_map(self) -> Optional[Tuple[ColorId, ...]]:
        """``star_map[e]`` is the color of ``e*``; None when not reversible."""
        if not self.is_reversible:
            return None
        out = list(range(self.epsilon))
        for u in range(self._n):
            for v in range(u + 1, self._n):
                out[self._matrix[u][v]] = self._matrix[v][u]
                out[self._matrix[v][u]] = self._matrix[u][v]
        return tuple(out)

    @property
    def is_symmetric(self) -> bool:
        r = self.reversibility
        return r.reversible and not r.asymmetric

    @property
    def is_asymmetric(self) -> bool:
        r = self.reversibility
        return r.reversible and not r.symmetric and self.epsilon > 0

    @property
    def is_tournament(self) -> bool:
        return self.epsilon == 2 and self.is_asymmetric

    @cached_property
    def pair_types(self) -> Tuple[Tuple[int, int], ...]:
        """Sorted distinct ``(color(u,v), color(v,u))`` over ordered pairs ``u != v``."""
        return tuple(sorted({(self._matrix[u][v], self._matrix[v][u])
                             for u in range(self._n) for v in range(self._n) if u != v}))

    @cached_property
    def masks(self):
        """Per-vertex bitmasks: ``out_m[x][c]`` = {y : (x,y) = c}, ``in_m[x][c]`` = {y : (y,x) = c}."""
        k, n, m = self.epsilon, self._n, self._matrix
        out_m = [[0] * k for _ in range(n)]
        in_m = [[0] * k for _ in range(n)]
        for x in range(n):
            for y in range(n):
                if x != y:
                    out_m[x][m[x][y]] |= 1 << y
                    in_m[x][m[y][x]] |= 1 << y
        return out_m, in_m

    @cached_property
    def canonical_key(self) -> Tuple[int, ...]:
        relabel = {}
        out = []
        for u in range(self._n):
            for v in range(self._n):
                if u != v:
                    c = self._matrix[u][v]
                    out.append(relabel.setdefault(c, len(relabel)))
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, TwoStructure):
            return NotImplemented
        return self._n == other._n and self.canonical_key == other.canonical_key

    def __hash__(self):
        return hash((self._n, self.canonical_key))

    def __repr__(self):
        return f"TwoStructure(n={self._n}, colors={list(self._catalog.names)})"

    def restrict(self, vertices: Iterable[int]) -> "TwoStructure":
        return substructure(self, vertices).structure


def build_structure(
    n: int,
    catalog: ColorCatalog,
    pair_color: Union[Mapping[Tuple[int, int], int], Sequence[Sequence[int]]],
) -> TwoStructure:
    """Validate and build. ``pair_color`` is a mapping over ordered pairs or a nested matrix."""
    if isinstance(pair_color, Mapping):
        rows = [[-1] * n for _ in range(n)]
        for u in range(n):
            for v in range(n):
                if u != v:
                    if (u, v) not in pair_color:
                        raise VertexSetMismatch(f"pair ({u},{v}) has no color")
                    rows[u][v] = pair_color[(u, v)]
    else:
        rows = [list(r) for r in pair_color]
        if len(rows) != n:
            raise VertexSetMismatch(f"expected {n} rows, got {len(rows)}")
    return TwoStructure(catalog, rows)


def star(sigma: TwoStructure) -> TwoStructure:
    """The star structure: ``(u,v)`` gets the class of ``(v,u)``."""
    n = sigma.n
    rows = [[sigma.matrix[v][u] if u != v else -1 for v in range(n)] for u in range(n)]
    return TwoStructure(sigma.catalog, rows)


def with_declared_pairing(sigma: TwoStructure) -> TwoStructure:
    """Same structure with the catalog declaring the computed star pairing, when reversible."""
    st = sigma.star_map
    if st is None or sigma.catalog.declared:
        return sigma
    cat = ColorCatalog(tuple(Color(c.name, st[i]) for i, c in enumerate(sigma.catalog.colors)))
    return TwoStructure(cat, sigma.matrix)


def meet(sigma: TwoStructure, tau: TwoStructure) -> TwoStructure:
    """Common refinement; the class of a pair is named ``"e&f"``."""
    if sigma.n != tau.n:
        raise VertexSetMismatch("meet needs structures on the same vertex set")
    n = sigma.n
    pairs = sorted({(sigma.matrix[u][v], tau.matrix[u][v])
                    for u in range(n) for v in range(n) if u != v})
    index = {p: i for i, p in enumerate(pairs)}
    colors = tuple(Color(f"{sigma.color_name(a)}&{tau.color_name(b)}") for a, b in pairs)
    rows = [[index[(sigma.matrix[u][v], tau.matrix[u][v])] if u != v else -1
             for v in range(n)] for u in range(n)]
    return with_declared_pairing(TwoStructure(ColorCatalog(colors), rows))


def is_reversible(sigma: TwoStructure) -> Reversibility:
    return sigma.reversibility


class Substructure(NamedTuple):
    structure: TwoStructure
    vertices: VertexSet  # new index -> old vertex
    colors: Tuple[ColorId, ...]  # new color id -> old color id


def substructure(sigma: TwoStructure, vertices: Iterable[int]) -> Substructure:
    vs = vset(vertices)
    if not vs:
        raise EmptySet("cannot restrict to the empty set")
    if vs[0] < 0 or vs[-1] >= sigma.n:
        raise VertexSetMismatch(f"vertices {vs} not all in 0..{sigma.n - 1}")
    old_colors = sorted({sigma.matrix[u][v] for u in vs for v in vs if u != v})
    cmap = {c: i for i, c in enumerate(old_colors)}
    cat_colors = []
    for c in old_colors:
        col = sigma.catalog.colors[c]
        partner = None
        if col.partner is not None and col.partner in cmap:
            partner = cmap[col.partner]
        cat_colors.append(Color(col.name, partner))
    # a partner that disappeared leaves the pairing undeclared for both sides
    for i, col in enumerate(cat_colors):
        if col.partner is not None and cat_colors[col.partner].partner != i:
            cat_colors[i] = Color(col.name)
    rows = [[cmap[sigma.matrix[u][v]] if u != v else -1 for v in vs] for u in vs]
    return Substructure(TwoStructure(ColorCatalog(tuple(cat_colors)), rows), vs, tuple(old_colors))


def from_graph(n: int, edges: Iterable[Tuple[int, int]]) -> TwoStructure:
    """Colors ``edge`` and ``nonedge``, both symmetric; only the ones that occur are kept."""
    adj = [[False] * n for _ in range(n)]
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise VertexSetMismatch(f"bad edge {u}-{v}")
        adj[u][v] = adj[v][u] = True
    present = {adj[u][v] for u in range(n) for v in range(n) if u != v}
    names = [nm for flag, nm in ((True, "edge"), (False, "nonedge")) if flag in present]
    cat = ColorCatalog(tuple(Color(nm, i) for i, nm in enumerate(names)))
    idx = {True: names.index("edge") if "edge" in names else -1,
           False: names.index("nonedge") if "nonedge" in names else -1}
    rows = [[idx[adj[u][v]] if u != v else -1 for v in range(n)] for u in range(n)]
    return TwoStructure(cat, rows)


def from_tournament(n: int, arcs: Iterable[Tuple[int, int]]) -> TwoStructure:
    """Colors ``fwd`` (the arcs) and ``bwd`` (their reverses), partnered."""
    rows = [[-1] * n for _ in range(n)]
    for u, v in arcs:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise NotATournament(f"bad arc {u}>{v}")
        if rows[u][v] != -1 or rows[v][u] != -1:
            raise NotATournament(f"pair {{{u},{v}}} carries more than one arc")
        rows[u][v], rows[v][u] = 0, 1
    for u in range(n):
        for v in range(u + 1, n):
            if rows[u][v] == -1:
                raise NotATournament(f"pair {{{u},{v}}} carries no arc")
    cat = ColorCatalog((Color("fwd", 1), Color("bwd", 0))) if n > 1 else ColorCatalog(())
    return TwoStructure(cat, rows)


def linear_order(n: int) -> TwoStructure:
    """The transitive tournament ``0 < 1 < ... < n-1``."""
    return from_tournament(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
