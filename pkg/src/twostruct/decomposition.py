"""Prime clans, the clan tree and the families derived from it.

Prime clans are computed without enumerating all clans: a clan is prime
exactly when it overlaps none of the pair closures, and every prime clan of
size at least two is either a pair closure or the union of a connected
component of the overlap graph of pair closures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from twostruct.clans import closure_mask, enumerate_clans, is_clan_mask, overlaps
from twostruct.core import (
    Color,
    ColorCatalog,
    ColorId,
    TwoStructure,
    VertexSet,
    family_key,
    from_mask,
    substructure,
    to_mask,
    vset,
)
from twostruct.errors import (
    EmptySet,
    InternalMismatch,
    NotAFactorization,
    NotReversible,
    TooSmall,
    VertexSetMismatch,
)

COMPLETE = "complete"
LINEAR = "linear"
PRIMITIVE = "primitive"


@dataclass(frozen=True)
class Label:
    kind: str
    # the color between blocks: the symmetric color of a complete node, or the
    # color lambda with Y < Z iff (Y, Z) = lambda for a linear node
    color: Optional[ColorId] = None


@dataclass(frozen=True)
class ClanTree:
    vertices: VertexSet
    label: Optional[Label] = None  # None on leaves
    # linear nodes keep their children in block order, other nodes by least vertex
    children: Tuple["ClanTree", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def nodes(self):
        yield self
        for ch in self.children:
            yield from ch.nodes()

    def to_json(self, sigma: Optional[TwoStructure] = None) -> dict:
        label = None
        if self.label is not None:
            color = self.label.color
            if color is not None and sigma is not None:
                color = sigma.color_name(color)
            label = {"kind": self.label.kind, "color": color}
        return {
            "vertices": list(self.vertices),
            "label": label,
            "children": [c.to_json(sigma) for c in self.children],
        }


def _cached(sigma: TwoStructure, key: str, build):
    store = sigma.__dict__.setdefault("_twostruct_cache", {})
    if key not in store:
        store[key] = build()
    return store[key]


def _pair_closures(sigma: TwoStructure) -> List[int]:
    n = sigma.n
    return sorted({closure_mask(sigma, (1 << u) | (1 << v))
                   for u in range(n) for v in range(u + 1, n)})


def _prime_masks(sigma: TwoStructure) -> List[int]:
    n = sigma.n
    full = (1 << n) - 1
    closures = _pair_closures(sigma)
    parent = list(range(len(closures)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(closures)):
        for j in range(i + 1, len(closures)):
            if overlaps(closures[i], closures[j]):
                parent[find(i)] = find(j)
    unions: Dict[int, int] = {}
    for i, c in enumerate(closures):
        r = find(i)
        unions[r] = unions.get(r, 0) | c
    candidates = set(closures) | set(unions.values()) | {full} | {1 << v for v in range(n)}
    prime = [m for m in candidates if not any(overlaps(m, c) for c in closures)]
    prime.append(0)
    return sorted(prime, key=lambda m: family_key(from_mask(m)))


def prime_clans(sigma: TwoStructure) -> List[VertexSet]:
    """All prime clans, including the empty set, singletons and the full set."""
    return _cached(sigma, "prime", lambda: [from_mask(m) for m in _prime_masks(sigma)])


def _quotient_rows(sigma: TwoStructure, blocks: Sequence[VertexSet]):
    reps = [b[0] for b in blocks]
    return [[sigma.matrix[a][b] if i != j else -1 for j, b in enumerate(reps)]
            for i, a in enumerate(reps)]


def _label(sigma: TwoStructure, vertices: VertexSet, blocks: List[VertexSet]):
    """Label of a node and its children put in the stored order."""
    q = _quotient_rows(sigma, blocks)
    k = len(blocks)
    colors = {q[i][j] for i in range(k) for j in range(k) if i != j}
    if len(colors) == 1:
        return Label(COMPLETE, colors.pop()), blocks
    if len(colors) == 2:
        e, f = sorted(colors)
        ok = all((q[i][j] == e) != (q[j][i] == e) and {q[i][j], q[j][i]} == {e, f}
                 for i in range(k) for j in range(i + 1, k))
        if ok:
            wins = [sum(1 for j in range(k) if j != i and q[i][j] == e) for i in range(k)]
            if sorted(wins) == list(range(k)):
                # e-order: the block with k-1 wins comes first
                order = sorted(range(k), key=lambda i: -wins[i])
                first = next(i for i in range(k) if vertices[0] in blocks[i])
                if order[0] == first:
                    lam = e
                elif order[-1] == first:
                    lam = f
                else:
                    lam = min(e, f)
                if lam == f:
                    order.reverse()
                return Label(LINEAR, lam), [blocks[i] for i in order]
    return Label(PRIMITIVE), blocks


def _build_tree(sigma: TwoStructure) -> ClanTree:
    masks = [m for m in _prime_masks(sigma) if m]
    sets = {m: from_mask(m) for m in masks}
    children: Dict[int, List[int]] = {m: [] for m in masks}
    by_size = sorted(masks, key=lambda m: bin(m).count("1"))
    for i, m in enumerate(by_size[:-1]):
        parent = next(p for p in by_size[i + 1:] if p & m == m and p != m)
        children[parent].append(m)

    def build(m: int) -> ClanTree:
        if not children[m]:
            return ClanTree(sets[m])
        blocks = sorted((sets[c] for c in children[m]), key=lambda b: b[0])
        label, ordered = _label(sigma, sets[m], blocks)
        sub = {sets[c]: c for c in children[m]}
        return ClanTree(sets[m], label, tuple(build(sub[b]) for b in ordered))

    return build(by_size[-1])


def clan_tree(sigma: TwoStructure) -> ClanTree:
    return _cached(sigma, "tree", lambda: _build_tree(sigma))


def tree_nodes(sigma: TwoStructure) -> Dict[VertexSet, ClanTree]:
    return _cached(sigma, "nodes", lambda: {t.vertices: t for t in clan_tree(sigma).nodes()})


def _parents(sigma: TwoStructure) -> Dict[VertexSet, ClanTree]:
    def build():
        out = {}
        for t in clan_tree(sigma).nodes():
            for ch in t.children:
                out[ch.vertices] = t
        return out

    return _cached(sigma, "parents", build)


def gallai_family(sigma: TwoStructure) -> List[VertexSet]:
    """Maximal proper prime clans; they partition the vertex set."""
    if sigma.n < 2:
        raise TooSmall("the Gallai family needs at least two vertices")
    return sorted((c.vertices for c in clan_tree(sigma).children), key=lambda b: b[0])


def quotient(sigma: TwoStructure, blocks: Sequence[Sequence[int]]) -> TwoStructure:
    """Quotient by a partition into clans, blocks ordered by their least vertex."""
    blocks = sorted((vset(b) for b in blocks), key=lambda b: b[:1])
    seen = set()
    for b in blocks:
        if not b:
            raise NotAFactorization("empty block")
        if seen & set(b):
            raise NotAFactorization("blocks overlap")
        seen |= set(b)
        if not is_clan_mask(sigma, to_mask(b)):
            raise NotAFactorization(f"{b} is not a clan")
    if seen != set(range(sigma.n)):
        raise NotAFactorization("blocks do not cover the vertex set")
    return _quotient_structure(sigma, blocks)


def _quotient_structure(sigma: TwoStructure, blocks: Sequence[VertexSet]) -> TwoStructure:
    rows = _quotient_rows(sigma, blocks)
    used = sorted({c for r in rows for c in r if c >= 0})
    cmap = {c: i for i, c in enumerate(used)}
    colors = []
    for c in used:
        col = sigma.catalog.colors[c]
        partner = cmap.get(col.partner) if col.partner is not None else None
        colors.append(Color(col.name, partner))
    colors = [col if col.partner is None or colors[col.partner].partner == i else Color(col.name)
              for i, col in enumerate(colors)]
    return TwoStructure(ColorCatalog(tuple(colors)),
                        [[cmap[c] if c >= 0 else -1 for c in r] for r in rows])


def prime_envelope(sigma: TwoStructure, vertices) -> Tuple[VertexSet, Optional[VertexSet]]:
    """Least prime clan containing ``vertices`` and least one containing it strictly.

    The second item is None when ``vertices`` is the whole vertex set."""
    w = vset(vertices)
    if not w:
        raise EmptySet("prime envelopes are taken of nonempty sets")
    if w[0] < 0 or w[-1] >= sigma.n:
        raise VertexSetMismatch(f"{w} is not a subset of 0..{sigma.n - 1}")
    wm = to_mask(w)
    tilde = hat = None
    for m in _cached(sigma, "prime_masks", lambda: _prime_masks(sigma)):
        if m & wm == wm:
            if tilde is None:
                tilde = from_mask(m)
            if m != wm:
                hat = from_mask(m)
                break
    return tilde, hat


@dataclass
class Families:
    complete: List[VertexSet]
    linear: List[VertexSet]
    primitive: List[VertexSet]
    classes: List[VertexSet]  # every class of the equivalence, singletons included
    upsilon: VertexSet
    upsilon_down: VertexSet
    complete_color: Dict[VertexSet, ColorId] = field(default_factory=dict)
    # vertices of a linear member in block order, with the color lambda
    linear_order: Dict[VertexSet, Tuple[VertexSet, ColorId]] = field(default_factory=dict)

    @property
    def members(self) -> List[VertexSet]:
        return sorted(self.complete + self.linear + self.primitive, key=family_key)

    @property
    def covered(self) -> VertexSet:
        return vset(v for m in self.members for v in m)

    def to_json(self, sigma: TwoStructure) -> dict:
        return {
            "complete": [list(c) for c in self.complete],
            "linear": [list(c) for c in self.linear],
            "primitive": [list(c) for c in self.primitive],
            "classes": [list(c) for c in self.classes],
            "upsilon": list(self.upsilon),
            "upsilon_down": list(self.upsilon_down),
        }


def _families_from_tree(sigma: TwoStructure):
    comp, lin, prim = [], [], []
    comp_color, lin_order = {}, {}
    for t in clan_tree(sigma).nodes():
        if t.is_leaf:
            continue
        single = [ch.vertices[0] for ch in t.children if len(ch.vertices) == 1]
        if t.label.kind == COMPLETE and len(single) >= 2:
            comp.append(vset(single))
            comp_color[vset(single)] = t.label.color
        elif t.label.kind == LINEAR:
            run: List[int] = []
            for ch in list(t.children) + [None]:
                if ch is not None and len(ch.vertices) == 1:
                    run.append(ch.vertices[0])
                    continue
                if len(run) >= 2:
                    lin.append(vset(run))
                    lin_order[vset(run)] = (tuple(run), t.label.color)
                run = []
        elif t.label.kind == PRIMITIVE and len(single) == len(t.children):
            prim.append(t.vertices)
    return (sorted(comp, key=family_key), sorted(lin, key=family_key),
            sorted(prim, key=family_key), comp_color, lin_order)


def _equivalence_classes(sigma: TwoStructure) -> List[VertexSet]:
    """Classes computed from the definition: same parent node, and some clan of the
    parent's quotient contains both singletons and only singleton blocks."""
    n = sigma.n
    parents = _parents(sigma)
    cls = list(range(n))

    def find(i):
        while cls[i] != i:
            cls[i] = cls[cls[i]]
            i = cls[i]
        return i

    quotients = {}
    for v in range(n):
        for w in range(v + 1, n):
            x = parents.get((v,))
            if x is None or parents.get((w,)) is not x:
                continue
            if x.vertices not in quotients:
                blocks = [c.vertices for c in x.children]
                quotients[x.vertices] = (blocks, _quotient_structure(sigma, blocks))
            blocks, q = quotients[x.vertices]
            iv, iw = blocks.index((v,)), blocks.index((w,))
            hull = from_mask(closure_mask(q, (1 << iv) | (1 << iw)))
            if all(len(blocks[i]) == 1 for i in hull):
                cls[find(v)] = find(w)
    groups: Dict[int, List[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted((vset(g) for g in groups.values()), key=family_key)


def maximal_families(sigma: TwoStructure) -> Families:
    def build():
        comp, lin, prim, comp_color, lin_order = _families_from_tree(sigma)
        classes = _equivalence_classes(sigma)
        big = [c for c in classes if len(c) >= 2]
        if sorted(big) != sorted(comp + lin + prim):
            raise InternalMismatch(
                f"equivalence classes {big} differ from the tree families {comp + lin + prim}"
            )
        upsilon = vset(c[0] for c in classes if len(c) == 1)
        down = []
        if sigma.n >= 2:
            down = [v for v in upsilon if prime_envelope(sigma, [v])[1] == (v,)]
        return Families(comp, lin, prim, classes, upsilon, vset(down), comp_color, lin_order)

    return _cached(sigma, "families", build)


@dataclass
class CompletenessProfile:
    c: int
    isolated: Dict[ColorId, VertexSet]  # symmetric color -> vertices seeing every other vertex in it


def completeness_profile(sigma: TwoStructure) -> CompletenessProfile:
    rev = sigma.reversibility
    if not rev.reversible:
        raise NotReversible("the completeness profile needs a reversible structure")
    fam = maximal_families(sigma)
    c = max((len(m) for m in fam.complete), default=1)
    out_m, _ = sigma.masks
    full = (1 << sigma.n) - 1
    isolated = {}
    for e in rev.symmetric:
        isolated[e] = vset(v for v in range(sigma.n) if out_m[v][e] == full & ~(1 << v))
    return CompletenessProfile(c, isolated)


def inclusive_clans(sigma: TwoStructure, limit: int = 16) -> List[VertexSet]:
    """Clans containing every member of the three families and meeting every prime clan
    of size at least two. Produced by filtering the full clan enumeration."""
    covered = to_mask(maximal_families(sigma).covered)
    primes = [to_mask(p) for p in prime_clans(sigma) if len(p) >= 2]
    out = []
    for c in enumerate_clans(sigma, 1, limit):
        m = to_mask(c)
        if m & covered == covered and all(m & p for p in primes):
            out.append(c)
    return out
