"""Clan predicates, clan closure, primitivity and brute-force clan enumeration."""

from __future__ import annotations

from typing import Iterable, List, Sequence

from twostruct.core import TwoStructure, VertexSet, family_key, from_mask, to_mask, vset
from twostruct.errors import TooLarge, VertexSetMismatch

DEFAULT_ENUMERATION_LIMIT = 16


def _check_vertices(sigma: TwoStructure, vertices: Iterable[int]) -> VertexSet:
    vs = vset(vertices)
    if vs and (vs[0] < 0 or vs[-1] >= sigma.n):
        raise VertexSetMismatch(f"{vs} is not a subset of 0..{sigma.n - 1}")
    return vs


def _splitters(out_m, in_m, mat, n: int, mask: int) -> int:
    """Vertices outside ``mask`` that distinguish two members of ``mask``."""
    r = (mask & -mask).bit_length() - 1
    grow = 0
    outside = ((1 << n) - 1) & ~mask
    while outside:
        low = outside & -outside
        x = low.bit_length() - 1
        outside ^= low
        if mask & ~in_m[x][mat[r][x]] or mask & ~out_m[x][mat[x][r]]:
            grow |= low
    return grow


def closure_mask(sigma: TwoStructure, mask: int) -> int:
    if not mask:
        return 0
    out_m, in_m = sigma.masks
    while True:
        grow = _splitters(out_m, in_m, sigma.matrix, sigma.n, mask)
        if not grow:
            return mask
        mask |= grow


def is_clan_mask(sigma: TwoStructure, mask: int) -> bool:
    if mask & (mask - 1) == 0:
        return True
    out_m, in_m = sigma.masks
    return _splitters(out_m, in_m, sigma.matrix, sigma.n, mask) == 0


def is_clan(sigma: TwoStructure, vertices: Iterable[int]) -> bool:
    """Every outside vertex sees all members the same way, in both directions."""
    return is_clan_mask(sigma, to_mask(_check_vertices(sigma, vertices)))


def clan_closure(sigma: TwoStructure, vertices: Iterable[int]) -> VertexSet:
    """Least clan containing ``vertices``."""
    return from_mask(closure_mask(sigma, to_mask(_check_vertices(sigma, vertices))))


def is_primitive(sigma: TwoStructure) -> bool:
    n = sigma.n
    if n < 3:
        return False
    full = (1 << n) - 1
    for u in range(n):
        for v in range(u + 1, n):
            if closure_mask(sigma, (1 << u) | (1 << v)) != full:
                return False
    return True


def matrix_is_primitive(mat: Sequence[Sequence[int]], ncolors: int) -> bool:
    """Primitivity of a raw color matrix, skipping structure validation.

    Used on hot paths (oracle enumeration, candidate extensions)."""
    n = len(mat)
    if n < 3:
        return False
    out_m = [[0] * ncolors for _ in range(n)]
    in_m = [[0] * ncolors for _ in range(n)]
    for x in range(n):
        row = mat[x]
        ox = out_m[x]
        for y in range(n):
            if x != y:
                ox[row[y]] |= 1 << y
                in_m[y][row[y]] |= 1 << x
    full = (1 << n) - 1
    for u in range(n):
        for v in range(u + 1, n):
            mask = (1 << u) | (1 << v)
            while True:
                grow = _splitters(out_m, in_m, mat, n, mask)
                if not grow:
                    break
                mask |= grow
            if mask != full:
                return False
    return True


def enumerate_clans(sigma: TwoStructure, min_size: int = 0,
                    limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[VertexSet]:
    """All clans of at least ``min_size`` vertices, ordered by size then lexicographically.

    Exhaustive over subsets, so guarded by ``limit`` on the vertex count."""
    n = sigma.n
    if n > limit:
        raise TooLarge(f"clan enumeration over {n} vertices exceeds the limit {limit}")
    out = []
    for mask in range(1 << n):
        if bin(mask).count("1") >= min_size and is_clan_mask(sigma, mask):
            out.append(from_mask(mask))
    out.sort(key=family_key)
    return out


def overlaps(a: int, b: int) -> bool:
    return bool(a & b) and bool(a & ~b) and bool(b & ~a)
