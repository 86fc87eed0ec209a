"""Traverses of the clan tree and the dense bicoloration they induce."""

from __future__ import annotations

from typing import Dict, List, Tuple

from twostruct.core import TwoStructure
from twostruct.decomposition import LINEAR, ClanTree, clan_tree, prime_clans
from twostruct.errors import InternalMismatch

Traverse = Tuple[int, ...]


def _flatten(node: ClanTree) -> List[int]:
    if node.is_leaf:
        return list(node.vertices)
    out = []
    for ch in node.children:
        out.extend(_flatten(ch))
    return out


def check_traverse(sigma: TwoStructure, order: Traverse) -> None:
    """Raise InternalMismatch unless every prime clan is an interval of ``order`` and
    the blocks of every linear node appear in block order."""
    pos = {v: i for i, v in enumerate(order)}
    if sorted(pos) != list(range(sigma.n)):
        raise InternalMismatch(f"{order} is not a permutation of the vertices")
    for p in prime_clans(sigma):
        if p:
            idx = sorted(pos[v] for v in p)
            if idx[-1] - idx[0] + 1 != len(idx):
                raise InternalMismatch(f"prime clan {p} is not an interval of {order}")
    for node in clan_tree(sigma).nodes():
        if node.label is not None and node.label.kind == LINEAR:
            firsts = [min(pos[v] for v in ch.vertices) for ch in node.children]
            if firsts != sorted(firsts):
                raise InternalMismatch(f"blocks of {node.vertices} are out of order in {order}")


def build_traverse(sigma: TwoStructure) -> Traverse:
    """Concatenate children recursively: block order at linear nodes, least vertex elsewhere."""
    order = tuple(_flatten(clan_tree(sigma)))
    check_traverse(sigma, order)
    return order


def dense_bicoloration(order: Traverse) -> Dict[int, int]:
    """Parity of each vertex's position."""
    return {v: i % 2 for i, v in enumerate(order)}
