"""Finite 2-structures, their clan decompositions and primitive extensions."""

from twostruct.core import (
    Color,
    ColorCatalog,
    TwoStructure,
    build_structure,
    from_graph,
    from_tournament,
    linear_order,
    meet,
    star,
    substructure,
)
from twostruct.clans import clan_closure, enumerate_clans, is_clan, is_primitive
from twostruct.decomposition import (
    clan_tree,
    completeness_profile,
    gallai_family,
    inclusive_clans,
    maximal_families,
    prime_clans,
    prime_envelope,
)

__all__ = [
    "Color",
    "ColorCatalog",
    "TwoStructure",
    "build_structure",
    "clan_closure",
    "clan_tree",
    "completeness_profile",
    "enumerate_clans",
    "from_graph",
    "from_tournament",
    "gallai_family",
    "inclusive_clans",
    "is_clan",
    "is_primitive",
    "linear_order",
    "maximal_families",
    "meet",
    "prime_clans",
    "prime_envelope",
    "star",
    "substructure",
]
