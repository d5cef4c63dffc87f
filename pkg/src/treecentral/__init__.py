"""Central parts of trees: center, centroid, subtree core and the
characteristic set, with exhaustive and closed-form distance bounds."""

from __future__ import annotations

__version__ = "0.1.0"

from .centers import (
    center,
    centroid,
    median,
    subtree_core,
    subtree_core_certificate,
    subtree_counts,
    telephone_center,
)
from .config import Config
from .enumerate import canonical_form, free_trees, free_trees_with_diameter, tree_from_canonical
from .extremal import CenterKind, delta_brute, delta_formula, g0, pair_distances
from .spectral import EDGE, VERTEX, CharacteristicSet, characteristic_set, fiedler, perron_components
from .tree import (
    CentralSet,
    Tree,
    build_double_broom,
    build_from_edges,
    build_path,
    build_path_star,
    build_star,
    build_tnk,
    central_distance,
    parse_edge_list,
)

__all__ = [
    "CenterKind", "CentralSet", "CharacteristicSet", "Config", "EDGE", "Tree", "VERTEX",
    "build_double_broom", "build_from_edges", "build_path", "build_path_star", "build_star",
    "build_tnk", "canonical_form", "center", "central_distance", "centroid", "characteristic_set",
    "delta_brute", "delta_formula", "fiedler", "free_trees", "free_trees_with_diameter", "g0",
    "median", "pair_distances", "parse_edge_list", "perron_components", "subtree_core",
    "subtree_core_certificate", "subtree_counts", "telephone_center", "tree_from_canonical",
]
