"""Thompson-group tree pairs, Thompson permutations and the links they define."""

from .trees import (LEAF, PLMap, TreePair, TreeSyntaxError, common_refinement, compose, graft,
                    inflate, inverse, iota, leaf_count, multiply, parse_tree, pl_map, reduce,
                    serialize)
from .tangles import (NotTangled, Permutation, TangledMatching, ThompsonData, component_count,
                      crossing_count, matching_to_tree, tangled_matching, thompson_permutation,
                      validate_tangled)
from .linkdiag import (LinkDiagram, build_diagram, gauss_code, pd_code, render,
                       trace_components)
from .census import (enumerate_trees, random_tree, random_walk, tree_count,
                     verify_characterization)

__version__ = "0.1.0"

__all__ = [
    "LEAF", "PLMap", "TreePair", "TreeSyntaxError", "common_refinement", "compose", "graft",
    "inflate", "inverse", "iota", "leaf_count", "multiply", "parse_tree", "pl_map", "reduce",
    "serialize",
    "NotTangled", "Permutation", "TangledMatching", "ThompsonData", "component_count",
    "crossing_count", "matching_to_tree", "tangled_matching", "thompson_permutation",
    "validate_tangled",
    "LinkDiagram", "build_diagram", "gauss_code", "pd_code", "render", "trace_components",
    "enumerate_trees", "random_tree", "random_walk", "tree_count", "verify_characterization",
]
