"""Abelian sandpiles, spanning trees and tree statistics on permutation graphs."""

from .permcore import Permutation, PermutationGraph, build_perm_graph, is_indecomposable
from .sandpile import Configuration, OrderedPartition, enumerate_recurrent, is_recurrent, level_polynomial
from .trees import LabeledTree, RootedTree, enumerate_spanning_trees, root_at, spanning_tree_count

__all__ = [
    "Permutation", "PermutationGraph", "build_perm_graph", "is_indecomposable",
    "Configuration", "OrderedPartition", "enumerate_recurrent", "is_recurrent", "level_polynomial",
    "LabeledTree", "RootedTree", "enumerate_spanning_trees", "root_at", "spanning_tree_count",
]
