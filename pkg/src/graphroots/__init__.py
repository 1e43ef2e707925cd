"""Decide whether a graph is the square of a graph from a restricted family."""

from .families import FAMILY_NAMES, FamilyConfig, builtin_families, get_family, is_member
from .graph import Graph, kth_power, square
from .oracle import enumerate_minimal_roots, has_family_root_bruteforce, is_square_root
from .reduction import LabeledInstance, reduce_instance
from .search import SolveOutcome, solve
from .width import Decomposition, exact_width, validate_decomposition

__version__ = "0.1.0"

__all__ = [
    "FAMILY_NAMES",
    "Decomposition",
    "FamilyConfig",
    "Graph",
    "LabeledInstance",
    "SolveOutcome",
    "builtin_families",
    "enumerate_minimal_roots",
    "exact_width",
    "get_family",
    "has_family_root_bruteforce",
    "is_member",
    "is_square_root",
    "kth_power",
    "reduce_instance",
    "solve",
    "square",
    "validate_decomposition",
]
