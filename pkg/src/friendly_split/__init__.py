"""A/B/C vertex decompositions by exact energy descent on the circle."""

from .circle import Configuration, energy, expected_cut
from .engine import Decomposition, DescentTrace, EngineFault, decompose, folklore_partition
from .graph import Graph, generate, parse_dimacs, parse_edge_list
from .verifier import check_properties, judicious_bounds

__all__ = [
    "Configuration",
    "Decomposition",
    "DescentTrace",
    "EngineFault",
    "Graph",
    "check_properties",
    "decompose",
    "energy",
    "expected_cut",
    "folklore_partition",
    "generate",
    "judicious_bounds",
    "parse_dimacs",
    "parse_edge_list",
]
