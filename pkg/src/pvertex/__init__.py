"""Exact decision procedures and witness matrices for graphs whose vertices
can all be made P-vertices by a nonsingular symmetric matrix with the graph's
off-diagonal pattern."""
from .decide import Certificate, Obstruction, decide, decide_tree_crosscheck
from .families import FamilySpec, generate, generalized_threaded_union, threaded_union
from .graph import Bipartition, Graph, bipartition
from .linalg import RatMatrix, Verification, det, inverse, verify_property_P
from .matching import HallViolator, Matching, hall_violator, maximum_matching
from .numeric import NumericWitness, SearchConfig, gradient_check, rationalize, search_witness
from .structure import ReductionTrace, antenna_vertex, pendant_reduce, triangular_ordering
from .witness import (
    ThreadSpec,
    Witness,
    bipartite_pm_witness,
    close_triangle,
    complete_witness,
    generalized_thread_over,
    thread_bridge,
    thread_over,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition", "Certificate", "FamilySpec", "Graph", "HallViolator", "Matching",
    "NumericWitness", "Obstruction", "RatMatrix", "ReductionTrace", "SearchConfig",
    "ThreadSpec", "Verification", "Witness", "antenna_vertex", "bipartite_pm_witness",
    "bipartition", "close_triangle", "complete_witness", "decide", "decide_tree_crosscheck",
    "det", "generalized_thread_over", "generalized_threaded_union", "generate",
    "gradient_check", "hall_violator", "inverse", "maximum_matching", "pendant_reduce",
    "rationalize", "search_witness", "thread_bridge", "thread_over", "threaded_union",
    "triangular_ordering", "verify_property_P",
]
