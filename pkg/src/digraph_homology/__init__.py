"""Exact path homology of stratified digraphs and DAGs."""

from .chains import Chain, boundary, cross_section, enumerate_allowed_paths, is_cycle, join, support
from .general import HomologyResult, betti, omega_basis
from .graph import (
    Digraph,
    StratifiedDigraph,
    extract_longest_subgraph,
    from_layers,
    infer_layers,
    longest_path_length,
    topological_order,
    trim_connected_count,
    trim_removable,
    validate_stratified,
    weakly_connected_components,
)
from .linalg import RationalMatrix, null_space_basis, rank, solve_all
from .persistence import PersistenceCurve, persistence_curve
from .recursive import betti_profile, full_depth, maximal

__version__ = "0.1.0"
