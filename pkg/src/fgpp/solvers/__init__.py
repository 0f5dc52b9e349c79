"""Decision procedures for FGPP instances."""

from .config import ALGORITHM_NAMES, SolverConfig
from .degrading import deg_alg
from .dispatch import ALGORITHMS, auto_solve, choose, estimate
from .general import fgpp_alg
from .maxcut import balanced_cut_witness, max_cut_alg, solve_nc_max_cut
from .oracle import brute_force
from .positive import (ComponentList, DpMatrix, fast_p_alg, fast_p_strength, fill_dp, p_alg, red_components,
                       red_edge_component_list, solve_ecp, solve_ncp)

__all__ = [
    "ALGORITHMS", "ALGORITHM_NAMES", "ComponentList", "DpMatrix", "SolverConfig", "auto_solve",
    "balanced_cut_witness", "brute_force", "choose", "deg_alg", "estimate", "fast_p_alg", "fast_p_strength",
    "fgpp_alg", "fill_dp", "max_cut_alg", "p_alg", "red_components", "red_edge_component_list",
    "solve_ecp", "solve_nc_max_cut", "solve_ncp",
]
