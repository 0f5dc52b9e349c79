"""Exact decision and witness solvers for fixed-cardinality graph partitioning problems.

An instance asks for ``k`` vertices ``X`` with
``alpha1 * |E(X)| + alpha2 * |E(X, V - X)|`` at most (min) or at least (max)
``p``.
"""

from .enumeration import ConnectedFamilies, count_bound, enumerate_connected, reduce_to_wec
from .errors import ContractError, FgppError, InputError, ParseError, ResourceLimitError, WitnessError
from .graph import (PROBLEMS, Classification, Color, FgppInstance, Graph, Objective, ProblemSpec, SolveResult,
                    builtin_problem, classify, format_graph, parse_graph, val, val_star)
from .repfam import WecInstance, WeightedFamily, decrease, rep_alg, verify_representative
from .separation import (UniversalConfig, UniversalSetFamily, build_universal_set, color_edges, color_nodes,
                         verify_universal)
from .solvers import (SolverConfig, auto_solve, brute_force, deg_alg, fast_p_alg, fgpp_alg, max_cut_alg, p_alg,
                      solve_ecp, solve_nc_max_cut, solve_ncp)
from .wec import brute_wec, solve_wec

__version__ = "0.1.0"

__all__ = [
    "PROBLEMS", "Classification", "Color", "ConnectedFamilies", "ContractError", "FgppError", "FgppInstance",
    "Graph", "InputError", "Objective", "ParseError", "ProblemSpec", "ResourceLimitError", "SolveResult",
    "SolverConfig", "UniversalConfig", "UniversalSetFamily", "WecInstance", "WeightedFamily", "WitnessError",
    "auto_solve", "brute_force", "brute_wec", "build_universal_set", "builtin_problem", "classify",
    "color_edges", "color_nodes", "count_bound", "decrease", "deg_alg", "enumerate_connected", "fast_p_alg",
    "fgpp_alg", "format_graph", "max_cut_alg", "p_alg", "parse_graph", "reduce_to_wec", "rep_alg",
    "solve_ecp", "solve_nc_max_cut", "solve_ncp", "solve_wec", "val", "val_star", "verify_representative",
    "verify_universal",
]
