"""Algorithm selection."""

from __future__ import annotations

import math
from dataclasses import replace

from ..enumeration import count_bound
from ..errors import ResourceLimitError
from ..graph import FgppInstance, ProblemSpec, SolveResult
from ..separation import estimated_size
from .config import SolverConfig
from .degrading import deg_alg
from .general import fgpp_alg
from .maxcut import is_max_cut, max_cut_alg
from .oracle import brute_force
from .positive import _round, fast_p_alg, fast_p_strength, p_alg


# below this estimate a coloring algorithm is used whenever its class allows
SMALL_WORK = 10**5


def oracle(instance: FgppInstance, spec: ProblemSpec, config: SolverConfig = SolverConfig()) -> SolveResult:
    return brute_force(instance, spec, config.max_work)


ALGORITHMS = {
    "fgpp": fgpp_alg,
    "deg": deg_alg,
    "maxcut": max_cut_alg,
    "palg": p_alg,
    "fastpalg": fast_p_alg,
    "oracle": oracle,
}


def coloring_domain(name: str, instance: FgppInstance, spec: ProblemSpec, config: SolverConfig):
    """``(domain size, strength)`` of the universal set a coloring algorithm would build."""
    g, k, p = instance.graph, instance.k, instance.p
    if name == "maxcut":
        n = g.n - len(g.isolated())
        return n, min(n, min(k, max(0, n - k)) + max(0, math.ceil(p)))
    if name == "palg":
        return g.n, min(g.n, k + max(0, _round(p / spec.alpha2, config.rounding)))
    x = fast_p_strength(spec, k, p)
    return g.m, max(0, min(g.m, _round(x, config.rounding)))


def estimate(name: str, instance: FgppInstance, spec: ProblemSpec, config: SolverConfig) -> int:
    """Rough elementary-step count for a coloring algorithm: family size times instance size,
    plus the coverage check when a verified family has to be built."""
    N, t = coloring_domain(name, instance, spec, config)
    size = estimated_size(N, t, config.us_mode, config.error_prob)
    work = size * (instance.graph.n + instance.graph.m + 1)
    if config.us_mode == "verified" and 0 < t < N and size < 2**N:
        work += size * math.comb(N, t)
    return work


def general_estimate(instance: FgppInstance, spec: ProblemSpec) -> int:
    """Rough step count for ``fgpp_alg``: candidate sets times stored unions (exact cover DP),
    or the ``C(n, k)`` search space of the branch and bound for degrading specs."""
    g, k = instance.graph, min(instance.k, instance.graph.n)
    if spec.is_degrading:
        return math.comb(g.n, k) * (g.n + g.m + 1)
    sets = sum(min(math.comb(g.n, i), count_bound(g, i) if g.max_degree >= 2 else g.n) for i in range(1, k + 1))
    unions = sum(math.comb(g.n, j) for j in range(k + 1))
    return sets * unions


def choose(instance: FgppInstance, spec: ProblemSpec, config: SolverConfig) -> str:
    if config.algorithm != "auto":
        return config.algorithm
    if instance.k == 0 or instance.k > instance.graph.n:
        return "fgpp"

    general = max(SMALL_WORK, general_estimate(instance, spec))

    def cheap(name):
        return estimate(name, instance, spec, config) <= min(config.route_work, general)

    if is_max_cut(spec):
        g, k = instance.graph, instance.k
        n = g.n - len(g.isolated())
        if instance.p < min(k, n - k) or cheap("maxcut"):
            return "maxcut"
        return "fgpp"
    if spec.is_nondegrading_positive_min and spec.alpha1 > 0:
        if instance.p < 0 or cheap("fastpalg"):
            return "fastpalg"
        if cheap("palg"):
            return "palg"
        return "fgpp"
    if spec.is_positive_min:
        if instance.p < 0 or cheap("palg"):
            return "palg"
        return "fgpp"
    return "fgpp"


def auto_solve(instance: FgppInstance, spec: ProblemSpec, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Run ``config.algorithm``; ``auto`` picks one by spec class and estimated work.

    With ``oracle_fallback`` a resource-cap failure is retried by brute force
    when ``C(n, k)`` fits the work cap.
    """
    name = choose(instance, spec, config)
    try:
        result = ALGORITHMS[name](instance, spec, config)
    except ResourceLimitError:
        if not config.oracle_fallback or name == "oracle":
            raise
        if math.comb(instance.graph.n, min(instance.k, instance.graph.n)) > config.max_work:
            raise
        result = brute_force(instance, spec, config.max_work)
        return replace(result, stats=dict(result.stats, fallback_from=name))
    return result
