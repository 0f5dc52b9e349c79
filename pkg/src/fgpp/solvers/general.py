"""The general algorithm: degrading specs go to branch-and-bound, the rest through exact cover."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..enumeration import reduce_to_wec
from ..graph import FgppInstance, Graph, ProblemSpec, SolveResult, decide_empty
from ..repfam import decrease
from ..wec import wec_optimum
from .config import SolverConfig
from .degrading import deg_alg


@lru_cache(maxsize=4096)
def _wec_best(graph: Graph, k: int, spec: ProblemSpec, mode: str, threshold: int, seed: int,
              eps: Fraction, max_work: int):
    wec = reduce_to_wec(FgppInstance(graph, k, Fraction(0)), spec)
    reduced = decrease(wec, mode, threshold, seed, eps, max_work)
    value, union, parts, stats = wec_optimum(reduced)
    stats = dict(stats, connected_sets=len(wec.family), decreased_sets=len(reduced.family))
    return value, union, parts, stats


def fgpp_alg(instance: FgppInstance, spec: ProblemSpec, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Decide any FGPP instance exactly.

    Non-degrading specs are reduced to exact cover over connected sets of at
    most ``k`` vertices; the union of the chosen sets is then a ``k``-set
    whose value is at least as good as the cover weight.
    """
    g, k = instance.graph, instance.k
    if k > g.n:
        return SolveResult.rejected("fgpp", {})
    if k == 0:
        return decide_empty(instance, spec, "fgpp")
    if spec.is_degrading:
        inner = deg_alg(instance, spec, config)
        stats = dict(inner.stats, route="deg")
        if inner.decision:
            return SolveResult.accepted(instance, spec, inner.witness, "fgpp", stats)
        return SolveResult.rejected("fgpp", stats, inner.value)
    value, union, parts, stats = _wec_best(g, k, spec, config.decrease_mode, config.decrease_threshold,
                                           config.seed, config.error_prob, config.max_work)
    stats = dict(stats, route="wec")
    if value is None or not spec.meets(value, instance.p):
        return SolveResult.rejected("fgpp", stats, value)
    return SolveResult.accepted(instance, spec, union, "fgpp", stats, parts)
