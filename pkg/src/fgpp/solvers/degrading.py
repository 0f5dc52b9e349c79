"""Exact branch-and-bound for degrading FGPPs.

Work in maximisation form: a min spec is handled by negating both
coefficients.  Adding ``v`` to ``X`` changes the value by
``b2 * deg(v) + (b1 - 2 * b2) * e(v, X)``.  For degrading specs
``b1 - 2 * b2 <= 0``, so a vertex's gain can only shrink as ``X`` grows and
the sum of the largest current gains bounds every completion.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache

from ..errors import ContractError, ResourceLimitError
from ..graph import FgppInstance, Graph, ProblemSpec, SolveResult, decide_empty, popcount, vertices_of
from .config import SolverConfig


@lru_cache(maxsize=4096)
def _optimum(graph: Graph, k: int, b1: int, b2: int, max_work: int) -> tuple[int, int, int]:
    """``(best value, best mask, nodes visited)`` over all ``k``-subsets, maximisation form."""
    n = graph.n
    nm = graph.neighbor_masks
    deg = [graph.degree(v) for v in range(n)]
    slope = b1 - 2 * b2
    order = sorted(range(n), key=lambda v: (-b2 * deg[v], v))

    # greedy incumbent: repeatedly take the largest gain, lowest id on ties
    mask, cur = 0, 0
    for _ in range(k):
        v = max((u for u in range(n) if not mask >> u & 1),
                key=lambda u: (b2 * deg[u] + slope * popcount(nm[u] & mask), -u))
        cur += b2 * deg[v] + slope * popcount(nm[v] & mask)
        mask |= 1 << v
    best = [cur, mask]
    nodes = 0

    def gain(v, X):
        return b2 * deg[v] + slope * popcount(nm[v] & X)

    def walk(i, X, size, value):
        nonlocal nodes
        nodes += 1
        if nodes > max_work:
            raise ResourceLimitError("branch-and-bound exceeded the work cap")
        need = k - size
        if need == 0:
            if value > best[0]:
                best[0], best[1] = value, X
            return
        rest = order[i:]
        if len(rest) < need:
            return
        bound = value + sum(heapq.nlargest(need, (gain(v, X) for v in rest)))
        if bound <= best[0]:
            return
        v = order[i]
        walk(i + 1, X | 1 << v, size + 1, value + gain(v, X))
        walk(i + 1, X, size, value)

    walk(0, 0, 0, 0)
    return best[0], best[1], nodes


def deg_alg(instance: FgppInstance, spec: ProblemSpec, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Exact decision for a degrading spec; the witness is an optimal ``k``-set."""
    if not spec.is_degrading:
        raise ContractError("deg_alg needs a degrading spec")
    g, k = instance.graph, instance.k
    if k > g.n:
        return SolveResult.rejected("deg", {"nodes": 0})
    if k == 0:
        return decide_empty(instance, spec, "deg")
    a1, a2, d = spec.scaled()
    sign = 1 if spec.is_max else -1
    best, mask, nodes = _optimum(g, k, sign * a1, sign * a2, config.max_work)
    value = Fraction(sign * best, d)
    stats = {"nodes": nodes}
    if spec.meets(value, instance.p):
        return SolveResult.accepted(instance, spec, vertices_of(mask), "deg", stats)
    return SolveResult.rejected("deg", stats, value)
