from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from ..errors import ResourceLimitError
from ..graph import FgppInstance, ProblemSpec, SolveResult, mask_of

DEFAULT_MAX_WORK = 10**8


def brute_force(instance: FgppInstance, spec: ProblemSpec, max_work: int = DEFAULT_MAX_WORK) -> SolveResult:
    """Scan every ``k``-subset; ``value`` is the optimum, ties go to the lexicographically first set."""
    g, k = instance.graph, instance.k
    if k > g.n:
        return SolveResult.rejected("oracle", {"subsets": 0})
    count = math.comb(g.n, k)
    if count > max_work:
        raise ResourceLimitError(f"brute force over C({g.n},{k}) = {count} subsets exceeds the work cap")
    a1, a2, d = spec.scaled()
    is_max = spec.is_max
    best = None
    best_set = None
    for combo in combinations(range(g.n), k):
        inner, cut = g.inner_and_cut(mask_of(combo))
        v = a1 * inner + a2 * cut
        if best is None or (v > best if is_max else v < best):
            best, best_set = v, combo
    value = Fraction(best, d)
    stats = {"subsets": count}
    if spec.meets(value, instance.p):
        return SolveResult.accepted(instance, spec, best_set, "oracle", stats)
    return SolveResult.rejected("oracle", stats, value)
