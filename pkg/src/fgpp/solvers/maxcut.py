"""Max (k, n-k)-Cut by node-coloring separation."""

from __future__ import annotations

import logging
import math
from collections import deque
from fractions import Fraction

from ..errors import ContractError
from ..graph import (Color, FgppInstance, Graph, ProblemSpec, SolveResult, builtin_problem, decide_empty,
                     mask_of)
from ..separation import color_nodes
from . import batch
from .config import SolverConfig
from .oracle import brute_force

log = logging.getLogger(__name__)

MAX_CUT = builtin_problem("max-cut")


def is_max_cut(spec: ProblemSpec) -> bool:
    return spec == MAX_CUT


def solve_nc_max_cut(instance: FgppInstance) -> SolveResult:
    """Take the ``k`` red vertices with the most blue neighbours; accept iff their count sum reaches ``p``."""
    if instance.node_colors is None:
        raise ContractError("solve_nc_max_cut needs a node coloring")
    g, k = instance.graph, instance.k
    blue = [c is Color.BLUE for c in instance.node_colors]
    red = [v for v in range(g.n) if not blue[v]]
    nb = {v: sum(blue[w] for w in g.adjacency[v]) for v in red}
    red.sort(key=lambda v: (-nb[v], v))
    stats = {"red": len(red)}
    if len(red) < k:
        return SolveResult.rejected("solve-nc-max-cut", stats)
    top = red[:k]
    total = sum(nb[v] for v in top)
    if total < instance.p:
        return SolveResult.rejected("solve-nc-max-cut", stats, Fraction(total))
    return SolveResult.accepted(instance.uncolored(), MAX_CUT, top, "solve-nc-max-cut", stats)


def _star_leaves(graph: Graph) -> list[int]:
    """Leaves of a spanning star forest in which every star has at least two vertices.

    Needs a graph without isolated vertices.  Each leaf is adjacent to its
    own center and centers are never leaves, so any set of leaves cuts at
    least one edge per member.
    """
    n = graph.n
    parent = [-1] * n
    depth = [-1] * n
    order = []
    for root in range(n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in graph.adjacency[v]:
                if depth[w] < 0:
                    depth[w] = depth[v] + 1
                    parent[w] = v
                    queue.append(w)
    role = [None] * n  # "leaf" or "center"
    for v in sorted(order, key=lambda u: (-depth[u], u)):
        if role[v] is not None:
            continue
        if parent[v] >= 0:
            role[v] = "leaf"
            role[parent[v]] = "center"
        else:
            # every child is already a center; hang the root off the first one
            children = [w for w in graph.adjacency[v] if parent[w] == v]
            if not children:
                raise ContractError(f"vertex {v} is isolated")
            role[v] = "leaf"
    return [v for v in range(n) if role[v] == "leaf"]


def balanced_cut_witness(graph: Graph, k: int) -> tuple[int, ...]:
    """A ``k``-set cutting at least ``min(k, n - k)`` edges (graph without isolated vertices)."""
    n = graph.n
    if graph.isolated():
        raise ContractError("balanced_cut_witness needs a graph without isolated vertices")
    leaves = _star_leaves(graph)
    if k <= n - k:
        X = tuple(leaves[:k])
    else:
        Y = set(leaves[:n - k])
        X = tuple(v for v in range(n) if v not in Y)
    _, cut = graph.inner_and_cut(mask_of(X))
    if cut < min(k, n - k) or len(X) != k:
        log.error("star-forest witness cut %d below %d; falling back to brute force", cut, min(k, n - k))
        found = brute_force(FgppInstance(graph, k, min(k, n - k)), MAX_CUT)
        if not found.decision:
            raise ContractError("no balanced cut exists on a graph without isolated vertices")
        X = found.witness
    return X


def _core(graph: Graph, k: int, p: Fraction, config: SolverConfig, stats: dict) -> tuple[int, ...] | None:
    """Max-cut decision on a graph without isolated vertices; returns a witness or None."""
    n = graph.n
    if k == 0 or k == n:
        return tuple(range(k)) if p <= 0 else None
    if p < min(k, n - k):
        stats["shortcut"] = True
        return balanced_cut_witness(graph, k)
    if n - k < k:
        stats["complement"] = True
        inner = _core(graph, n - k, p, config, stats)
        if inner is None:
            return None
        drop = set(inner)
        return tuple(v for v in range(n) if v not in drop)
    q = k + math.ceil(p)
    colored = color_nodes(FgppInstance(graph, k, p), q, config.universal)
    idx, tried = batch.first_accepting("cut", graph, colored.family, k, math.ceil(p), threads=config.threads)
    stats.update(strength=min(q, n), family_size=len(colored), family_mode=colored.family.mode)
    stats["colorings_tried"] = stats.get("colorings_tried", 0) + tried
    if idx is None:
        return None
    inner = solve_nc_max_cut(colored[idx])
    if not inner.decision:
        raise ContractError(f"max-cut: batch and scalar evaluation disagree on coloring {idx}")
    stats["coloring_index"] = idx
    return inner.witness


def max_cut_alg(instance: FgppInstance, spec: ProblemSpec = MAX_CUT,
                config: SolverConfig = SolverConfig()) -> SolveResult:
    """Decide Max (k, n-k)-Cut.

    Isolated vertices cut nothing, so they only pad the witness: the core is
    solved on the rest of the graph for every feasible split of ``k``.
    """
    if not is_max_cut(spec):
        raise ContractError("max_cut_alg needs the (0, 1, max) spec")
    g, k, p = instance.graph, instance.k, instance.p
    if k > g.n:
        return SolveResult.rejected("maxcut", {"colorings_tried": 0})
    if k == 0:
        return decide_empty(instance, spec, "maxcut")
    iso = g.isolated()
    stats: dict = {"isolated": len(iso)}
    if not iso:
        X = _core(g, k, p, config, stats)
    else:
        core, ids = g.induced([v for v in range(g.n) if v not in set(iso)])
        X = None
        for j in range(max(0, k - len(iso)), min(k, core.n) + 1):
            sub = _core(core, j, p, config, stats)
            if sub is not None:
                X = tuple(ids[v] for v in sub) + iso[:k - j]
                break
    if X is None:
        return SolveResult.rejected("maxcut", stats)
    return SolveResult.accepted(instance.uncolored(), spec, X, "maxcut", stats)
