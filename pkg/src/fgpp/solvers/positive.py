"""Positive min-FGPPs: node-colored and edge-colored separation with a component DP."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ContractError, InputError
from ..graph import (Color, FgppInstance, ProblemSpec, SolveResult, decide_empty, red_edge_components, val,
                     val_star)
from ..separation import color_edges, color_nodes
from . import batch
from .config import SolverConfig


@dataclass(frozen=True)
class ComponentList:
    """Maximal components ``C_1..C_t`` with ``val(C_i)`` cached."""

    components: tuple[tuple[int, ...], ...]
    values: tuple[Fraction, ...]

    def __len__(self):
        return len(self.components)


@dataclass(frozen=True)
class DpMatrix:
    """``best[i][j]``: least total value over unions of ``C_1..C_i`` with ``j`` vertices.

    ``None`` stands for infinity.  ``take[i][j]`` records whether ``C_i`` is
    used by the entry.
    """

    best: tuple[tuple[Fraction | None, ...], ...]
    take: tuple[tuple[bool, ...], ...]

    def reconstruct(self, comps: ComponentList, j: int) -> list[int]:
        """Indices (0-based) of the components behind ``best[t][j]``."""
        chosen = []
        for i in range(len(self.best) - 1, 0, -1):
            if self.take[i][j]:
                chosen.append(i - 1)
                j -= len(comps.components[i - 1])
        return sorted(chosen)


def red_components(instance: FgppInstance, spec: ProblemSpec) -> ComponentList:
    """Maximal connected components of the red vertices."""
    g = instance.graph
    red = [c is Color.RED for c in instance.node_colors or ()]
    if instance.node_colors is None:
        raise InputError("node coloring required")
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if not red[s] or seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adjacency[v]:
                if red[w] and not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    comps.sort()
    return ComponentList(tuple(comps), tuple(val(g, spec, c) for c in comps))


def red_edge_component_list(instance: FgppInstance, spec: ProblemSpec) -> ComponentList:
    """Components of the graph left after deleting every blue edge."""
    g = instance.graph
    comps = red_edge_components(g, instance.red_edges(), range(g.n))
    return ComponentList(tuple(comps), tuple(val(g, spec, c) for c in comps))


def fill_dp(comps: ComponentList, k: int) -> DpMatrix:
    """``M[i][j] = min(M[i-1][j], M[i-1][j - |C_i|] + val(C_i))``, ties keep ``C_i`` out."""
    t = len(comps)
    best = [[None] * (k + 1) for _ in range(t + 1)]
    take = [[False] * (k + 1) for _ in range(t + 1)]
    for i in range(t + 1):
        best[i][0] = Fraction(0)
    for i in range(1, t + 1):
        size = len(comps.components[i - 1])
        value = comps.values[i - 1]
        for j in range(1, k + 1):
            keep = best[i - 1][j]
            prev = best[i - 1][j - size] if j >= size else None
            cand = prev + value if prev is not None else None
            if cand is not None and (keep is None or cand < keep):
                best[i][j], take[i][j] = cand, True
            else:
                best[i][j] = keep
    return DpMatrix(tuple(map(tuple, best)), tuple(map(tuple, take)))


def _solve_components(instance, spec, comps: ComponentList, name: str, measure) -> SolveResult:
    k = instance.k
    dp = fill_dp(comps, k)
    stats = {"components": len(comps), "dp_cells": (len(comps) + 1) * (k + 1)}
    top = dp.best[-1][k]
    if top is None or top > instance.p:
        return SolveResult.rejected(name, stats, top)
    chosen = dp.reconstruct(comps, k)
    parts = tuple(comps.components[i] for i in chosen)
    witness = tuple(sorted(v for part in parts for v in part))
    return SolveResult.accepted(instance, spec, witness, name, stats, parts, value=measure(witness))


def solve_ncp(instance: FgppInstance, spec: ProblemSpec) -> SolveResult:
    """Node-colored variant: ``k`` red vertices, only blue outside neighbours, ``val <= p``."""
    comps = red_components(instance, spec)
    return _solve_components(instance, spec, comps, "solve-ncp", lambda w: val(instance.graph, spec, w))


def solve_ecp(instance: FgppInstance, spec: ProblemSpec) -> SolveResult:
    """Edge-colored variant: ``k`` vertices, blue boundary edges, ``val* <= p``."""
    if instance.edge_colors is None:
        raise InputError("edge coloring required")
    comps = red_edge_component_list(instance, spec)
    return _solve_components(instance, spec, comps, "solve-ecp",
                             lambda w: val_star(instance.graph, spec, instance.edge_colors, w))


def _round(x: Fraction, rounding: str) -> int:
    return math.floor(x) if rounding == "floor" else math.ceil(x)


def p_alg(instance: FgppInstance, spec: ProblemSpec, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Node-coloring separation with strength ``k + p / alpha2``, then the component DP."""
    if not spec.is_positive_min:
        raise ContractError("p_alg needs a min spec with alpha1 >= 0 and alpha2 > 0")
    if instance.k > instance.graph.n:
        return SolveResult.rejected("palg", {"colorings_tried": 0})
    if instance.k == 0:
        return decide_empty(instance, spec, "palg")
    if instance.p < 0:
        return SolveResult.rejected("palg", {"colorings_tried": 0})
    q = instance.k + _round(instance.p / spec.alpha2, config.rounding)
    family = color_nodes(instance, q, config.universal)
    return _run_family(instance, spec, family, "nc", solve_ncp, "palg", q, config)


def fast_p_strength(spec: ProblemSpec, k: int, p: Fraction) -> Fraction:
    """``max(p / a2, min(p / a1, p / a2 + (1 - a1 / a2) k))``."""
    a1, a2 = spec.alpha1, spec.alpha2
    return max(p / a2, min(p / a1, p / a2 + (1 - a1 / a2) * k))


def fast_p_alg(instance: FgppInstance, spec: ProblemSpec, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Edge-coloring separation with strength from :func:`fast_p_strength`, then the component DP."""
    if not spec.is_nondegrading_positive_min:
        raise ContractError("fast_p_alg needs a min spec with alpha2 >= alpha1 / 2 > 0")
    if instance.k > instance.graph.n:
        return SolveResult.rejected("fastpalg", {"colorings_tried": 0})
    if instance.k == 0:
        return decide_empty(instance, spec, "fastpalg")
    if instance.p < 0:
        return SolveResult.rejected("fastpalg", {"colorings_tried": 0})
    x = fast_p_strength(spec, instance.k, instance.p)
    t = max(0, min(_round(x, config.rounding), instance.graph.m))
    family = color_edges(instance, t, config.universal)
    return _run_family(instance, spec, family, "ec", solve_ecp, "fastpalg", t, config)


def _run_family(instance, spec, colored, kind, scalar, name, strength, config) -> SolveResult:
    a1, a2, d = spec.scaled()
    P = math.floor(instance.p * d)
    idx, tried = batch.first_accepting(kind, instance.graph, colored.family, instance.k, P, a1, a2,
                                       config.threads)
    stats = {"strength": strength, "family_size": len(colored), "family_mode": colored.family.mode,
             "colorings_tried": tried}
    if idx is None:
        return SolveResult.rejected(name, stats)
    inner = scalar(colored[idx], spec)
    if not inner.decision:
        raise ContractError(f"{name}: batch and scalar evaluation disagree on coloring {idx}")
    stats["coloring_index"] = idx
    return SolveResult.accepted(instance.uncolored(), spec, inner.witness, name, stats, inner.parts)
