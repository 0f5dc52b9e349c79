"""Solvers for weighted k'-exact cover.

:func:`solve_wec` is a dynamic program over partial unions: level ``j``
holds every union of ``j`` elements reachable as a disjoint union of family
sets, each with its best total weight and a back-pointer.  :func:`brute_wec`
is the independent oracle that walks all disjoint subfamilies.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import ResourceLimitError
from .graph import SolveResult, mask_of, popcount, vertices_of
from .repfam import DEFAULT_MAX_WORK, WecInstance, WeightedFamily, rep_alg

# level entry: union mask -> (scaled weight, index of last set, previous union mask)
Level = dict[int, tuple[int, int, int]]


def _scaled_items(instance: WecInstance):
    """Family sets (size <= k') sorted by (size, lex) with weights over a common denominator."""
    fam = sorted((s for s in instance.family if len(s[0]) <= instance.k), key=lambda m: (len(m[0]), m[0]))
    den = lcm(*(w.denominator for _, w in fam)) if fam else 1
    items = tuple((mask_of(s), int(w * den)) for s, w in fam)
    return fam, items, den


def _extend(levels: list[Level], by_size, j: int, is_max: bool) -> Level:
    cur: Level = {}
    get = cur.get
    for i in range(1, j + 1):
        prev = levels[j - i]
        sets = by_size[i]
        if not prev or not sets:
            continue
        for U, entry in prev.items():
            wu = entry[0]
            for s, ws, idx in sets:
                if U & s:
                    continue
                nu = U | s
                nw = wu + ws
                old = get(nu)
                if old is None or (nw > old[0] if is_max else nw < old[0]):
                    cur[nu] = (nw, idx, U)
    return cur


def _by_size(items, k):
    by_size: list[list[tuple[int, int, int]]] = [[] for _ in range(k + 1)]
    for idx, (mask, w) in enumerate(items):
        by_size[popcount(mask)].append((mask, w, idx))
    return by_size


@lru_cache(maxsize=64)
def _plain_levels(items: tuple, k: int, is_max: bool) -> tuple[Level, ...]:
    by_size = _by_size(items, k)
    levels: list[Level] = [{0: (0, -1, 0)}]
    for j in range(1, k + 1):
        levels.append(_extend(levels, by_size, j, is_max))
    return tuple(levels)


def _pruned_levels(items, k, is_max, universe, den, mode, seed, max_work) -> list[Level]:
    by_size = _by_size(items, k)
    objective = "max" if is_max else "min"
    levels: list[Level] = [{0: (0, -1, 0)}]
    for j in range(1, k + 1):
        cur = _extend(levels, by_size, j, is_max)
        if j < k and len(cur) > 1:
            masks = sorted(cur, key=vertices_of)
            fam = WeightedFamily(universe, tuple((vertices_of(m), Fraction(cur[m][0], den)) for m in masks))
            rep = rep_alg(fam, k, objective, mode, seed=seed + j, max_work=max_work)
            keep = {mask_of(s) for s, _ in rep.members}
            cur = {m: e for m, e in cur.items() if m in keep}
        levels.append(cur)
    return levels


def wec_levels(instance: WecInstance, prune: bool = False, prune_mode: str = "verified", seed: int = 0,
               max_work: int = DEFAULT_MAX_WORK) -> list[dict[tuple[int, ...], Fraction]]:
    """The DP table as ``[{union: best weight}]`` per level, for inspection and tests."""
    fam, items, den = _scaled_items(instance)
    if prune:
        levels = _pruned_levels(items, instance.k, instance.is_max, instance.universe, den, prune_mode, seed, max_work)
    else:
        levels = _plain_levels(items, instance.k, instance.is_max)
    return [{vertices_of(m): Fraction(e[0], den) for m, e in lvl.items()} for lvl in levels]


def wec_optimum(instance: WecInstance, prune: bool = False, prune_mode: str = "verified", seed: int = 0,
                max_work: int = DEFAULT_MAX_WORK):
    """Best exact cover ignoring ``p'``: ``(value, union, parts, stats)``, value None if none exists."""
    k = instance.k
    fam, items, den = _scaled_items(instance)
    if prune:
        levels = _pruned_levels(items, k, instance.is_max, instance.universe, den, prune_mode, seed, max_work)
    else:
        levels = _plain_levels(items, k, instance.is_max)
    stats = {"family_size": len(items), "dp_cells": sum(len(lvl) for lvl in levels)}
    final = levels[k]
    if not final:
        return None, None, None, stats
    is_max = instance.is_max
    best_mask = None
    best = None
    for mask in sorted(final, key=vertices_of):
        w = final[mask][0]
        if best is None or (w > best if is_max else w < best):
            best, best_mask = w, mask
    parts = []
    mask, j = best_mask, k
    while mask:
        _, idx, prev = levels[j][mask]
        parts.append(fam[idx][0])
        j -= popcount(mask ^ prev)
        mask = prev
    return Fraction(best, den), vertices_of(best_mask), tuple(sorted(parts)), stats


def solve_wec(instance: WecInstance, prune: bool = False, prune_mode: str = "verified", seed: int = 0,
              max_work: int = DEFAULT_MAX_WORK) -> SolveResult:
    """Decide the instance; on acceptance the witness is the union of the chosen sets.

    With ``prune`` each intermediate level is replaced by a representative
    subfamily (forbidden-set size ``k' - j``) before it is extended.
    """
    value, union, parts, stats = wec_optimum(instance, prune, prune_mode, seed, max_work)
    if value is None:
        return SolveResult.rejected("wec-dp", stats)
    if not instance.meets(value):
        return SolveResult.rejected("wec-dp", stats, value)
    return SolveResult(True, union, value, "wec-dp", stats, parts)


def brute_wec(instance: WecInstance, max_family: int | None = 20) -> SolveResult:
    """Exhaustive search over all disjoint subfamilies with union size at most ``k'``."""
    fam = list(instance.family)
    if max_family is not None and len(fam) > max_family:
        raise ResourceLimitError(f"brute-force WEC is capped at {max_family} sets, got {len(fam)}")
    k = instance.k
    masks = [mask_of(s) for s, _ in fam]
    sizes = [len(s) for s, _ in fam]
    is_max = instance.is_max
    best: list = [None, None, None]  # weight, union, chosen indices
    visited = 0

    def walk(start, used, size, weight, chosen):
        nonlocal visited
        visited += 1
        if size == k:
            w = best[0]
            if w is None or (weight > w if is_max else weight < w) or (
                    weight == w and vertices_of(used) < vertices_of(best[1])):
                best[:] = [weight, used, tuple(chosen)]
            return
        for j in range(start, len(fam)):
            if not used & masks[j] and size + sizes[j] <= k:
                chosen.append(j)
                walk(j + 1, used | masks[j], size + sizes[j], weight + fam[j][1], chosen)
                chosen.pop()

    walk(0, 0, 0, Fraction(0), [])
    stats = {"family_size": len(fam), "subfamilies": visited}
    if best[0] is None:
        return SolveResult.rejected("wec-brute", stats)
    if not instance.meets(best[0]):
        return SolveResult.rejected("wec-brute", stats, best[0])
    parts = tuple(sorted(fam[j][0] for j in best[2]))
    return SolveResult(True, vertices_of(best[1]), best[0], "wec-brute", stats, parts)
