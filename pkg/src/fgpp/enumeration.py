"""Connected vertex sets and the reduction to weighted exact cover."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ContractError, InputError
from .graph import FgppInstance, Graph, ProblemSpec, vertices_of
from .repfam import WecInstance


@dataclass(frozen=True)
class ConnectedFamilies:
    """``levels[i - 1]`` holds every connected vertex set of size ``i``.

    Each level is sorted lexicographically by the sorted vertex tuple;
    ``masks`` mirrors ``levels`` as bitmasks.
    """

    levels: tuple[tuple[tuple[int, ...], ...], ...]
    masks: tuple[tuple[int, ...], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    def __iter__(self):
        for level in self.levels:
            yield from level

    def __len__(self):
        return sum(self.counts)


def count_bound(graph: Graph, i: int) -> int:
    """Upper bound ``4^i (Delta - 1)^i n`` on the number of connected ``i``-sets."""
    return 4**i * (graph.max_degree - 1) ** i * graph.n


@lru_cache(maxsize=256)
def enumerate_connected(graph: Graph, i_max: int) -> ConnectedFamilies:
    """All connected induced subgraphs with at most ``i_max`` vertices.

    Grows sets level by level from the singletons, extending each set by one
    neighbour at a time and deduplicating on set identity, so every set
    appears exactly once whatever the adjacency order.
    """
    if not 1 <= i_max <= max(graph.n, 1):
        raise InputError(f"i_max must lie in 1..{graph.n}, got {i_max}")
    nm = graph.neighbor_masks
    level = {1 << v for v in range(graph.n)}
    mask_levels = []
    for size in range(1, i_max + 1):
        ordered = sorted(level, key=vertices_of)
        mask_levels.append(tuple(ordered))
        if size == i_max:
            break
        nxt = set()
        for s in ordered:
            frontier = 0
            rest, v = s, 0
            while rest:
                if rest & 1:
                    frontier |= nm[v]
                rest >>= 1
                v += 1
            frontier &= ~s
            while frontier:
                low = frontier & -frontier
                nxt.add(s | low)
                frontier ^= low
        level = nxt
    return ConnectedFamilies(
        levels=tuple(tuple(vertices_of(m) for m in lvl) for lvl in mask_levels),
        masks=tuple(mask_levels),
    )


def reduce_to_wec(instance: FgppInstance, spec: ProblemSpec) -> WecInstance:
    """Map a non-degrading FGPP instance to a k'-WEC instance.

    Universe is ``V``; the family is every connected set of at most ``k``
    vertices weighted by ``val``; ``k' = k`` and ``p' = p``.  The boundary
    ``alpha1 / 2 == alpha2`` is accepted since the combination inequality
    then holds with equality.
    """
    half = spec.alpha1 / 2
    ok = half >= spec.alpha2 if spec.is_max else half <= spec.alpha2
    if not ok:
        raise ContractError("reduce_to_wec needs a non-degrading spec")
    g = instance.graph
    if instance.k > g.n:
        raise InputError(f"k={instance.k} exceeds n={g.n}")
    family = []
    if instance.k > 0:
        fams = enumerate_connected(g, instance.k)
        a1, a2 = spec.alpha1, spec.alpha2
        for level_sets, level_masks in zip(fams.levels, fams.masks):
            for s, m in zip(level_sets, level_masks):
                inner, cut = g.inner_and_cut(m)
                family.append((s, a1 * inner + a2 * cut))
    return WecInstance(g.n, tuple(family), instance.k, instance.p, spec.objective)
