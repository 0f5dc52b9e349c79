"""Vectorized evaluation of whole coloring families.

Each routine answers, for every row of a universal-set family at once, the
question the matching scalar procedure answers for one colored instance.
Values are scaled to integers (``val * d`` with ``d`` the common denominator
of the coefficients), so every comparison stays exact.  Small families get
their full table cached, which makes threshold sweeps over ``p`` and ``k``
cheap; large families are processed in chunks with an early exit.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from ..graph import Graph
from ..separation import UniversalSetFamily

INF = np.int64(2**62)
CHUNK = 8192
CACHE_CELLS = 1 << 20


def _labels(n: int, eu: np.ndarray, ev: np.ndarray, active: np.ndarray) -> np.ndarray:
    """Component representative per vertex and row, joining along active edges."""
    rows = active.shape[0]
    lab = np.tile(np.arange(n, dtype=np.int64), (rows, 1))
    if eu.size == 0 or n == 0:
        return lab
    while True:
        before = lab.copy()
        for e in range(eu.size):
            a = active[:, e]
            u, v = eu[e], ev[e]
            lu, lv = lab[:, u], lab[:, v]
            mn = np.minimum(lu, lv)
            lab[:, u] = np.where(a, mn, lu)
            lab[:, v] = np.where(a, mn, lv)
        lab = np.take_along_axis(lab, lab, axis=1)
        if np.array_equal(lab, before):
            return lab


def _component_values(graph: Graph, a1: int, a2: int, lab: np.ndarray, member: np.ndarray):
    rows, n = lab.shape
    r = np.arange(rows)
    sizes = np.zeros((rows, n), dtype=np.int64)
    degsum = np.zeros((rows, n), dtype=np.int64)
    inner = np.zeros((rows, n), dtype=np.int64)
    for v in range(n):
        mv = member[:, v].astype(np.int64)
        sizes[r, lab[:, v]] += mv
        degsum[r, lab[:, v]] += mv * graph.degree(v)
    for u, v in graph.edges:
        same = member[:, u] & member[:, v] & (lab[:, u] == lab[:, v])
        inner[r, lab[:, u]] += same
    return sizes, a1 * inner + a2 * (degsum - 2 * inner)


def _knapsack(sizes: np.ndarray, vals: np.ndarray, kmax: int) -> np.ndarray:
    """Row-wise ``M[j]`` = least total value of components whose sizes sum to ``j``."""
    rows, n = sizes.shape
    r = np.arange(rows)
    M = np.full((rows, kmax + 1), INF, dtype=np.int64)
    M[:, 0] = 0
    for c in range(n):
        sz = sizes[:, c]
        live = sz > 0
        if not live.any():
            continue
        vc = vals[:, c]
        for j in range(kmax, 0, -1):
            src = j - sz
            ok = live & (src >= 0)
            if not ok.any():
                continue
            prev = M[r, np.where(ok, src, 0)]
            cand = np.where(ok & (prev < INF), prev + vc, INF)
            M[:, j] = np.minimum(M[:, j], cand)
    return M


def _edge_arrays(graph: Graph):
    if graph.m == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    arr = np.array(graph.edges, dtype=np.int64)
    return arr[:, 0], arr[:, 1]


def nc_table(graph: Graph, a1: int, a2: int, rows: np.ndarray, kmax: int) -> np.ndarray:
    """Node colorings (1 = blue): best union of maximal red components per size."""
    red = rows == 0
    eu, ev = _edge_arrays(graph)
    active = red[:, eu] & red[:, ev] if eu.size else np.zeros((rows.shape[0], 0), dtype=bool)
    lab = _labels(graph.n, eu, ev, active)
    sizes, vals = _component_values(graph, a1, a2, lab, red)
    return _knapsack(sizes, vals, kmax)


def ec_table(graph: Graph, a1: int, a2: int, rows: np.ndarray, kmax: int) -> np.ndarray:
    """Edge colorings (1 = blue): best union of red-edge components per size."""
    eu, ev = _edge_arrays(graph)
    lab = _labels(graph.n, eu, ev, rows == 0)
    member = np.ones((rows.shape[0], graph.n), dtype=bool)
    sizes, vals = _component_values(graph, a1, a2, lab, member)
    return _knapsack(sizes, vals, kmax)


def _adjacency(graph: Graph) -> np.ndarray:
    A = np.zeros((graph.n, graph.n), dtype=np.float32)
    for u, v in graph.edges:
        A[u, v] = A[v, u] = 1.0
    return A


def cut_table(graph: Graph, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Prefix sums of red vertices' blue-neighbour counts in non-increasing order.

    Returns ``(prefix, red_count)``; a row accepts ``(k, p)`` iff
    ``red_count >= k`` and ``prefix[k] >= p``.
    """
    red = rows == 0
    nb = np.rint(rows.astype(np.float32) @ _adjacency(graph)).astype(np.int64)
    score = np.where(red, nb, -1)
    ordered = -np.sort(-score, axis=1)
    prefix = np.zeros((rows.shape[0], graph.n + 1), dtype=np.int64)
    np.cumsum(ordered, axis=1, out=prefix[:, 1:])
    return prefix, red.sum(axis=1)


@lru_cache(maxsize=64)
def _cached(kind: str, graph: Graph, a1: int, a2: int, family: UniversalSetFamily):
    rows = family.functions
    if kind == "nc":
        return nc_table(graph, a1, a2, rows, graph.n)
    if kind == "ec":
        return ec_table(graph, a1, a2, rows, graph.n)
    return cut_table(graph, rows)


def _accepts(kind, graph, a1, a2, rows, k, P):
    if kind == "cut":
        prefix, reds = cut_table(graph, rows)
        return (reds >= k) & (prefix[:, k] >= P)
    table = nc_table if kind == "nc" else ec_table
    return table(graph, a1, a2, rows, k)[:, k] <= P


def first_accepting(kind: str, graph: Graph, family: UniversalSetFamily, k: int, P: int,
                    a1: int = 0, a2: int = 1, threads: int = 1) -> tuple[int | None, int]:
    """Lowest accepting row index (or None) and the number of rows examined.

    ``kind`` is ``"nc"`` (min over red components, accept ``<= P``), ``"ec"``
    (same over red-edge components) or ``"cut"`` (top-``k`` blue-neighbour
    sum, accept ``>= P``).
    """
    size = len(family)
    if size * (graph.n + 1) <= CACHE_CELLS:
        if kind == "cut":
            prefix, reds = _cached(kind, graph, 0, 0, family)
            hits = np.flatnonzero((reds >= k) & (prefix[:, k] >= P))
        else:
            hits = np.flatnonzero(_cached(kind, graph, a1, a2, family)[:, k] <= P)
        return (int(hits[0]), int(hits[0]) + 1) if hits.size else (None, size)

    starts = range(0, size, CHUNK)

    def run(start):
        return _accepts(kind, graph, a1, a2, family.functions[start:start + CHUNK], k, P)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            for start, acc in zip(starts, pool.map(run, starts)):
                hits = np.flatnonzero(acc)
                if hits.size:
                    return start + int(hits[0]), start + int(hits[0]) + 1
        return None, size
    for start in starts:
        hits = np.flatnonzero(run(start))
        if hits.size:
            return start + int(hits[0]), start + int(hits[0]) + 1
    return None, size
