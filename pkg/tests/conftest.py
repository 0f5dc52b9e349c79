"""Shared helpers: small-graph strategies, independent oracles, acceptance reporting."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from fgpp import Color, Graph, ProblemSpec

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, tuple(e for e, keep in zip(pairs, chosen) if keep))


rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))

specs = st.builds(ProblemSpec, rationals, rationals, st.sampled_from(["min", "max"]))


def naive_val(graph: Graph, spec: ProblemSpec, X) -> Fraction:
    """Direct edge scan, independent of the bitmask code path."""
    X = set(X)
    inner = sum(1 for u, v in graph.edges if u in X and v in X)
    cut = sum(1 for u, v in graph.edges if (u in X) != (v in X))
    return spec.alpha1 * inner + spec.alpha2 * cut


def is_connected(graph: Graph, X) -> bool:
    X = set(X)
    if not X:
        return False
    start = min(X)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in graph.adjacency[v]:
            if w in X and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == X


def nc_max_cut_brute(graph: Graph, colors, k: int, p) -> bool:
    """k red vertices with at least p boundary edges that have a blue endpoint."""
    red = [v for v in range(graph.n) if colors[v] is Color.RED]
    for X in combinations(red, k):
        Xs = set(X)
        hits = sum(1 for u, v in graph.edges
                   if (u in Xs) != (v in Xs) and (colors[u] is Color.BLUE or colors[v] is Color.BLUE))
        if hits >= p:
            return True
    return False


def nc_brute(graph: Graph, spec: ProblemSpec, colors, k: int, p) -> bool:
    """k red vertices whose outside neighbours are all blue, with val at most p."""
    red = [v for v in range(graph.n) if colors[v] is Color.RED]
    for X in combinations(red, k):
        Xs = set(X)
        if any(colors[w] is Color.RED for v in X for w in graph.adjacency[v] if w not in Xs):
            continue
        if naive_val(graph, spec, X) <= p:
            return True
    return False


def val_star_naive(graph: Graph, spec: ProblemSpec, colors, X) -> Fraction:
    X = set(X)
    red = [(u, v) for (u, v), c in zip(graph.edges, colors) if c is Color.RED and u in X and v in X]
    comps = []
    left = set(X)
    while left:
        s = min(left)
        comp, stack = {s}, [s]
        while stack:
            a = stack.pop()
            for u, v in red:
                b = v if u == a else u if v == a else None
                if b is not None and b not in comp:
                    comp.add(b)
                    stack.append(b)
        comps.append(comp)
        left -= comp
    return sum((naive_val(graph, spec, c) for c in comps), Fraction(0))


def ec_brute(graph: Graph, spec: ProblemSpec, colors, k: int, p) -> bool:
    """k vertices with an all-blue boundary and val* at most p."""
    for X in combinations(range(graph.n), k):
        Xs = set(X)
        if any(c is Color.RED for (u, v), c in zip(graph.edges, colors) if (u in Xs) != (v in Xs)):
            continue
        if val_star_naive(graph, spec, colors, X) <= p:
            return True
    return False


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


@pytest.fixture
def k3():
    return complete(3)
