"""Graphs, problem coefficients, instances and exact objective values.

Vertices are dense 0-based integers.  Vertex sets are handled either as
sorted tuples (public API) or as Python ``int`` bitmasks (internally; bit
``v`` set means vertex ``v`` is in the set).  All objective values are exact
:class:`fractions.Fraction` instances.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .errors import InputError, ParseError, WitnessError

Rational = Fraction


def as_rational(value) -> Fraction:
    """Convert ints, Fractions and strings like ``"3"``, ``"-1/2"`` exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r}")


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` keeps the caller's order (edge ``i`` is the ``i``-th pair), with
    each pair normalised to ``(min, max)``.  Duplicates and self-loops are
    rejected.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    neighbor_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    max_degree: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {self.n!r}")
        norm = []
        seen = set()
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise InputError(f"duplicate edge {pair}")
            seen.add(pair)
            norm.append(pair)
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "neighbor_masks", tuple(mask_of(a) for a in adj))
        object.__setattr__(self, "max_degree", max((len(a) for a in adj), default=0))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def isolated(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if not self.adjacency[v])

    def check_vertices(self, vertices: Iterable[int]) -> tuple[int, ...]:
        vs = tuple(sorted(set(int(v) for v in vertices)))
        for v in vs:
            if not 0 <= v < self.n:
                raise InputError(f"vertex {v} out of range 0..{self.n - 1}")
        return vs

    def inner_and_cut(self, mask: int) -> tuple[int, int]:
        """Return ``(|E(X)|, |E(X, V minus X)|)`` for the vertex set ``mask``."""
        twice_inner = 0
        degsum = 0
        nm = self.neighbor_masks
        rest = mask
        v = 0
        while rest:
            if rest & 1:
                twice_inner += popcount(nm[v] & mask)
                degsum += len(self.adjacency[v])
            rest >>= 1
            v += 1
        inner = twice_inner // 2
        return inner, degsum - twice_inner

    def induced(self, keep: Sequence[int]) -> tuple["Graph", tuple[int, ...]]:
        """Subgraph induced by ``keep``, relabelled densely; also returns the old ids."""
        keep = tuple(sorted(keep))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), tuple(edges)), keep

    def digest(self) -> str:
        return hashlib.sha256(format_graph(self).encode()).hexdigest()


class Objective(str, enum.Enum):
    MIN = "min"
    MAX = "max"


class Color(str, enum.Enum):
    RED = "red"
    BLUE = "blue"


@dataclass(frozen=True)
class Classification:
    label: str  # "degrading" or "non-degrading"
    positive_min: bool
    nondegrading_positive_min: bool

    @property
    def degrading(self) -> bool:
        return self.label == "degrading"


@dataclass(frozen=True)
class ProblemSpec:
    """Coefficients of ``val`` plus the optimisation direction."""

    alpha1: Fraction
    alpha2: Fraction
    objective: Objective

    def __post_init__(self):
        object.__setattr__(self, "alpha1", as_rational(self.alpha1))
        object.__setattr__(self, "alpha2", as_rational(self.alpha2))
        object.__setattr__(self, "objective", Objective(self.objective))

    @property
    def is_max(self) -> bool:
        return self.objective is Objective.MAX

    @property
    def is_degrading(self) -> bool:
        half = self.alpha1 / 2
        if self.is_max:
            return half <= self.alpha2
        return half >= self.alpha2

    @property
    def is_positive_min(self) -> bool:
        return not self.is_max and self.alpha1 >= 0 and self.alpha2 > 0

    @property
    def is_nondegrading_positive_min(self) -> bool:
        return not self.is_max and self.alpha2 >= self.alpha1 / 2 > 0

    def meets(self, value: Fraction, p: Fraction) -> bool:
        """True iff ``value`` satisfies the threshold ``p`` in this direction."""
        return value >= p if self.is_max else value <= p

    def better(self, a: Fraction, b: Fraction) -> bool:
        return a > b if self.is_max else a < b

    def scaled(self) -> tuple[int, int, int]:
        """Integers ``(a1, a2, d)`` with ``alpha_i == a_i / d``."""
        d = lcm(self.alpha1.denominator, self.alpha2.denominator)
        return int(self.alpha1 * d), int(self.alpha2 * d), d

    def as_dict(self) -> dict:
        return {
            "alpha1": str(self.alpha1),
            "alpha2": str(self.alpha2),
            "objective": self.objective.value,
        }


def classify(spec: ProblemSpec) -> Classification:
    """Degrading/non-degrading label plus the positive-min flags.

    The boundary ``alpha1/2 == alpha2`` counts as degrading in both
    directions.
    """
    return Classification(
        label="degrading" if spec.is_degrading else "non-degrading",
        positive_min=spec.is_positive_min,
        nondegrading_positive_min=spec.is_nondegrading_positive_min,
    )


PROBLEMS: Mapping[str, tuple[int, int, str]] = {
    "max-cut": (0, 1, "max"),
    "min-cut": (0, 1, "min"),
    "max-vc": (1, 1, "max"),
    "min-vc": (1, 1, "min"),
    "densest": (1, 0, "max"),
    "sparsest": (1, 0, "min"),
}


def builtin_problem(name: str) -> ProblemSpec:
    try:
        a1, a2, obj = PROBLEMS[name]
    except KeyError:
        known = ", ".join(sorted(PROBLEMS))
        raise InputError(f"unknown problem {name!r}; expected one of {known} or custom") from None
    return ProblemSpec(Fraction(a1), Fraction(a2), Objective(obj))


@dataclass(frozen=True)
class FgppInstance:
    """A graph with cardinality ``k`` and threshold ``p``.

    At most one of ``node_colors`` / ``edge_colors`` may be given; ``origin``
    records ``(seed, function index)`` for instances produced by a coloring
    family so they can be replayed.
    """

    graph: Graph
    k: int
    p: Fraction
    node_colors: tuple[Color, ...] | None = None
    edge_colors: tuple[Color, ...] | None = None
    origin: tuple[int, int] | None = None

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 0:
            raise InputError(f"k must be a nonnegative integer, got {self.k!r}")
        object.__setattr__(self, "p", as_rational(self.p))
        if self.node_colors is not None and self.edge_colors is not None:
            raise InputError("an instance carries node colors or edge colors, not both")
        if self.node_colors is not None and len(self.node_colors) != self.graph.n:
            raise InputError("node coloring length differs from vertex count")
        if self.edge_colors is not None and len(self.edge_colors) != self.graph.m:
            raise InputError("edge coloring length differs from edge count")

    @property
    def red_mask(self) -> int:
        if self.node_colors is None:
            raise InputError("instance has no node coloring")
        return mask_of(v for v, c in enumerate(self.node_colors) if c is Color.RED)

    def red_edges(self) -> tuple[tuple[int, int], ...]:
        if self.edge_colors is None:
            raise InputError("instance has no edge coloring")
        return tuple(e for e, c in zip(self.graph.edges, self.edge_colors) if c is Color.RED)

    def uncolored(self) -> "FgppInstance":
        return FgppInstance(self.graph, self.k, self.p)


def val(graph: Graph, spec: ProblemSpec, X: Iterable[int]) -> Fraction:
    """``alpha1 * |E(X)| + alpha2 * |E(X, V minus X)|``, exactly."""
    inner, cut = graph.inner_and_cut(mask_of(graph.check_vertices(X)))
    return spec.alpha1 * inner + spec.alpha2 * cut


def red_edge_components(graph: Graph, red_edges: Iterable[tuple[int, int]], X: Iterable[int]) -> list[tuple[int, ...]]:
    """Connected components of ``(X, red edges inside X)``, sorted by smallest vertex."""
    members = set(X)
    parent = {v: v for v in members}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in red_edges:
        if u in members and v in members:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for v in sorted(members):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(g) for g in groups.values())


def val_star(graph: Graph, spec: ProblemSpec, edge_colors: Sequence[Color] | None, X: Iterable[int]) -> Fraction:
    """Sum of ``val`` over the red-edge components of ``X``."""
    if edge_colors is None:
        raise InputError("val_star needs an edge coloring")
    if len(edge_colors) != graph.m:
        raise InputError("edge coloring length differs from edge count")
    X = graph.check_vertices(X)
    red = [e for e, c in zip(graph.edges, edge_colors) if Color(c) is Color.RED]
    return sum((val(graph, spec, comp) for comp in red_edge_components(graph, red, X)), Fraction(0))


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a decision procedure.

    ``witness`` is present only on acceptance.  ``value`` is the objective of
    the witness (or, for the brute-force oracle, the optimum over all
    ``k``-sets).  ``parts`` lists the blocks a witness was assembled from when
    the solver builds it from pieces.
    """

    decision: bool
    witness: tuple[int, ...] | None = None
    value: Fraction | None = None
    algorithm: str = ""
    stats: dict = field(default_factory=dict)
    parts: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def accepted(cls, instance: FgppInstance, spec: ProblemSpec, witness: Iterable[int], algorithm: str,
                 stats: dict | None = None, parts=None, value: Fraction | None = None) -> "SolveResult":
        """Build an accepting result after re-verifying the witness.

        ``value`` defaults to ``val(witness)``; callers that accept on a
        different measure (``val*`` for edge-colored instances) pass it
        explicitly and it is checked against ``p`` instead.
        """
        w = instance.graph.check_vertices(witness)
        if len(w) != instance.k:
            raise WitnessError(f"witness has {len(w)} vertices, expected {instance.k}")
        if value is None:
            value = val(instance.graph, spec, w)
        if not spec.meets(value, instance.p):
            raise WitnessError(f"witness value {value} misses threshold {instance.p} ({spec.objective.value})")
        return cls(True, w, value, algorithm, dict(stats or {}), parts)

    @classmethod
    def rejected(cls, algorithm: str, stats: dict | None = None, value: Fraction | None = None) -> "SolveResult":
        return cls(False, None, value, algorithm, dict(stats or {}))


def decide_empty(instance: FgppInstance, spec: ProblemSpec, algorithm: str) -> SolveResult:
    """``k == 0``: the empty set has value 0."""
    if spec.meets(Fraction(0), instance.p):
        return SolveResult.accepted(instance, spec, (), algorithm)
    return SolveResult.rejected(algorithm, value=Fraction(0))


def parse_graph(text: str) -> Graph:
    """Parse the ``p <n> <m>`` / ``e <u> <v>`` edge-list format."""
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("second header line", lineno)
            if len(parts) != 3:
                raise ParseError("header must be 'p <n> <m>'", lineno)
            try:
                n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if n < 0 or declared_m < 0:
                raise ParseError("header counts must be nonnegative", lineno)
        elif tag == "e":
            if n is None:
                raise ParseError("edge line before header", lineno)
            if len(parts) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("edge endpoints must be integers", lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"endpoint out of range 0..{n - 1}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise ParseError(f"duplicate edge {pair[0]} {pair[1]}", lineno)
            seen.add(pair)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p <n> <m>' header")
    if len(edges) != declared_m:
        raise ParseError(f"header declares {declared_m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def format_graph(graph: Graph) -> str:
    lines = [f"p {graph.n} {graph.m}"]
    lines.extend(f"e {u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"
