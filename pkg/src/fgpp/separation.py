"""Universal sets and the node/edge coloring drivers built on them.

A family row is a function ``f: {0..n-1} -> {0, 1}``; value ``0`` colors the
corresponding vertex or edge red and ``1`` colors it blue.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import InputError, ResourceLimitError
from .graph import Color, FgppInstance, as_rational

MODES = ("exhaustive", "verified", "monte-carlo")
DEFAULT_MAX_WORK = 10**8

_NODE_STREAM = 1
_EDGE_STREAM = 2


@dataclass(frozen=True)
class UniversalConfig:
    mode: str = "verified"
    seed: int = 0
    error_prob: Fraction = Fraction(1, 1000)
    max_work: int = DEFAULT_MAX_WORK

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown universal-set mode {self.mode!r}")
        eps = as_rational(self.error_prob)
        if not 0 < eps < 1:
            raise InputError("error probability must lie strictly between 0 and 1")
        object.__setattr__(self, "error_prob", eps)


@dataclass(frozen=True, eq=False)
class UniversalSetFamily:
    """Rows of ``functions`` (shape ``(size, n)``, dtype uint8) are the members.

    ``mode`` is the construction actually used, which can be ``exhaustive``
    even when another mode was requested (see :func:`build_universal_set`).
    """

    n: int
    t: int
    functions: np.ndarray
    mode: str
    seed: int
    failure_bound: Fraction | None = None

    def __len__(self) -> int:
        return int(self.functions.shape[0])

    def rows_as_strings(self) -> list[str]:
        return ["".join("1" if b else "0" for b in row) for row in self.functions]


def monte_carlo_size(n: int, t: int, eps: Fraction) -> int:
    """``ceil(2^t * ln(C(n, t) * 2^t / eps))``: union bound over all (I, pattern) pairs."""
    if t <= 0:
        return 1
    pairs = math.comb(n, t) * 2**t
    return max(1, math.ceil(2**t * (math.log(pairs) - math.log(float(eps)))))


def estimated_size(n: int, t: int, mode: str, eps: Fraction = Fraction(1, 1000)) -> int:
    """Expected number of rows :func:`build_universal_set` returns."""
    t = max(0, min(t, n))
    if t == 0:
        return 1
    full = 2**n if n < 63 else None
    if mode == "exhaustive" or t == n:
        return 2**n
    if mode == "monte-carlo":
        size = monte_carlo_size(n, t, eps)
    else:
        size = max(2**t, math.ceil(2**t * math.log(math.comb(n, t) * 2**t)))
    if full is not None and size >= full:
        return full
    return size


def _rng(seed: int, stream: int, n: int, t: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, stream, n, t])))


def _exhaustive(n: int, max_work: int) -> np.ndarray:
    if n >= 40 or (2**n) * max(n, 1) > max_work:
        raise ResourceLimitError(f"exhaustive family over {n} coordinates exceeds the work cap")
    idx = np.arange(2**n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


def _verified(n: int, t: int, rng: np.random.Generator) -> np.ndarray:
    """Draw random rows until every (index set, pattern) pair is hit; keep that prefix."""
    subsets = np.array(list(combinations(range(n), t)), dtype=np.int64)
    weights = (1 << np.arange(t, dtype=np.int64))
    cols = np.arange(len(subsets))
    covered = np.zeros((len(subsets), 2**t), dtype=bool)
    remaining = covered.size
    batch = max(64, 2 ** (t + 2))
    chunks = []
    while remaining:
        rows = rng.integers(0, 2, size=(batch, n), dtype=np.uint8)
        patterns = (rows[:, subsets].astype(np.int64) * weights).sum(axis=2)
        for r in range(batch):
            hit = covered[cols, patterns[r]]
            if not hit.all():
                covered[cols, patterns[r]] = True
                remaining -= int((~hit).sum())
                if remaining == 0:
                    chunks.append(rows[: r + 1])
                    break
        else:
            chunks.append(rows)
    return np.concatenate(chunks, axis=0)


@lru_cache(maxsize=512)
def _build(n: int, t: int, mode: str, seed: int, eps: Fraction, max_work: int, stream: int) -> UniversalSetFamily:
    if t == 0:
        # no coordinate is constrained: one all-blue row suffices
        rows = np.ones((1, n), dtype=np.uint8)
        return _freeze(UniversalSetFamily(n, 0, rows, "exhaustive", seed))
    small = n < 40 and (2**n) * n <= max_work
    if mode == "exhaustive" or t == n:
        return _freeze(UniversalSetFamily(n, t, _exhaustive(n, max_work), "exhaustive", seed))
    if mode == "monte-carlo":
        size = monte_carlo_size(n, t, eps)
        if small and size >= 2**n:
            return _freeze(UniversalSetFamily(n, t, _exhaustive(n, max_work), "exhaustive", seed))
        if size * n > max_work:
            raise ResourceLimitError(f"monte-carlo family of {size} rows exceeds the work cap")
        rows = _rng(seed, stream, n, t).integers(0, 2, size=(size, n), dtype=np.uint8)
        return _freeze(UniversalSetFamily(n, t, rows, "monte-carlo", seed, eps))
    if small and estimated_size(n, t, "verified") >= 2**n:
        return _freeze(UniversalSetFamily(n, t, _exhaustive(n, max_work), "exhaustive", seed))
    pairs = math.comb(n, t) * 2**t
    if pairs > max_work:
        raise ResourceLimitError(f"verifying an ({n},{t}) family needs {pairs} checks, over the work cap")
    rows = _verified(n, t, _rng(seed, stream, n, t))
    return _freeze(UniversalSetFamily(n, t, rows, "verified", seed))


def _freeze(family: UniversalSetFamily) -> UniversalSetFamily:
    family.functions.setflags(write=False)
    return family


def build_universal_set(n: int, t: int, mode: str = "verified", seed: int = 0,
                        failure_bound=Fraction(1, 1000), max_work: int = DEFAULT_MAX_WORK,
                        stream: int = _NODE_STREAM) -> UniversalSetFamily:
    """Build an ``(n, t)``-universal family.

    ``exhaustive`` lists all ``2^n`` rows.  ``verified`` draws random rows
    until exhaustive coverage tracking confirms every pattern on every
    ``t``-subset.  ``monte-carlo`` draws ``monte_carlo_size`` rows, which
    misses some pattern with probability at most ``failure_bound``.

    Whenever the random construction would not be smaller than ``2^n`` the
    exhaustive family is returned instead (``mode`` on the result says so).
    Results are cached per argument tuple.
    """
    if mode not in MODES:
        raise InputError(f"unknown universal-set mode {mode!r}")
    if n < 0 or t < 0:
        raise InputError("n and t must be nonnegative")
    if t > n:
        raise InputError(f"strength t={t} exceeds domain size n={n}")
    eps = as_rational(failure_bound)
    if not 0 < eps < 1:
        raise InputError("failure bound must lie strictly between 0 and 1")
    return _build(n, t, mode, int(seed), eps, int(max_work), stream)


def verify_universal(family: UniversalSetFamily, t: int | None = None, max_work: int = DEFAULT_MAX_WORK) -> bool:
    """True iff every ``t``-subset of coordinates sees all ``2^t`` patterns."""
    t = family.t if t is None else t
    n = family.n
    rows = np.asarray(family.functions)
    if t > n:
        return False
    if t == 0:
        return rows.shape[0] > 0
    if rows.shape[0] < 2**t:
        return False
    if math.comb(n, t) * 2**t > max_work:
        raise ResourceLimitError("universal-set verification exceeds the work cap")
    weights = 1 << np.arange(t, dtype=np.int64)
    for subset in combinations(range(n), t):
        codes = rows[:, list(subset)].astype(np.int64) @ weights
        if np.unique(codes).size != 2**t:
            return False
    return True


class ColoredFamily(Sequence):
    """Lazy sequence of colored copies of one instance, one per family row."""

    def __init__(self, instance: FgppInstance, family: UniversalSetFamily, target: str):
        self.instance = instance
        self.family = family
        self.target = target  # "nodes" or "edges"

    def __len__(self):
        return len(self.family)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        colors = tuple(Color.RED if b == 0 else Color.BLUE for b in self.family.functions[i])
        inst = self.instance
        if self.target == "nodes":
            return FgppInstance(inst.graph, inst.k, inst.p, node_colors=colors, origin=(self.family.seed, i))
        return FgppInstance(inst.graph, inst.k, inst.p, edge_colors=colors, origin=(self.family.seed, i))


def _check_uncolored(instance: FgppInstance):
    if instance.node_colors is not None or instance.edge_colors is not None:
        raise InputError("instance is already colored")


def color_nodes(instance: FgppInstance, q: int, config: UniversalConfig = UniversalConfig()) -> ColoredFamily:
    """One node-colored copy per row of an ``(n, min(q, n))``-universal set."""
    _check_uncolored(instance)
    if q < 0:
        raise InputError("strength must be nonnegative")
    n = instance.graph.n
    fam = build_universal_set(n, min(q, n), config.mode, config.seed, config.error_prob,
                              config.max_work, _NODE_STREAM)
    return ColoredFamily(instance, fam, "nodes")


def color_edges(instance: FgppInstance, t: int, config: UniversalConfig = UniversalConfig()) -> ColoredFamily:
    """One edge-colored copy per row of an ``(m, t)``-universal set, ``t`` clamped to ``[0, m]``."""
    _check_uncolored(instance)
    m = instance.graph.m
    fam = build_universal_set(m, max(0, min(t, m)), config.mode, config.seed, config.error_prob,
                              config.max_work, _EDGE_STREAM)
    return ColoredFamily(instance, fam, "edges")
