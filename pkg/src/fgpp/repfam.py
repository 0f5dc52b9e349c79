"""Max/min representative families and the Decrease step for k'-WEC.

The representative-family construction here is a randomized separating
collection: random colorings ``U -> {0..k-1}`` are drawn and, for every
coloring and every set of ``p`` colors, the best member colored injectively
with exactly those colors is retained.  If some coloring is injective on
``X`` together with a forbidden set ``Y``, the member kept for ``X``'s color
class avoids ``Y`` and is at least as good as ``X``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import InputError, ResourceLimitError
from .graph import Objective, as_rational, mask_of

log = logging.getLogger(__name__)

REP_MODES = ("identity", "separating", "verified")
DEFAULT_MAX_WORK = 10**8

Member = tuple[tuple[int, ...], Fraction]


def _norm_members(universe: int, members) -> tuple[Member, ...]:
    out = []
    for s, w in members:
        vs = tuple(sorted(set(int(v) for v in s)))
        if not vs:
            raise InputError("family sets must be nonempty")
        if vs[0] < 0 or vs[-1] >= universe:
            raise InputError(f"set {vs} leaves the universe 0..{universe - 1}")
        out.append((vs, as_rational(w)))
    return tuple(out)


@dataclass(frozen=True)
class WeightedFamily:
    """Weighted sets that all have the same size."""

    universe: int
    members: tuple[Member, ...]

    def __post_init__(self):
        members = _norm_members(self.universe, self.members)
        if len({len(s) for s, _ in members}) > 1:
            raise InputError("weighted family members must share one size")
        object.__setattr__(self, "members", members)

    @property
    def set_size(self) -> int | None:
        return len(self.members[0][0]) if self.members else None

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class WecInstance:
    """Weighted k'-exact cover: pick disjoint sets covering exactly ``k`` elements."""

    universe: int
    family: tuple[Member, ...]
    k: int
    p: Fraction
    objective: Objective = Objective.MAX

    def __post_init__(self):
        if self.k < 0:
            raise InputError("k' must be nonnegative")
        object.__setattr__(self, "family", _norm_members(self.universe, self.family))
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "objective", Objective(self.objective))

    @property
    def is_max(self) -> bool:
        return self.objective is Objective.MAX

    def meets(self, value: Fraction) -> bool:
        return value >= self.p if self.is_max else value <= self.p


def _preference_order(members, objective: Objective) -> list[int]:
    """Member indices best first; ties go to the lexicographically smallest set."""
    sign = -1 if Objective(objective) is Objective.MAX else 1
    return sorted(range(len(members)), key=lambda i: (sign * members[i][1], members[i][0]))


def separating_rounds(k: int, family_size: int, universe: int, p: int, eps: Fraction) -> int:
    """Colorings needed so that every (X, Y) pair is separated with probability ``1 - eps``."""
    pairs = max(1, family_size) * max(1, math.comb(universe, k - p))
    return max(1, math.ceil(math.e**k * k * (math.log(pairs) - math.log(float(eps)))))


def rep_alg(family: WeightedFamily, k: int, objective=Objective.MAX, mode: str = "separating",
            seed: int = 0, failure_bound=Fraction(1, 1000),
            max_work: int = DEFAULT_MAX_WORK) -> WeightedFamily:
    """Subfamily that max- or min-represents ``family`` for forbidden sets of size ``<= k - p``.

    ``identity`` returns the input.  ``separating`` draws the number of
    colorings given by :func:`separating_rounds`, so the output represents the
    input with probability at least ``1 - failure_bound``.  ``verified`` keeps
    drawing colorings until :func:`verify_representative` accepts.
    """
    if mode not in REP_MODES:
        raise InputError(f"unknown representative-family mode {mode!r}")
    objective = Objective(objective)
    members = family.members
    if not members:
        return family
    p = family.set_size
    if p > k:
        raise InputError(f"set size {p} exceeds k={k}")
    if mode == "identity":
        return family
    order = _preference_order(members, objective)
    if p == k:
        # only Y = {} is allowed, so one best member represents everything
        return WeightedFamily(family.universe, (members[order[0]],))

    rank = np.empty(len(members), dtype=np.int64)
    rank[np.array(order)] = np.arange(len(members))
    sets = np.array([s for s, _ in members], dtype=np.int64)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, 3, family.universe, k, p])))
    retained: set[int] = set()
    target = separating_rounds(k, len(members), family.universe, p, as_rational(failure_bound))
    drawn = 0
    batch = 32
    while True:
        size = batch if mode == "verified" else min(batch, target - drawn)
        if size * len(members) * p > max_work:
            size = max(1, max_work // (len(members) * p))
        colorings = rng.integers(0, k, size=(size, family.universe), dtype=np.int64)
        retained.update(_retain(colorings, sets, rank, k))
        drawn += size
        if len(retained) == len(members):
            break
        if mode == "separating":
            if drawn >= target:
                break
        else:
            candidate = WeightedFamily(family.universe, tuple(members[i] for i in sorted(retained)))
            if verify_representative(family, candidate, k, objective, max_work):
                break
        batch = min(batch * 2, 4096)
    kept = tuple(members[i] for i in sorted(retained))
    log.debug("rep_alg: kept %d of %d sets (k=%d, p=%d, %d colorings)", len(kept), len(members), k, p, drawn)
    return WeightedFamily(family.universe, kept)


def _retain(colorings: np.ndarray, sets: np.ndarray, rank: np.ndarray, k: int) -> np.ndarray:
    """Indices of the best-ranked injectively colored member per (coloring, color set)."""
    colors = colorings[:, sets]  # (B, |S|, p)
    bits = np.left_shift(np.int64(1), colors)
    color_set = bits.sum(axis=2)
    injective = np.bitwise_or.reduce(bits, axis=2) == color_set
    b_idx, s_idx = np.nonzero(injective)
    if b_idx.size == 0:
        return np.empty(0, dtype=np.int64)
    cs = color_set[b_idx, s_idx]
    order = np.lexsort((rank[s_idx], cs, b_idx))
    b_sorted, cs_sorted = b_idx[order], cs[order]
    first = np.ones(len(order), dtype=bool)
    first[1:] = (b_sorted[1:] != b_sorted[:-1]) | (cs_sorted[1:] != cs_sorted[:-1])
    return np.unique(s_idx[order][first])


def verify_representative(original: WeightedFamily, candidate: WeightedFamily, k: int,
                          objective=Objective.MAX, max_work: int = DEFAULT_MAX_WORK) -> bool:
    """Check the representation property by brute force over every ``X`` and ``Y``.

    ``candidate`` must be a subfamily of ``original``; for every ``X`` in the
    original and every ``Y`` outside ``X`` with ``|Y| <= k - p`` some
    candidate member avoiding ``Y`` must be at least as good as ``X``.
    """
    objective = Objective(objective)
    if not original.members:
        return True
    p = original.set_size
    q = k - p
    if q < 0:
        raise InputError(f"set size {p} exceeds k={k}")
    pool = set(original.members)
    if any(m not in pool for m in candidate.members):
        return False
    universe = original.universe
    y_count = sum(math.comb(universe - p, j) for j in range(0, min(q, universe - p) + 1))
    if y_count * len(original.members) > max_work:
        raise ResourceLimitError("representative-family verification exceeds the work cap")
    is_max = objective is Objective.MAX
    cand = [(mask_of(s), w) for s, w in candidate.members]
    best_cache: dict[int, Fraction | None] = {}

    def best_avoiding(ymask: int):
        if ymask not in best_cache:
            ws = [w for m, w in cand if not m & ymask]
            best_cache[ymask] = (max(ws) if is_max else min(ws)) if ws else None
        return best_cache[ymask]

    for s, w in original.members:
        rest = [v for v in range(universe) if v not in s]
        for j in range(0, min(q, len(rest)) + 1):
            for Y in combinations(rest, j):
                best = best_avoiding(mask_of(Y))
                if best is None or (best < w if is_max else best > w):
                    return False
    return True


def decrease(instance: WecInstance, mode: str = "separating", threshold: int = 0, seed: int = 0,
             failure_bound=Fraction(1, 1000), max_work: int = DEFAULT_MAX_WORK) -> WecInstance:
    """Replace each size class ``S_i`` (``1 <= i <= k'``) by a representative subfamily.

    Size classes with at most ``threshold`` members are kept as they are.
    Sets larger than ``k'`` cannot appear in a solution and are dropped.
    """
    k = instance.k
    by_size: dict[int, list[Member]] = {}
    for s, w in instance.family:
        if len(s) <= k:
            by_size.setdefault(len(s), []).append((s, w))
    out: list[Member] = []
    for i in sorted(by_size):
        group = by_size[i]
        if mode == "identity" or len(group) <= threshold:
            out.extend(group)
            continue
        rep = rep_alg(WeightedFamily(instance.universe, tuple(group)), k, instance.objective, mode,
                      seed=seed + i, failure_bound=failure_bound, max_work=max_work)
        out.extend(rep.members)
    if instance.universe > 1 and k > 0:
        bound = 2.5**k * math.log(instance.universe)
        if len(out) > bound:
            log.info("decrease kept %d sets, above the 2.5^k' log|U| reference size %.1f", len(out), bound)
    return WecInstance(instance.universe, tuple(out), k, instance.p, instance.objective)
