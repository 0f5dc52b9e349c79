from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from ..errors import InputError
from ..graph import as_rational
from ..repfam import REP_MODES
from ..separation import MODES, UniversalConfig

ALGORITHM_NAMES = ("auto", "fgpp", "deg", "maxcut", "palg", "fastpalg", "oracle")


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by every solver.

    ``route_work`` is the estimated work (family size times instance size,
    plus coverage checks for verified families) above which ``auto`` never
    picks a coloring-based algorithm.  Below it, coloring is picked when its
    estimate is small or no larger than that of the general algorithm.
    ``decrease_threshold`` is the size-class cardinality above which Decrease
    actually prunes.
    """

    algorithm: str = "auto"
    us_mode: str = "verified"
    seed: int = 0
    error_prob: Fraction = Fraction(1, 1000)
    rounding: str = "floor"
    decrease_threshold: int = 5000
    decrease_mode: str = "separating"
    threads: int = 1
    max_work: int = 10**8
    route_work: int = 2 * 10**7
    oracle_fallback: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHM_NAMES:
            raise InputError(f"unknown algorithm {self.algorithm!r}")
        if self.us_mode not in MODES:
            raise InputError(f"unknown universal-set mode {self.us_mode!r}")
        if self.rounding not in ("floor", "ceil"):
            raise InputError("rounding must be floor or ceil")
        if self.decrease_mode not in REP_MODES:
            raise InputError(f"unknown decrease mode {self.decrease_mode!r}")
        if self.threads < 1:
            raise InputError("threads must be at least 1")
        object.__setattr__(self, "error_prob", as_rational(self.error_prob))

    @property
    def universal(self) -> UniversalConfig:
        return UniversalConfig(self.us_mode, self.seed, self.error_prob, self.max_work)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["error_prob"] = str(self.error_prob)
        return d
