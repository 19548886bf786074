"""
Data models for the separation counterexample and preprocessing inversion.
"""
from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

from app.core.config import settings
from app.core.errors import ParameterError


@dataclass(frozen=True)
class TrapdoorFunction:
    """
    A function {0,1}^{2n} -> {0,1}^n stored densely, indexed by x || u.

    When planted, g(x || s) = x for every x and all other entries are uniform.
    The foil h (planted=False) is a plain uniform function; s is still drawn
    so both worlds consume the same coins.
    """
    n: int
    s: int
    table: np.ndarray = field(repr=False)
    planted: bool = True

    def __post_init__(self) -> None:
        if not 1 <= self.n <= settings.MAX_TRAPDOOR_N:
            raise ParameterError(f"trapdoor n must lie in [1, {settings.MAX_TRAPDOOR_N}]")
        if self.table.shape != (1 << (2 * self.n),):
            raise ParameterError("trapdoor table must have 2^(2n) entries")
        if not 0 <= self.s < (1 << self.n):
            raise ParameterError("trapdoor s must be an n-bit word")

    @property
    def in_bits(self) -> int:
        return 2 * self.n

    def __call__(self, x: int) -> int:
        if not 0 <= x < self.table.size:
            raise ParameterError(f"input {x} outside the {self.in_bits}-bit domain")
        return int(self.table[x])

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "planted": self.planted}


@dataclass
class HellmanTables:
    """
    k tables of m chains of length t.

    Chain step: x -> R_i(f(x)) with R_i(y) = ((y * a_i) ^ b_i) mod 2^r, a_i odd.
    Each table keeps its (start, end) pairs sorted by end point.
    """
    r: int
    m: int
    t: int
    k: int
    multipliers: np.ndarray
    offsets: np.ndarray
    starts: np.ndarray
    ends: np.ndarray
    offline_queries: int = 0

    @property
    def advice_bits(self) -> int:
        return self.k * self.m * 2 * self.r

    @property
    def worst_case_queries(self) -> int:
        return self.k * (self.t * (self.t + 1) // 2 + self.t)

    def reduce(self, table_index: int, y: Any) -> Any:
        mask = (1 << self.r) - 1
        return ((y * int(self.multipliers[table_index])) ^ int(self.offsets[table_index])) & mask

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "m": self.m,
            "t": self.t,
            "k": self.k,
            "advice_bits": self.advice_bits,
            "offline_queries": self.offline_queries,
        }
