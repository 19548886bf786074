"""
The transversal permutation pi_f and the simulator's shared randomness.
"""
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Iterator

import numpy as np

from app.bitdomain import (
    FunctionTable,
    PermutationTable,
    SeedLike,
    SpongeParams,
    derive_seed,
    join3_int,
    normalize_seed,
    split3_int,
)

FunctionOracle = Callable[[int], int]


@dataclass(frozen=True)
class Transversal:
    """
    pi_f(x || g || y) = (y xor f(x)) || g || x, and its inverse
    pi_f^-1(a || g || b) = b || g || (a xor f(b)).

    Each direction costs exactly one call to f_oracle.
    """
    params: SpongeParams
    f_oracle: FunctionOracle

    def fwd(self, w: int) -> int:
        x, g, y = split3_int(w, self.params)
        return join3_int(y ^ self.f_oracle(x), g, x, self.params)

    def inv(self, w: int) -> int:
        a, g, b = split3_int(w, self.params)
        return join3_int(b, g, a ^ self.f_oracle(b), self.params)


def transversal_table(f: FunctionTable) -> PermutationTable:
    """Full table of pi_f, computed without going through an oracle."""
    params = f.params
    params.require_table_mode()
    r, n = params.r, params.n
    w = np.arange(params.domain_size, dtype=np.uint32)
    x = w >> np.uint32(n - r)
    g = (w >> np.uint32(r)) & np.uint32((1 << params.middle) - 1)
    y = w & np.uint32(params.rate_size - 1)
    out = ((y ^ f.table[x]) << np.uint32(n - r)) | (g << np.uint32(r)) | x
    return PermutationTable(n=n, forward=out, params=params)


@dataclass(frozen=True)
class SharedRandomness:
    """
    Coins shared by the offline and online simulator.

    A 256-bit seed; sigma and omega each get a domain-separated sub-seed.
    """
    SEED_BITS: ClassVar[int] = 256

    seed: int
    sigma_seed: int = field(init=False, repr=False)
    omega_seed: int = field(init=False, repr=False)

    def __post_init__(self) -> None:
        seed = normalize_seed(self.seed)
        object.__setattr__(self, "seed", seed)
        object.__setattr__(self, "sigma_seed", derive_seed(seed, "sigma"))
        object.__setattr__(self, "omega_seed", derive_seed(seed, "omega"))

    @classmethod
    def from_seed(cls, seed: SeedLike, *labels: str) -> "SharedRandomness":
        return cls(derive_seed(seed, "sr", *labels))

    @staticmethod
    def enumerate_space(bits: int) -> Iterator["SharedRandomness"]:
        """The restricted SR space {0, ..., 2^bits - 1} used for exact shared-randomness removal."""
        for value in range(1 << bits):
            yield SharedRandomness(value)
