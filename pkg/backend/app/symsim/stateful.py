"""
Classic lazily-sampled permutation simulator.

It keeps a growing table of answers and draws fresh ones from a single
random stream, so its answers depend on the order of earlier queries. It
is consistent with f on inputs x || 0^c, but it is NOT stateless and must
be rejected by the replay check in games.lift_reset_to_precomp.
"""
from typing import Dict, Optional

from app.bitdomain import SpongeParams, generator
from app.core.errors import LabError
from app.sponge import CountingOracle, Direction

from .models import FunctionOracle, SharedRandomness

MAX_REJECTIONS = 10_000


class LazyPermutationSimulator:
    def __init__(self, params: SpongeParams, f_oracle: FunctionOracle, sr: SharedRandomness):
        self.params = params
        self.sr = sr
        self.f_oracle = CountingOracle(f_oracle)
        self._rng = generator(sr.seed, "lazy-simulator")
        self._forward: Dict[int, int] = {}
        self._backward: Dict[int, int] = {}

    @property
    def f_queries(self) -> int:
        return self.f_oracle.queries

    def _draw(self, taken: Dict[int, int], prefix: Optional[int] = None) -> int:
        params = self.params
        for _ in range(MAX_REJECTIONS):
            if prefix is None:
                candidate = int(self._rng.integers(0, params.domain_size))
            else:
                candidate = (prefix << params.c) | int(self._rng.integers(0, params.capacity_size))
            if candidate not in taken:
                return candidate
        raise LabError("lazy simulator ran out of fresh images")

    def fwd(self, w: int) -> int:
        if w in self._forward:
            return self._forward[w]
        c = self.params.c
        if w & (self.params.capacity_size - 1) == 0:
            image = self._draw(self._backward, prefix=self.f_oracle(w >> c))
        else:
            image = self._draw(self._backward)
        self._forward[w], self._backward[image] = image, w
        return image

    def inv(self, w: int) -> int:
        if w in self._backward:
            return self._backward[w]
        preimage = self._draw(self._forward)
        self._forward[preimage], self._backward[w] = w, preimage
        return preimage

    def query(self, direction: Direction, w: int) -> int:
        return self.fwd(w) if Direction(direction) is Direction.FWD else self.inv(w)

    __call__ = fwd
