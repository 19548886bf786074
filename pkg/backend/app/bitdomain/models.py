"""
Domain parameters, fixed-width words and dense truth tables.

Bit order: the "first r bits" of a word are its most significant r bits,
so x || 0^c is the integer x << c.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.errors import ParameterError, UnsupportedRegimeError


@dataclass(frozen=True)
class SpongeParams:
    """Rate r and capacity c of the one-round sponge; the single source of domain sizing."""
    r: int
    c: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.c < 1:
            raise ParameterError(f"rate and capacity must be >= 1 (got r={self.r}, c={self.c})")
        if self.r > self.c:
            raise UnsupportedRegimeError(
                f"construction requires r <= c (got r={self.r}, c={self.c})"
            )
        if self.n > settings.MAX_EXACT_N:
            raise ParameterError(f"n = {self.n} exceeds guardrail MAX_EXACT_N={settings.MAX_EXACT_N}")

    @property
    def n(self) -> int:
        return self.r + self.c

    @property
    def lam(self) -> int:
        """lambda = min(r, c), which is r in the supported regime."""
        return min(self.r, self.c)

    @property
    def middle(self) -> int:
        """Width of the middle word g in the (r, n-2r, r) decomposition."""
        return self.n - 2 * self.r

    @property
    def domain_size(self) -> int:
        return 1 << self.n

    @property
    def rate_size(self) -> int:
        return 1 << self.r

    @property
    def capacity_size(self) -> int:
        return 1 << self.c

    def require_table_mode(self) -> None:
        if self.n > settings.MAX_TABLE_N:
            raise ParameterError(
                f"n = {self.n} exceeds table-mode guardrail MAX_TABLE_N={settings.MAX_TABLE_N}"
            )

    def require_enumeration(self) -> None:
        if self.domain_size > settings.MAX_ENUM_POINTS:
            raise ParameterError(
                f"2^n = {self.domain_size} exceeds enumeration guardrail "
                f"MAX_ENUM_POINTS={settings.MAX_ENUM_POINTS}"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {"r": self.r, "c": self.c, "n": self.n, "lambda": self.lam}


@dataclass(frozen=True)
class Word:
    """An unsigned integer carried together with its declared bit width."""
    value: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 0:
            raise ParameterError(f"negative width {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ParameterError(f"value {self.value} does not fit in {self.width} bits")

    def __int__(self) -> int:
        return self.value

    def __xor__(self, other: "Word") -> "Word":
        if other.width != self.width:
            raise ParameterError(f"xor width mismatch: {self.width} vs {other.width}")
        return Word(self.value ^ other.value, self.width)

    def concat(self, other: "Word") -> "Word":
        return Word((self.value << other.width) | other.value, self.width + other.width)

    def split(self, *widths: int) -> Tuple["Word", ...]:
        """Split into consecutive words, most significant first."""
        if sum(widths) != self.width:
            raise ParameterError(f"split widths {widths} do not sum to {self.width}")
        parts = []
        remaining = self.width
        for w in widths:
            remaining -= w
            parts.append(Word((self.value >> remaining) & ((1 << w) - 1), w))
        return tuple(parts)

    def bits(self) -> str:
        return format(self.value, f"0{self.width}b") if self.width else ""


def _frozen_array(values: Any) -> np.ndarray:
    arr = np.array(values, dtype=np.uint32, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """Truth table of f: {0,1}^r -> {0,1}^r."""
    params: SpongeParams
    table: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_array(self.table)
        size = self.params.rate_size
        if arr.shape != (size,):
            raise ParameterError(f"function table needs {size} entries, got shape {arr.shape}")
        if size and int(arr.max()) >= size:
            raise ParameterError("function table entry out of range")
        object.__setattr__(self, "table", arr)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __len__(self) -> int:
        return len(self.table)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.params, self.table.tobytes()))

    def as_tuple(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.table)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "function", **self.params.to_dict(), "table": self.table.tolist()}


@dataclass(frozen=True, eq=False)
class PermutationTable:
    """Truth table of a permutation on n-bit words, with its inverse."""
    n: int
    forward: np.ndarray
    backward: Optional[np.ndarray] = None
    params: Optional[SpongeParams] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n > settings.MAX_TABLE_N:
            raise ParameterError(
                f"n = {self.n} exceeds table-mode guardrail MAX_TABLE_N={settings.MAX_TABLE_N}"
            )
        size = 1 << self.n
        fwd = _frozen_array(self.forward)
        if fwd.shape != (size,):
            raise ParameterError(f"permutation table needs {size} entries, got shape {fwd.shape}")
        if int(fwd.max()) >= size:
            raise ParameterError("permutation entry out of range")

        if self.backward is None:
            bwd = np.empty(size, dtype=np.uint32)
            bwd[fwd] = np.arange(size, dtype=np.uint32)
        else:
            bwd = np.array(self.backward, dtype=np.uint32, copy=True)
        bwd.setflags(write=False)

        if self.n <= settings.EXHAUSTIVE_CHECK_N:
            if np.bincount(fwd, minlength=size).max() != 1:
                raise ParameterError("forward table is not a bijection")
            if not np.array_equal(bwd[fwd], np.arange(size, dtype=np.uint32)):
                raise ParameterError("backward table does not invert forward table")
        else:
            sample = np.random.default_rng(self.n).integers(0, size, settings.SPOT_CHECK_POINTS)
            if not np.array_equal(bwd[fwd[sample]], sample.astype(np.uint32)):
                raise ParameterError("backward table does not invert forward table (spot check)")

        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "backward", bwd)

    @classmethod
    def identity(cls, n: int, params: Optional[SpongeParams] = None) -> "PermutationTable":
        ident = np.arange(1 << n, dtype=np.uint32)
        return cls(n=n, forward=ident, backward=ident, params=params)

    @classmethod
    def from_sequence(cls, images: Any, params: Optional[SpongeParams] = None) -> "PermutationTable":
        images = list(images)
        n = max(len(images) - 1, 0).bit_length()
        if 1 << n != len(images):
            raise ParameterError(f"length {len(images)} is not a power of two")
        return cls(n=n, forward=np.array(images), params=params)

    @property
    def size(self) -> int:
        return 1 << self.n

    def fwd(self, w: int) -> int:
        return int(self.forward[w])

    def inv(self, w: int) -> int:
        return int(self.backward[w])

    __call__ = fwd

    def compose(self, other: "PermutationTable") -> "PermutationTable":
        """self after other: w -> self(other(w))."""
        if other.n != self.n:
            raise ParameterError(f"cannot compose widths {self.n} and {other.n}")
        return PermutationTable(
            n=self.n,
            forward=self.forward[other.forward],
            backward=other.backward[self.backward],
            params=self.params or other.params,
        )

    def inverse(self) -> "PermutationTable":
        return PermutationTable(n=self.n, forward=self.backward, backward=self.forward, params=self.params)

    def as_tuple(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.forward)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.forward, other.forward)

    def __hash__(self) -> int:
        return hash((self.n, self.forward.tobytes()))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": "permutation", "n": self.n, "forward": self.forward.tolist()}
        if self.params is not None:
            data.update(r=self.params.r, c=self.params.c)
        return data
