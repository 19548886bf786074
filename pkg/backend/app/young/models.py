"""
Block partitions of {0,1}^n, the Young subgroups they define, and the
double-coset data reported by the census.

Block ids are closed-form in the point:
    A-partition: A_x = { x || y }, id x, local index y.
    B-partition: B_z = { z || 0^c }, id z; B_bot (everything else) has id 2^r
                 and is always ordered last.
"""
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterator, List, Literal, Optional, Tuple

import numpy as np

from app.bitdomain import PermutationTable, SpongeParams
from app.core.errors import ParameterError

PartitionKind = Literal["A", "B"]


@dataclass(frozen=True)
class BlockPartition:
    params: SpongeParams
    kind: PartitionKind

    def __post_init__(self) -> None:
        if self.kind not in ("A", "B"):
            raise ParameterError(f"unknown partition kind {self.kind!r}")

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def num_blocks(self) -> int:
        return self.params.rate_size + (1 if self.kind == "B" else 0)

    @property
    def bottom(self) -> Optional[int]:
        """Id of B_bot, or None for the A-partition."""
        return self.params.rate_size if self.kind == "B" else None

    def block_size(self, block_id: int) -> int:
        self._check_block(block_id)
        if self.kind == "A":
            return self.params.capacity_size
        if block_id == self.bottom:
            return self.params.domain_size - self.params.rate_size
        return 1

    def block_sizes(self) -> List[int]:
        return [self.block_size(b) for b in range(self.num_blocks)]

    def block_of(self, point: int) -> int:
        self._check_point(point)
        c = self.params.c
        if self.kind == "A":
            return point >> c
        if point & (self.params.capacity_size - 1) == 0:
            return point >> c
        return self.params.rate_size

    def block_ids(self, points: np.ndarray) -> np.ndarray:
        """Vectorized block_of."""
        points = np.asarray(points, dtype=np.int64)
        c = self.params.c
        top = points >> c
        if self.kind == "A":
            return top
        low = points & (self.params.capacity_size - 1)
        return np.where(low == 0, top, self.params.rate_size)

    def local_index(self, point: int) -> int:
        """Rank of point inside its block (blocks are sorted ascending)."""
        self._check_point(point)
        c = self.params.c
        low = point & (self.params.capacity_size - 1)
        if self.kind == "A":
            return low
        if low == 0:
            return 0
        return point - (point >> c) - 1

    def point_at(self, block_id: int, index: int) -> int:
        """Inverse of local_index."""
        size = self.block_size(block_id)
        if not 0 <= index < size:
            raise ParameterError(f"index {index} outside block {block_id} of size {size}")
        c = self.params.c
        if self.kind == "A":
            return (block_id << c) | index
        if block_id != self.bottom:
            return block_id << c
        top = index // (self.params.capacity_size - 1)
        return index + top + 1

    def contains(self, block_id: int, point: int) -> bool:
        return self.block_of(point) == block_id

    @cached_property
    def blocks(self) -> List[np.ndarray]:
        """Sorted point lists; materializes B_bot, so meant for small n."""
        self.params.require_table_mode()
        ids = self.block_ids(np.arange(self.params.domain_size))
        return [np.flatnonzero(ids == b).astype(np.uint32) for b in range(self.num_blocks)]

    def _check_point(self, point: int) -> None:
        if not 0 <= point < self.params.domain_size:
            raise ParameterError(f"point {point} is not an {self.n}-bit word")

    def _check_block(self, block_id: int) -> None:
        if not 0 <= block_id < self.num_blocks:
            raise ParameterError(f"no block {block_id} in the {self.kind}-partition")

    def to_dict(self) -> Dict[str, Any]:
        return {**self.params.to_dict(), "kind": self.kind, "block_sizes": self.block_sizes()}


@dataclass(frozen=True)
class YoungSubgroup:
    """All permutations mapping every block of the partition onto itself."""
    partition: BlockPartition

    @property
    def params(self) -> SpongeParams:
        return self.partition.params

    @property
    def order(self) -> int:
        return math.prod(math.factorial(size) for size in self.partition.block_sizes())

    def contains(self, pi: PermutationTable) -> bool:
        points = np.arange(pi.size)
        ids = self.partition.block_ids(points)
        return bool(np.array_equal(self.partition.block_ids(pi.forward), ids))

    def elements(self) -> Iterator[PermutationTable]:
        """Enumerate the whole group (exhaustive mode only)."""
        self.params.require_enumeration()
        blocks = [b.tolist() for b in self.partition.blocks]
        size = self.params.domain_size
        for images in itertools.product(*(itertools.permutations(b) for b in blocks)):
            forward = np.empty(size, dtype=np.uint32)
            for block, image in zip(blocks, images):
                forward[block] = image
            yield PermutationTable(n=self.params.n, forward=forward, params=self.params)


@dataclass(frozen=True)
class CosetSignature:
    """Intersection counts |A_i ∩ pi(B_j)|, rows A-blocks, columns B-blocks with B_bot last."""
    matrix: Tuple[Tuple[int, ...], ...]

    @property
    def flat(self) -> Tuple[int, ...]:
        return tuple(v for row in self.matrix for v in row)

    @property
    def row_sums(self) -> List[int]:
        return [sum(row) for row in self.matrix]

    @property
    def col_sums(self) -> List[int]:
        return [sum(col) for col in zip(*self.matrix)]

    def sponge_table(self) -> Tuple[int, ...]:
        """Sp^pi for any pi in the coset: column z has its single 1 in row Sp(z)."""
        columns = list(zip(*self.matrix))[:-1]
        return tuple(col.index(1) for col in columns)

    def to_dict(self) -> Dict[str, Any]:
        return {"matrix": [list(row) for row in self.matrix]}


@dataclass
class CensusEntry:
    signature: CosetSignature
    size: int
    factorizations: int
    representative: Tuple[int, ...]
    consistent: bool = True

    @property
    def example_f(self) -> Tuple[int, ...]:
        return self.signature.sponge_table()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "signature": self.signature.to_dict()["matrix"],
            "size": self.size,
            "factorizations": self.factorizations,
            "example_f": list(self.example_f),
        }


@dataclass
class CosetCensus:
    params: SpongeParams
    h_order: int
    k_order: int
    entries: Dict[CosetSignature, CensusEntry] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, signature: CosetSignature) -> CensusEntry:
        return self.entries[signature]

    def __iter__(self) -> Iterator[CensusEntry]:
        return iter(self.entries.values())

    @property
    def total(self) -> int:
        return sum(entry.size for entry in self)

    @property
    def consistent(self) -> bool:
        return all(entry.consistent for entry in self)

    def sizes(self) -> List[int]:
        return sorted((entry.size for entry in self), reverse=True)

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.params.to_dict(),
            "h_order": self.h_order,
            "k_order": self.k_order,
            "group_order": self.total,
            "cosets": [entry.to_dict() for entry in self],
        }
