"""
Uniform sampling from Young subgroups.

A member is an independent seeded shuffle inside each block. The shuffle of
block b under seed s is a pure function of (s, kind, b), so a single point
can be evaluated later without building the whole member table.
"""
import threading
from collections import OrderedDict
from typing import Callable, Dict, Hashable, Tuple

import numpy as np

from app.bitdomain import PermutationTable, SeedLike, generator, normalize_seed
from app.core.config import settings
from app.core.monitoring import block_materializations_total

from .models import PartitionKind, YoungSubgroup

BlockTables = Tuple[np.ndarray, np.ndarray]


def block_permutation(seed: SeedLike, kind: PartitionKind, block_id: int, size: int) -> np.ndarray:
    """Local-index permutation of one block: position q maps to local index perm[q]."""
    if size <= 1:
        return np.zeros(size, dtype=np.int64)
    return generator(seed, "block", kind, block_id).permutation(size)


class BlockCache:
    """
    LRU of (forward, backward) block tables, bounded by entry count and by
    the total number of cached points. Blocks above max_block are never held.
    """

    def __init__(self, max_entries: int, max_points: int, max_block: int):
        self.max_entries = max_entries
        self.max_points = max_points
        self.max_block = min(max_block, max_points)
        self._entries: "OrderedDict[Hashable, BlockTables]" = OrderedDict()
        self._points = 0
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable, size: int, build: Callable[[], BlockTables]) -> BlockTables:
        with self._lock:
            cached = self._entries.get(key)
            if cached is not None:
                self._entries.move_to_end(key)
                self.hits += 1
                return cached
            self.misses += 1

        tables = build()
        if size > self.max_block:
            return tables

        with self._lock:
            if key not in self._entries:
                self._entries[key] = tables
                self._points += size
                while self._points > self.max_points or len(self._entries) > self.max_entries:
                    _, (evicted, _) = self._entries.popitem(last=False)
                    self._points -= evicted.size
        return tables

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self._points = 0
            self.hits = self.misses = 0

    def info(self) -> Dict[str, int]:
        with self._lock:
            return {
                "entries": len(self._entries),
                "points": self._points,
                "bytes": sum(fwd.nbytes + bwd.nbytes for fwd, bwd in self._entries.values()),
                "hits": self.hits,
                "misses": self.misses,
            }


BLOCK_CACHE = BlockCache(
    max_entries=settings.BLOCK_CACHE_ENTRIES,
    max_points=settings.BLOCK_CACHE_BUDGET_POINTS,
    max_block=settings.BLOCK_CACHE_MAX_POINTS,
)


def _block_tables(seed: int, kind: PartitionKind, block_id: int, size: int) -> BlockTables:
    block_materializations_total.labels(kind=kind).inc()
    forward = block_permutation(seed, kind, block_id, size).astype(np.uint32)
    backward = np.empty_like(forward)
    backward[forward] = np.arange(size, dtype=np.uint32)
    forward.setflags(write=False)
    backward.setflags(write=False)
    return forward, backward


def block_tables(seed: SeedLike, kind: PartitionKind, block_id: int, size: int) -> BlockTables:
    """(forward, backward) local permutations of a block, through the bounded cache."""
    seed = normalize_seed(seed)
    return BLOCK_CACHE.get((seed, kind, block_id, size), size, lambda: _block_tables(seed, kind, block_id, size))


def clear_block_cache() -> None:
    BLOCK_CACHE.clear()


def block_cache_info() -> Dict[str, int]:
    return BLOCK_CACHE.info()


def member_forward(group: YoungSubgroup, seed: SeedLike) -> np.ndarray:
    """Forward table of the seeded group member, without building a PermutationTable."""
    partition = group.partition
    forward = np.arange(group.params.domain_size, dtype=np.uint32)
    for block_id, points in enumerate(partition.blocks):
        if len(points) <= 1:
            continue
        perm = block_permutation(seed, partition.kind, block_id, len(points))
        forward[points] = points[perm]
    return forward


def sample_member(group: YoungSubgroup, seed: SeedLike) -> PermutationTable:
    """Uniform element of the group: an unbiased shuffle inside every block, identity elsewhere."""
    return PermutationTable(n=group.params.n, forward=member_forward(group, seed), params=group.params)
