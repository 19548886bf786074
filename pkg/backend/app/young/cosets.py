"""
Double cosets H x K of S_{2^n} for the sponge partitions.

H stabilizes the A-partition, K stabilizes the B-partition. Two
permutations share a double coset iff their intersection-count signatures
agree, and the signature records exactly the sponge truth table.
"""
import itertools
from collections import Counter
from functools import partial
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.bitdomain import PermutationTable, SpongeParams
from app.core.errors import ParameterError
from app.core.logging import get_logger
from app.core.parallel import run_chunked

from .models import BlockPartition, CensusEntry, CosetCensus, CosetSignature, YoungSubgroup

logger = get_logger(__name__)


def sponge_partitions(params: SpongeParams) -> Tuple[BlockPartition, BlockPartition]:
    return BlockPartition(params, "A"), BlockPartition(params, "B")


def subgroup_h(params: SpongeParams) -> YoungSubgroup:
    return YoungSubgroup(BlockPartition(params, "A"))


def subgroup_k(params: SpongeParams) -> YoungSubgroup:
    return YoungSubgroup(BlockPartition(params, "B"))


def _signature_counts(forward: np.ndarray, a: BlockPartition, b: BlockPartition) -> np.ndarray:
    """Row-major intersection counts for one or many forward tables (last axis = points)."""
    points = np.arange(forward.shape[-1])
    cells = a.block_ids(forward) * b.num_blocks + b.block_ids(points)
    n_cells = a.num_blocks * b.num_blocks
    if cells.ndim == 1:
        return np.bincount(cells, minlength=n_cells)
    return (cells[..., None] == np.arange(n_cells)).sum(axis=-2)


def _to_signature(flat: np.ndarray, b: BlockPartition) -> CosetSignature:
    rows = np.asarray(flat).reshape(-1, b.num_blocks)
    return CosetSignature(tuple(tuple(int(v) for v in row) for row in rows))


def signature(pi: PermutationTable, a: BlockPartition, b: BlockPartition) -> CosetSignature:
    """Matrix of |A_i ∩ pi(B_j)|."""
    if not a.n == b.n == pi.n:
        raise ParameterError(f"widths disagree: pi {pi.n}, A {a.n}, B {b.n}")
    return _to_signature(_signature_counts(pi.forward, a, b), b)


def same_double_coset(
    pi1: PermutationTable, pi2: PermutationTable, a: BlockPartition, b: BlockPartition
) -> bool:
    return signature(pi1, a, b) == signature(pi2, a, b)


def factorization_count(x: PermutationTable, h: YoungSubgroup, k: YoungSubgroup) -> int:
    """
    Number of (h, k) in H x K with h x k = x, i.e. |x K x^-1 ∩ H|.

    Only K is enumerated; h is determined by k.
    """
    forward = x.forward.astype(np.int64)
    backward = x.backward.astype(np.int64)
    reference = h.partition.block_ids(np.arange(x.size))
    count = 0
    for member in k.elements():
        conjugate = forward[member.forward[backward]]
        if np.array_equal(h.partition.block_ids(conjugate), reference):
            count += 1
    return count


def _census_chunk(params: SpongeParams, first: int) -> Tuple[Counter, Dict[Tuple[int, ...], Tuple[int, ...]]]:
    """Signature counts over all permutations whose image of 0 is `first`."""
    a, b = sponge_partitions(params)
    size = params.domain_size
    rest = [p for p in range(size) if p != first]
    perms = np.array([(first, *tail) for tail in itertools.permutations(rest)], dtype=np.int64)
    flats = _signature_counts(perms, a, b)

    counts: Counter = Counter()
    examples: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for perm, flat in zip(perms, flats):
        key = tuple(int(v) for v in flat)
        counts[key] += 1
        if key not in examples:
            examples[key] = tuple(int(v) for v in perm)
    return counts, examples


def coset_census(params: SpongeParams, workers: Optional[int] = None) -> CosetCensus:
    """
    Enumerate S_{2^n}, group by signature, and report size and factorization count per coset.

    Raises:
        ParameterError: if 2^n exceeds the enumeration guardrail
    """
    params.require_enumeration()
    a, b = sponge_partitions(params)
    h, k = YoungSubgroup(a), YoungSubgroup(b)

    logger.info("Starting coset census", **params.to_dict())
    results = run_chunked(
        partial(_census_chunk, params), list(range(params.domain_size)), workers=workers, desc="census"
    )

    counts: Counter = Counter()
    examples: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for chunk_counts, chunk_examples in results:
        counts.update(chunk_counts)
        for key, perm in chunk_examples.items():
            examples.setdefault(key, perm)

    census = CosetCensus(params=params, h_order=h.order, k_order=k.order)
    for key in sorted(counts):
        sig = _to_signature(np.array(key), b)
        representative = PermutationTable.from_sequence(examples[key], params=params)
        factorizations = factorization_count(representative, h, k)
        census.entries[sig] = CensusEntry(
            signature=sig,
            size=counts[key],
            factorizations=factorizations,
            representative=examples[key],
            consistent=h.order * k.order == counts[key] * factorizations,
        )

    logger.info(
        "Coset census complete",
        cosets=len(census),
        group_order=census.total,
        consistent=census.consistent,
    )
    return census


def double_coset_multiset(
    x: PermutationTable, h: YoungSubgroup, k: YoungSubgroup
) -> Counter:
    """Multiset { h x k : h in H, k in K } keyed by forward tuples (exhaustive)."""
    products: Counter = Counter()
    members_k: List[PermutationTable] = list(k.elements())
    for member_h in h.elements():
        left = member_h.compose(x)
        for member_k in members_k:
            products[left.compose(member_k).as_tuple()] += 1
    return products
