"""Young subgroups, double-coset signatures and the exhaustive coset census."""
from .cosets import (
    coset_census,
    double_coset_multiset,
    factorization_count,
    same_double_coset,
    signature,
    sponge_partitions,
    subgroup_h,
    subgroup_k,
)
from .models import BlockPartition, CensusEntry, CosetCensus, CosetSignature, YoungSubgroup
from .sampling import (
    BlockCache,
    block_cache_info,
    block_permutation,
    block_tables,
    clear_block_cache,
    member_forward,
    sample_member,
)

__all__ = [
    "coset_census",
    "double_coset_multiset",
    "factorization_count",
    "same_double_coset",
    "signature",
    "sponge_partitions",
    "subgroup_h",
    "subgroup_k",
    "BlockPartition",
    "CensusEntry",
    "CosetCensus",
    "CosetSignature",
    "YoungSubgroup",
    "BlockCache",
    "block_cache_info",
    "block_permutation",
    "block_tables",
    "clear_block_cache",
    "member_forward",
    "sample_member",
]
