"""
Seeded samplers for truth tables.
"""
from typing import Optional

import numpy as np

from app.core.config import settings
from app.core.errors import ParameterError
from app.core.logging import get_logger

from .models import FunctionTable, PermutationTable, SpongeParams
from .rng import SeedLike, generator

logger = get_logger(__name__)


def sample_function(params: SpongeParams, seed: SeedLike) -> FunctionTable:
    """
    Uniform f: {0,1}^r -> {0,1}^r, deterministic in seed.

    Each entry is an independent bounded integer draw (no modulo bias).
    """
    rng = generator(seed, "function", params.r)
    table = rng.integers(0, params.rate_size, size=params.rate_size, dtype=np.uint32)
    return FunctionTable(params=params, table=table)


def sample_permutation(n: int, seed: SeedLike, params: Optional[SpongeParams] = None) -> PermutationTable:
    """
    Uniform permutation on n-bit words via numpy's unbiased Fisher-Yates shuffle.

    Raises:
        ParameterError: if n exceeds the table-mode guardrail
    """
    if n > settings.MAX_TABLE_N:
        raise ParameterError(f"n = {n} exceeds table-mode guardrail MAX_TABLE_N={settings.MAX_TABLE_N}")
    if n >= 22:
        logger.info("Sampling large permutation table", n=n, entries=1 << n)
    rng = generator(seed, "permutation", n)
    forward = rng.permutation(1 << n).astype(np.uint32)
    return PermutationTable(n=n, forward=forward, params=params)
