"""
Seeded, counter-based randomness with domain separation.

Every experiment has one 256-bit seed. Logical roles (the function f, the
symmetrizers sigma and omega, adversary coins, trial indices) fork their own
sub-seeds by hashing the parent seed with labels, and each sub-seed drives a
numpy Philox generator.
"""
import hashlib
from typing import Union

import numpy as np

from app.core.errors import ParameterError

SEED_BITS = 256
SEED_BYTES = SEED_BITS // 8

SeedLike = Union[int, str, bytes]


def normalize_seed(seed: SeedLike) -> int:
    """Map an int, str or bytes seed to an integer in [0, 2^256)."""
    if isinstance(seed, bool):
        raise ParameterError("seed must be an int, str or bytes")
    if isinstance(seed, int):
        if not 0 <= seed < (1 << SEED_BITS):
            raise ParameterError(f"integer seed must lie in [0, 2^{SEED_BITS})")
        return seed
    if isinstance(seed, str):
        seed = seed.encode("utf-8")
    if isinstance(seed, bytes):
        return int.from_bytes(hashlib.blake2b(seed, digest_size=SEED_BYTES).digest(), "big")
    raise ParameterError("seed must be an int, str or bytes")


def derive_seed(seed: SeedLike, *labels: Union[str, int]) -> int:
    """Fork a sub-seed for the role named by labels."""
    h = hashlib.blake2b(digest_size=SEED_BYTES, person=b"sponge-lab-v1")
    h.update(normalize_seed(seed).to_bytes(SEED_BYTES, "big"))
    for label in labels:
        encoded = str(label).encode("utf-8")
        h.update(len(encoded).to_bytes(4, "big"))
        h.update(encoded)
    return int.from_bytes(h.digest(), "big")


def generator(seed: SeedLike, *labels: Union[str, int]) -> np.random.Generator:
    """Philox generator for the sub-seed (seed, *labels)."""
    sub_seed = derive_seed(seed, *labels) if labels else normalize_seed(seed)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(sub_seed)))


def trial_seed(seed: SeedLike, index: int) -> int:
    return derive_seed(seed, "trial", index)
