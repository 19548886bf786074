"""Fixed-width words, domain parameters and dense truth tables."""
from .models import FunctionTable, PermutationTable, SpongeParams, Word
from .rng import SeedLike, derive_seed, generator, normalize_seed, trial_seed
from .serialization import from_bytes, load_table, save_table, to_bytes, to_json
from .tables import sample_function, sample_permutation
from .words import concat, join3_int, split3, split3_int

__all__ = [
    "FunctionTable",
    "PermutationTable",
    "SpongeParams",
    "Word",
    "SeedLike",
    "derive_seed",
    "generator",
    "normalize_seed",
    "trial_seed",
    "from_bytes",
    "load_table",
    "save_table",
    "to_bytes",
    "to_json",
    "sample_function",
    "sample_permutation",
    "concat",
    "join3_int",
    "split3",
    "split3_int",
]
