"""
Exact and estimated total-variation distances for the sponge laws.

Exact values use rationals and full enumeration of S_{2^n} (2^n <= 8), or
the multiplicity-profile formula when only the truth-table law matters.
"""
import itertools
import math
from collections import Counter
from fractions import Fraction
from functools import partial
from typing import Dict, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from app.bitdomain import FunctionTable, SeedLike, SpongeParams, generator
from app.core.errors import ParameterError
from app.core.logging import get_logger
from app.core.parallel import run_chunked
from app.symsim import transversal_table
from app.young import subgroup_h, subgroup_k

from .hypothesis import hoeffding_radius
from .models import Distribution, Estimate

logger = get_logger(__name__)

MAX_PROFILE_RATE_SIZE = 16


def tv_distance(p: Distribution, q: Distribution) -> Union[Fraction, float]:
    """1/2 * sum |p - q| over the union of supports; exact when both laws are exact."""
    outcomes = set(p.support) | set(q.support)
    total = sum(abs(p.prob(o) - q.prob(o)) for o in outcomes)
    if p.exact and q.exact:
        return Fraction(total) / 2
    return float(total) / 2.0


def all_function_tables(params: SpongeParams) -> Iterator[Tuple[int, ...]]:
    return itertools.product(range(params.rate_size), repeat=params.rate_size)


def uniform_function_law(params: SpongeParams) -> Distribution:
    if params.rate_size ** params.rate_size > 1 << 20:
        raise ParameterError(f"too many functions to list at r = {params.r}")
    return Distribution.uniform(all_function_tables(params))


def _permutations_starting_with(size: int, first: int) -> np.ndarray:
    rest = [p for p in range(size) if p != first]
    return np.array([(first, *tail) for tail in itertools.permutations(rest)], dtype=np.int64)


def _sponge_law_chunk(params: SpongeParams, first: int) -> Counter:
    perms = _permutations_starting_with(params.domain_size, first)
    inputs = np.arange(params.rate_size) << params.c
    tables = perms[:, inputs] >> params.c
    return Counter(tuple(int(v) for v in row) for row in tables)


def sponge_truthtable_law(params: SpongeParams, order: Optional[Sequence[int]] = None) -> Distribution:
    """
    Exact law of Sp^phi for uniform phi, by enumerating all of S_{2^n}.

    order permutes the enumeration chunks; the result does not depend on it.
    """
    params.require_enumeration()
    chunks = list(order) if order is not None else list(range(params.domain_size))
    if sorted(chunks) != list(range(params.domain_size)):
        raise ParameterError("order must be a permutation of the chunk indices")

    counts: Counter = Counter()
    for chunk_counts in run_chunked(partial(_sponge_law_chunk, params), chunks, desc="sponge law"):
        counts.update(chunk_counts)
    for table in all_function_tables(params):
        counts.setdefault(table, 0)

    law = Distribution.from_counts(counts)
    logger.debug("Sponge truth-table law enumerated", tables=law.size, **params.to_dict())
    return law


def _multiplicity_partitions(total: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _multiplicity_partitions(total - part, part):
            yield (part,) + rest


def _falling(n: int, k: int) -> int:
    return math.perm(n, k)


def sponge_profile_probability(params: SpongeParams, profile: Sequence[int]) -> Fraction:
    """Pr[Sp^phi = f] for any f whose preimage sizes are `profile` (nonzero parts)."""
    numerator = math.prod(_falling(params.capacity_size, m) for m in profile)
    return Fraction(numerator, _falling(params.domain_size, params.rate_size))


def _functions_with_profile(rate_size: int, profile: Tuple[int, ...]) -> int:
    part_counts = Counter(profile)
    outputs = math.perm(rate_size, len(profile)) // math.prod(math.factorial(a) for a in part_counts.values())
    inputs = math.factorial(rate_size) // math.prod(math.factorial(m) for m in profile)
    return outputs * inputs


def profile_truthtable_tv(params: SpongeParams) -> Fraction:
    """
    Exact TV between the Sp truth-table law and the uniform function law,
    summed over preimage-size profiles instead of permutations.
    """
    rate_size = params.rate_size
    if rate_size > MAX_PROFILE_RATE_SIZE:
        raise ParameterError(f"2^r = {rate_size} exceeds profile guardrail {MAX_PROFILE_RATE_SIZE}")

    uniform = Fraction(1, rate_size ** rate_size)
    total = Fraction(0)
    covered = 0
    for profile in _multiplicity_partitions(rate_size):
        count = _functions_with_profile(rate_size, profile)
        covered += count
        total += count * abs(sponge_profile_probability(params, profile) - uniform)
    if covered != rate_size ** rate_size:
        raise ParameterError("profile enumeration does not cover every function")
    return total / 2


def _log_ratio_tables(params: SpongeParams) -> Tuple[np.ndarray, float]:
    """Cumulative log-prefix sums for the likelihood ratio."""
    steps = np.arange(params.rate_size, dtype=np.float64)
    per_bucket = np.concatenate(([0.0], np.cumsum(np.log1p(-steps / params.capacity_size))))
    denominator = float(np.sum(np.log1p(-steps / params.domain_size)))
    return per_bucket, denominator


def truthtable_likelihood_ratio(params: SpongeParams, table: Union[FunctionTable, Sequence[int]]) -> float:
    """
    Pr_sponge[f] / Pr_uniform[f]
    = prod_y prod_{i < m_y} (1 - i/2^c) / prod_{i < 2^r} (1 - i/2^n).
    """
    values = table.table if isinstance(table, FunctionTable) else np.asarray(table)
    loads = np.bincount(np.asarray(values, dtype=np.int64), minlength=params.rate_size)
    per_bucket, denominator = _log_ratio_tables(params)
    return float(np.exp(per_bucket[loads].sum() - denominator))


def estimate_truthtable_tv(
    params: SpongeParams,
    samples: int,
    seed: SeedLike,
    chunk_size: int = 1024,
) -> Estimate:
    """
    Monte Carlo TV between the Sp truth-table law and uniform functions:
    TV = E_uniform[(1 - L(f))^+], a [0,1]-valued mean with a Hoeffding radius.
    """
    rate_size = params.rate_size
    per_bucket, denominator = _log_ratio_tables(params)
    rng = generator(seed, "truthtable-tv", params.r, params.c)

    accumulated = 0.0
    done = 0
    while done < samples:
        batch = min(chunk_size, samples - done)
        tables = rng.integers(0, rate_size, size=(batch, rate_size))
        offsets = (np.arange(batch)[:, None] * rate_size + tables).ravel()
        loads = np.bincount(offsets, minlength=batch * rate_size).reshape(batch, rate_size)
        log_ratio = per_bucket[loads].sum(axis=1) - denominator
        accumulated += float(np.clip(1.0 - np.exp(log_ratio), 0.0, 1.0).sum())
        done += batch

    value = accumulated / samples if samples else 0.0
    return Estimate(value=value, radius=hoeffding_radius(samples), samples=samples)


def _encode(perms: np.ndarray, size: int) -> np.ndarray:
    weights = size ** np.arange(size, dtype=np.int64)
    return perms.astype(np.int64) @ weights


def symmetrized_permutation_law_counts(params: SpongeParams) -> Dict[int, int]:
    """
    Multiplicity of every phi = omega . pi_f . sigma over all f and all (omega, sigma) in H x K,
    keyed by the base-2^n encoding of phi's forward table.
    """
    params.require_enumeration()
    size = params.domain_size
    omegas = np.array([m.forward for m in subgroup_h(params).elements()], dtype=np.int64)
    sigmas = np.array([m.forward for m in subgroup_k(params).elements()], dtype=np.int64)

    counts: Counter = Counter()
    for table in all_function_tables(params):
        pi = transversal_table(FunctionTable(params, np.array(table))).forward.astype(np.int64)
        pi_sigma = pi[sigmas]
        for omega in omegas:
            keys, freq = np.unique(_encode(omega[pi_sigma], size), return_counts=True)
            counts.update(dict(zip(keys.tolist(), freq.tolist())))
    return counts


def symmetrized_permutation_tv(params: SpongeParams) -> Fraction:
    """Exact TV between the law of symmetrize(f), f uniform, and the uniform law on S_{2^n}."""
    counts = symmetrized_permutation_law_counts(params)
    group_order = math.factorial(params.domain_size)
    total = sum(counts.values())
    uniform = Fraction(1, group_order)

    by_count = Counter(counts.values())
    distance = sum(
        (multiplicity * abs(Fraction(c, total) - uniform) for c, multiplicity in by_count.items()),
        Fraction(0),
    )
    distance += (group_order - len(counts)) * uniform
    return distance / 2
