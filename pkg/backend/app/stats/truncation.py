"""
Distinguishing a truncated random permutation from a random function.

World F answers q distinct queries with independent uniform (n-m)-bit
values. World P draws q distinct n-bit values without replacement and keeps
the top n-m bits. Two statistics are measured, each with a threshold at
the midpoint of its closed-form means:
    pair collisions sum_b C(load_b, 2)   (P has fewer)
    distinct outputs                      (P has more)
"""
import math
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from app.bitdomain import SeedLike, generator
from app.core.errors import ParameterError
from app.core.logging import get_logger

from .hypothesis import binomial_sigma

logger = get_logger(__name__)

MAX_SAMPLING_N = 20


def expected_collisions(n: int, m: int, q: int) -> Tuple[float, float]:
    """(function world, permutation world) means of the pair-collision count."""
    pairs = q * (q - 1) / 2
    return pairs / 2 ** (n - m), pairs * (2 ** m - 1) / (2 ** n - 1)


def expected_distinct(n: int, m: int, q: int) -> Tuple[float, float]:
    """(function world, permutation world) means of the number of distinct outputs."""
    bins = 2 ** (n - m)
    function_mean = bins * (1.0 - (1.0 - 1.0 / bins) ** q)
    # a bin stays empty iff all q draws avoid its 2^m preimages
    steps = np.arange(q, dtype=np.float64)
    empty = np.exp(np.sum(np.log1p(-(2 ** m) / (2 ** n - steps)))) if q else 1.0
    return function_mean, bins * (1.0 - float(empty))


def _statistics(outputs: np.ndarray, bins: int) -> Tuple[np.ndarray, np.ndarray]:
    rows = outputs.shape[0]
    offsets = (np.arange(rows)[:, None] * bins + outputs).ravel()
    loads = np.bincount(offsets, minlength=rows * bins).reshape(rows, bins)
    collisions = (loads * (loads - 1) // 2).sum(axis=1)
    distinct = (loads > 0).sum(axis=1)
    return collisions, distinct


def _sample_world(n: int, m: int, q: int, trials: int, rng: np.random.Generator, truncated: bool):
    bins = 2 ** (n - m)
    collisions: List[np.ndarray] = []
    distinct: List[np.ndarray] = []
    batch = max(1, min(trials, (1 << 22) // max(q, 1)))
    done = 0
    while done < trials:
        size = min(batch, trials - done)
        if truncated:
            outputs = np.stack([rng.choice(2 ** n, size=q, replace=False) for _ in range(size)]) >> m
        else:
            outputs = rng.integers(0, bins, size=(size, q))
        c, d = _statistics(outputs.astype(np.int64), bins)
        collisions.append(c)
        distinct.append(d)
        done += size
    return np.concatenate(collisions), np.concatenate(distinct)


def truncation_advantage_curve(
    n: int,
    m: int,
    q_grid: Sequence[int],
    trials: int,
    seed: SeedLike,
) -> pd.DataFrame:
    """
    Best-of-suite advantage at each q, with a binomial sigma for the chosen statistic.

    Columns: q, collision_advantage, distinct_advantage, advantage, sigma, trials.
    """
    if not 1 <= m < n:
        raise ParameterError(f"need 1 <= m < n (got n={n}, m={m})")
    if n > MAX_SAMPLING_N:
        raise ParameterError(f"n = {n} exceeds sampling guardrail {MAX_SAMPLING_N}")
    if any(q < 0 or q > 2 ** n for q in q_grid):
        raise ParameterError(f"every q must lie in [0, 2^{n}]")

    logger.info("Measuring truncation curve", n=n, m=m, points=len(q_grid), trials=trials)
    rows = []
    for q in q_grid:
        f_coll, f_dist = _sample_world(n, m, q, trials, generator(seed, "truncation", q, "function"), False)
        p_coll, p_dist = _sample_world(n, m, q, trials, generator(seed, "truncation", q, "permutation"), True)

        coll_mid = sum(expected_collisions(n, m, q)) / 2
        dist_mid = sum(expected_distinct(n, m, q)) / 2
        p1, f1 = float(np.mean(p_coll < coll_mid)), float(np.mean(f_coll < coll_mid))
        p2, f2 = float(np.mean(p_dist > dist_mid)), float(np.mean(f_dist > dist_mid))
        collision_adv, distinct_adv = p1 - f1, p2 - f2

        if collision_adv >= distinct_adv:
            best, sigma = collision_adv, math.hypot(binomial_sigma(p1, trials), binomial_sigma(f1, trials))
        else:
            best, sigma = distinct_adv, math.hypot(binomial_sigma(p2, trials), binomial_sigma(f2, trials))

        rows.append({
            "q": q,
            "collision_advantage": collision_adv,
            "distinct_advantage": distinct_adv,
            "advantage": best,
            "sigma": sigma,
            "trials": trials,
        })

    logger.info("Truncation curve measured", n=n, m=m, peak=max((row["advantage"] for row in rows), default=0.0))
    return pd.DataFrame(rows, columns=["q", "collision_advantage", "distinct_advantage", "advantage", "sigma", "trials"])
