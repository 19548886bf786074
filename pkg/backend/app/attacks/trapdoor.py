"""
Trapdoor separation: a function that plain indifferentiability cannot tell
from random, but that n bits of advice invert with zero queries.
"""
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from app.bitdomain import generator
from app.core.config import settings
from app.core.errors import ParameterError
from app.core.logging import get_logger
from app.games import Adversary, Advice, GameReport, InversionGame, run_security_game
from app.sponge import BudgetedView, Direction, Interface
from app.stats import Estimate, binomial_sigma

from .models import TrapdoorFunction

logger = get_logger(__name__)


def sample_trapdoor(n: int, seed: int, planted: bool = True) -> TrapdoorFunction:
    """Draw s and a uniform table; plant g(x || s) = x when asked."""
    if not 1 <= n <= settings.MAX_TRAPDOOR_N:
        raise ParameterError(f"trapdoor n must lie in [1, {settings.MAX_TRAPDOOR_N}]")
    rng = generator(seed, "trapdoor", n)
    table = rng.integers(0, 1 << n, size=1 << (2 * n), dtype=np.uint16)
    s = int(rng.integers(0, 1 << n))
    if planted:
        xs = np.arange(1 << n, dtype=np.int64)
        table[(xs << n) | s] = xs
    table.flags.writeable = False
    return TrapdoorFunction(n=n, s=s, table=table, planted=planted)


def trapdoor_world(n: int, seed: int, planted: bool = True) -> Interface:
    """priv = pub = g (planted) or h (foil). pub is forward-only."""
    tf = sample_trapdoor(n, seed, planted=planted)

    def pub(direction: Direction, x: int) -> int:
        if direction is not Direction.FWD:
            raise ParameterError("the trapdoor function has no inverse interface")
        return tf(x)

    world = "trapdoor" if planted else "plain"
    return Interface(None, priv=tf, pub=pub, world=world, tables={"priv": tf})


def planted_world(n: int, seed: int) -> Interface:
    return trapdoor_world(n, seed, planted=True)


def plain_world(n: int, seed: int) -> Interface:
    return trapdoor_world(n, seed, planted=False)


def find_trapdoor(tf: TrapdoorFunction) -> Optional[int]:
    """The first column s with g(x || s) = x for every x, or None."""
    size = 1 << tf.n
    grid = tf.table.reshape(size, size)
    matches = np.flatnonzero(np.all(grid == np.arange(size, dtype=grid.dtype)[:, None], axis=0))
    return int(matches[0]) if matches.size else None


def trapdoor_attack(n: int, s: int, y: int) -> int:
    """Preimage candidate y || s. Makes no queries."""
    return (y << n) | s


class TrapdoorAdversary(Adversary):
    """A0 reads the whole table and keeps s (n bits); A1 answers y || s."""
    name = "trapdoor"
    T = 0

    def __init__(self, n: int):
        self.n = n
        self.S = n

    def offline(self, interface: Interface, coins: int) -> Advice:
        s = find_trapdoor(interface.truth_table("priv"))
        return Advice.from_words((0 if s is None else s,), self.n)

    def online(self, view: BudgetedView, advice: Advice, challenge: int, coins: int) -> int:
        return trapdoor_attack(self.n, advice.payload[0], challenge)


def run_separation(
    n: int,
    instances: int,
    challenges: int,
    seed: int = 0,
    workers: Optional[int] = None,
) -> Dict[str, GameReport]:
    """The same (S = n, T = 0) adversary in the trapdoor world and the plain world."""
    game = InversionGame(in_bits=2 * n, out_bits=n, name="trapdoor-inversion")
    adversary = TrapdoorAdversary(n)
    reports = {
        world: run_security_game(game, model, adversary, n, instances, challenges, seed, world=world, workers=workers)
        for world, model in (("trapdoor", planted_world), ("plain", plain_world))
    }
    logger.info(
        "Trapdoor separation finished",
        n=n, trapdoor=reports["trapdoor"].frequency, plain=reports["plain"].frequency,
    )
    return reports


def _dedupe(points: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Repeated points within a row get the value of their first occurrence."""
    order = np.argsort(points, axis=1, kind="stable")
    sorted_points = np.take_along_axis(points, order, axis=1)
    sorted_values = np.take_along_axis(values, order, axis=1)
    repeat = sorted_points[:, 1:] == sorted_points[:, :-1]
    for j in range(1, sorted_values.shape[1]):
        sorted_values[:, j] = np.where(repeat[:, j - 1], sorted_values[:, j - 1], sorted_values[:, j])
    result = np.empty_like(values)
    np.put_along_axis(result, order, sorted_values, axis=1)
    return result


def _first_hits(xs: np.ndarray, values: np.ndarray, max_queries: int) -> np.ndarray:
    hits = values == xs
    return np.where(hits.any(axis=1), hits.argmax(axis=1), max_queries)


def _hit_indices(n: int, max_queries: int, trials: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per trial, index of the first query x || u answered with x (max_queries if
    none), in the trapdoor world and in the plain world.

    Values are sampled lazily per query. Both worlds share queries and values
    except where u = s, which the trapdoor world overrides.
    """
    if max_queries == 0:
        empty = np.zeros(trials, dtype=np.int64)
        return empty, empty
    rng = generator(seed, "trapdoor-distinguish", n)
    xs = rng.integers(0, 1 << n, size=(trials, max_queries))
    us = rng.integers(0, 1 << n, size=(trials, max_queries))
    values = rng.integers(0, 1 << n, size=(trials, max_queries))
    s = rng.integers(0, 1 << n, size=(trials, 1))
    points = (xs << n) | us
    planted = _dedupe(points, np.where(us == s, xs, values))
    plain = _dedupe(points, values)
    return _first_hits(xs, planted, max_queries), _first_hits(xs, plain, max_queries)


def analytic_trapdoor_advantage(n: int, T: int) -> float:
    """[1 - (1 - p_g)^T] - [1 - (1 - 2^-n)^T], p_g = 2^-n + (1 - 2^-n) 2^-n, distinct queries."""
    q = 2.0 ** -n
    p_g = q + (1.0 - q) * q
    return (1.0 - q) ** T - (1.0 - p_g) ** T


def trapdoor_sweep(n: int, budgets: Sequence[int], trials: int, seed: int = 0) -> pd.DataFrame:
    """
    Hit-probability distinguisher over a sweep of query budgets.

    Both worlds are sampled once at the largest budget; a trial at budget T
    succeeds iff its first hit comes before T, so the curve is monotone in T.
    """
    if any(T < 0 for T in budgets):
        raise ParameterError("query budgets must be non-negative")
    largest = max(budgets, default=0)
    planted, plain = _hit_indices(n, largest, trials, seed)

    rows = []
    for T in sorted(set(budgets)):
        p1 = float(np.mean(planted < T)) if trials else 0.0
        p0 = float(np.mean(plain < T)) if trials else 0.0
        rows.append({
            "T": T,
            "trapdoor": p1,
            "plain": p0,
            "advantage": p1 - p0,
            "analytic": analytic_trapdoor_advantage(n, T),
            "sigma": float(np.hypot(binomial_sigma(p1, trials), binomial_sigma(p0, trials))),
            "trials": trials,
        })
    return pd.DataFrame(rows)


def trapdoor_distinguish(n: int, T: int, trials: int, seed: int = 0) -> Estimate:
    """
    Advantage of the T-query hit distinguisher, with a 3-sigma radius.

    The radius never drops below 3 / trials, so runs without a single hit
    still cover small true advantages.
    """
    row = trapdoor_sweep(n, [T], trials, seed).iloc[0]
    radius = max(3.0 * float(row["sigma"]), 3.0 / trials) if trials else 1.0
    return Estimate(value=float(row["advantage"]), radius=radius, samples=trials)
