"""
Hellman-style preprocessing inversion for r-bit functions.

The offline phase reads the target's full truth table; the online phase
walks chains through the public interface, one query per evaluation.
"""
from typing import Callable, Optional, Sequence, Union

import numpy as np

from app.bitdomain import FunctionTable, SpongeParams, generator
from app.core.errors import BudgetViolation, ParameterError
from app.core.logging import get_logger
from app.games import Adversary, Advice
from app.sponge import BudgetedView, Direction, Interface

from .models import HellmanTables

logger = get_logger(__name__)

EVALUATIONS = ("sponge", "function")

Target = Union[FunctionTable, np.ndarray, Sequence[int], Callable[[int], int]]


def _materialize(target: Target, r: int) -> np.ndarray:
    if isinstance(target, FunctionTable):
        return np.asarray(target.table, dtype=np.int64)
    if callable(target):
        return np.array([target(x) for x in range(1 << r)], dtype=np.int64)
    table = np.asarray(target, dtype=np.int64)
    if table.shape != (1 << r,):
        raise ParameterError(f"target table must have 2^{r} entries")
    return table


def build_tables(target: Target, r: int, m: int, t: int, k: int, seed: int) -> HellmanTables:
    """
    Build k tables of m chains of length t against target.

    Args:
        target: the r-bit function, as a table or as an oracle (queried on every point)
        r: input/output width
        m, t, k: chains per table, chain length, table count
        seed: drives start points and the reduction functions

    Returns:
        HellmanTables with end points sorted per table
    """
    if min(m, t, k) < 1:
        raise ParameterError("m, t and k must all be positive")
    table = _materialize(target, r)
    mask = (1 << r) - 1
    rng = generator(seed, "hellman", r, m, t, k)
    multipliers = rng.integers(0, 1 << r, size=k, dtype=np.int64) | 1
    offsets = rng.integers(0, 1 << r, size=k, dtype=np.int64)
    starts = rng.integers(0, 1 << r, size=(k, m), dtype=np.int64)

    points = starts.copy()
    for _ in range(t):
        points = ((table[points] * multipliers[:, None]) ^ offsets[:, None]) & mask

    order = np.argsort(points, axis=1, kind="stable")
    tables = HellmanTables(
        r=r, m=m, t=t, k=k,
        multipliers=multipliers,
        offsets=offsets,
        starts=np.take_along_axis(starts, order, axis=1),
        ends=np.take_along_axis(points, order, axis=1),
        offline_queries=k * m * t,
    )
    logger.debug("Hellman tables built", **tables.to_dict())
    return tables


def invert_with_tables(
    tables: HellmanTables,
    evaluate: Callable[[int], int],
    y: int,
    max_queries: Optional[int] = None,
) -> Optional[int]:
    """
    Walk every table's chains looking for a preimage of y.

    Each candidate is confirmed with one extra evaluation. Returns None when
    no chain covers y or when the next evaluation would exceed max_queries.
    """
    used = [0]

    def f(x: int) -> int:
        if max_queries is not None and used[0] >= max_queries:
            raise BudgetViolation("inversion query cap reached")
        used[0] += 1
        return evaluate(x)

    try:
        for i in range(tables.k):
            ends = tables.ends[i]
            z = tables.reduce(i, y)
            for j in range(tables.t):
                lo, hi = np.searchsorted(ends, z, side="left"), np.searchsorted(ends, z, side="right")
                for start in tables.starts[i, lo:hi].tolist():
                    x = int(start)
                    for _ in range(tables.t - 1 - j):
                        x = tables.reduce(i, f(x))
                    if f(x) == y:
                        return x
                if j + 1 < tables.t:
                    z = tables.reduce(i, f(z))
    except BudgetViolation:
        return None
    return None


def sponge_evaluator(view: BudgetedView) -> Callable[[int], int]:
    """Sp(x) through one forward pub query at x || 0^c."""
    params = view.params

    def evaluate(x: int) -> int:
        return view.pub_eval(Direction.FWD, x << params.c) >> params.c

    return evaluate


def function_evaluator(view: BudgetedView) -> Callable[[int], int]:
    def evaluate(x: int) -> int:
        return view.pub_eval(Direction.FWD, x)

    return evaluate


class HellmanAdversary(Adversary):
    """
    A0 builds Hellman tables from the priv truth table; A1 inverts through pub.

    evaluation="sponge" computes Sp via phi(x || 0^c); "function" queries f directly.
    S = k * m * 2r, T = k * (t(t+1)/2 + t).
    """

    def __init__(self, params: SpongeParams, m: int, t: int, k: int, evaluation: str = "sponge"):
        if evaluation not in EVALUATIONS:
            raise ParameterError(f"unknown evaluation {evaluation!r}; expected one of {EVALUATIONS}")
        self.params = params
        self.m, self.t, self.k = m, t, k
        self.evaluation = evaluation
        self.name = f"hellman-{evaluation}"
        self.S = k * m * 2 * params.r
        self.T = k * (t * (t + 1) // 2 + t)

    def offline(self, interface: Interface, coins: int) -> Advice:
        table = interface.truth_table("priv")
        tables = build_tables(table, self.params.r, self.m, self.t, self.k, coins)
        return Advice(payload=tables, bits=tables.advice_bits)

    def online(self, view: BudgetedView, advice: Advice, challenge: int, coins: int) -> int:
        evaluate = sponge_evaluator(view) if self.evaluation == "sponge" else function_evaluator(view)
        found = invert_with_tables(advice.payload, evaluate, challenge, max_queries=self.T)
        return 0 if found is None else found

    def to_dict(self):
        return {**super().to_dict(), "m": self.m, "t": self.t, "k": self.k, "evaluation": self.evaluation}
