"""
Space-time trade-off sweeps: Hellman inversion of the sponge (C-model), of
a random function (R-model), and of the R-model through the composed
adversary, side by side with the measured indifferentiability gap.
"""
import math
from typing import Any, Dict, Iterable, List, Mapping, Optional

import pandas as pd

from app.bitdomain import SpongeParams
from app.core.logging import get_logger
from app.core.monitoring import timed
from app.games import (
    GameReport,
    ResetSimulatorPair,
    compose_adversary,
    function_inversion_game,
    function_model,
    run_security_game,
    sponge_inversion_game,
    sponge_model,
)
from app.stats import Estimate, estimate_truthtable_tv

from .hellman import HellmanAdversary

logger = get_logger(__name__)

CSV_COLUMNS = ["world", "r", "c", "m", "t", "k", "S", "T", "trials", "successes", "eps", "ci"]
WORLDS = ("sponge", "composed", "function")


def coverage(r: int, m: int, t: int, k: int) -> float:
    """(m k)(t k) / 2^r, the S*T/2^r abscissa of the trade-off curve (up to the 2r advice factor)."""
    return (m * k) * (t * k) / float(1 << r)


def run_tradeoff_cell(
    r: int,
    c: int,
    m: int,
    t: int,
    k: int,
    instances: int,
    challenges: int,
    seed: int = 0,
    workers: Optional[int] = None,
    worlds: Iterable[str] = WORLDS,
) -> List[GameReport]:
    """
    One (r, c, m, t, k) grid cell. Every world runs the same seeds.

    sponge: the sponge Hellman adversary in the C-model.
    composed: the same adversary lifted to the R-model through the reset simulator.
    function: a native Hellman adversary in the R-model.
    """
    params = SpongeParams(r=r, c=c)
    sponge_adversary = HellmanAdversary(params, m, t, k, evaluation="sponge")
    plan = {
        "sponge": (sponge_inversion_game(params), sponge_model, sponge_adversary),
        "composed": (
            function_inversion_game(params),
            function_model,
            compose_adversary(sponge_adversary, ResetSimulatorPair()),
        ),
        "function": (
            function_inversion_game(params),
            function_model,
            HellmanAdversary(params, m, t, k, evaluation="function"),
        ),
    }

    reports = []
    for world in worlds:
        game, model, adversary = plan[world]
        report = run_security_game(
            game, model, adversary, params, instances, challenges, seed, world=world, workers=workers,
        )
        report.extra.update({"m": m, "t": t, "k": k})
        reports.append(report)
    return reports


def _row(report: GameReport) -> Dict[str, Any]:
    row = report.to_row()
    row.update({key: report.extra[key] for key in ("m", "t", "k")})
    return {column: row.get(column) for column in CSV_COLUMNS}


@timed("tradeoff")
def run_tradeoff_sweep(
    grid: Iterable[Mapping[str, int]],
    instances: int,
    challenges: int,
    seed: int = 0,
    workers: Optional[int] = None,
    worlds: Iterable[str] = WORLDS,
) -> pd.DataFrame:
    """
    Run every grid cell ({r, c, m, t, k}, optionally with its own instances and
    challenges) and return one CSV row per cell and world.
    """
    rows = []
    worlds = tuple(worlds)
    for cell in grid:
        logger.info("Trade-off cell", **dict(cell))
        reports = run_tradeoff_cell(
            r=cell["r"], c=cell["c"], m=cell["m"], t=cell["t"], k=cell["k"],
            instances=cell.get("instances", instances),
            challenges=cell.get("challenges", challenges),
            seed=seed,
            workers=workers,
            worlds=worlds,
        )
        rows.extend(_row(report) for report in reports)
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def indifferentiability_gap(r: int, c: int, samples: int, seed: int = 0) -> Estimate:
    """Measured epsilon_indiff: TV between the sponge truth-table law and uniform functions."""
    return estimate_truthtable_tv(SpongeParams(r=r, c=c), samples, seed)


def envelope_constant(frame: pd.DataFrame, world: str = "sponge") -> float:
    """K = max eps / x over the world's rows, x = (m k)(t k) / 2^r."""
    rows = frame[frame["world"] == world]
    if rows.empty:
        return 0.0
    x = rows.apply(lambda row: coverage(int(row["r"]), int(row["m"]), int(row["t"]), int(row["k"])), axis=1)
    return float((rows["eps"] / x).max())


def transfer_check(frame: pd.DataFrame, epsilon_indiff: float) -> pd.DataFrame:
    """
    Per cell, |eps_sponge - eps_composed| against epsilon_indiff + joint CI.
    """
    keys = ["r", "c", "m", "t", "k"]
    sponge = frame[frame["world"] == "sponge"].set_index(keys)
    composed = frame[frame["world"] == "composed"].set_index(keys)
    joined = sponge[["eps", "ci"]].join(composed[["eps", "ci"]], lsuffix="_sponge", rsuffix="_composed", how="inner")
    joined["gap"] = (joined["eps_sponge"] - joined["eps_composed"]).abs()
    joined["bound"] = epsilon_indiff + joined.apply(
        lambda row: math.hypot(row["ci_sponge"], row["ci_composed"]), axis=1
    )
    joined["holds"] = joined["gap"] <= joined["bound"]
    return joined.reset_index()


def collapse_check(frame: pd.DataFrame, world: str = "sponge") -> pd.DataFrame:
    """
    Group the world's rows by (r, m, t, k) across capacities; the spread of eps
    within a group must stay inside the widest pairwise joint CI.
    """
    rows = frame[frame["world"] == world]
    groups = []
    for key, group in rows.groupby(["r", "m", "t", "k"]):
        spread = float(group["eps"].max() - group["eps"].min())
        radius = float(math.sqrt(2.0) * group["ci"].max())
        groups.append({
            "r": key[0], "m": key[1], "t": key[2], "k": key[3],
            "capacities": sorted(int(c) for c in group["c"]),
            "spread": spread,
            "radius": radius,
            "collapsed": spread <= radius,
        })
    return pd.DataFrame(groups)
