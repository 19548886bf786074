"""
Indifferentiability-with-pre-computation runners.

Each trial draws fresh coins, plays D against the real world
(Sp^phi, (phi, phi^-1)) and against (f, S[f, SR]), and tallies both worlds.
The distinguisher's own coins are shared by the two worlds of a trial.
"""
import math
from fractions import Fraction
from functools import partial
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from app.bitdomain import FunctionTable, SpongeParams, derive_seed, generator, sample_function, trial_seed
from app.core.errors import BudgetViolation, ParameterError
from app.core.logging import get_logger
from app.core.monitoring import record_queries, record_trials, timed
from app.core.parallel import chunk_ranges, run_chunked
from app.sponge import Interface, real_world
from app.stats import all_function_tables, sponge_profile_probability
from app.symsim import SharedRandomness, SimOracle

from .models import Advice, Distinguisher, GameReport, ResourceBudget
from .simulators import SimFactory, SimulatorPair, ideal_interface, lift_reset_to_precomp, online_interface

logger = get_logger(__name__)

VARIANTS = ("strong", "weak")
MAX_EXACT_FUNCTIONS = 1 << 16


def _as_pair(simulator: Union[SimulatorPair, SimFactory]) -> SimulatorPair:
    if isinstance(simulator, SimulatorPair):
        return simulator
    return lift_reset_to_precomp(simulator)


def weak_offline(
    simulator: SimulatorPair,
    distinguisher: Distinguisher,
    params: SpongeParams,
    f: FunctionTable,
    coins: int,
    sr: Optional[SharedRandomness],
) -> Tuple[Advice, Advice]:
    """
    Weak game: S0 receives D0 and runs it internally against the interface it
    would have exposed. Returns (D0's advice, S0's own advice).
    """
    exposed, sim_advice = ideal_interface(params, f, simulator, coins, sr)
    return distinguisher.offline(exposed), sim_advice


def _empty_stats() -> Dict[str, int]:
    return {"trials": 0, "successes": 0, "aborted": 0, "max_S": 0, "max_T": 0,
            "max_S_sim": 0, "max_T_sim": 0, "priv": 0, "pub": 0, "f": 0}


def _real_trial(params: SpongeParams, distinguisher: Distinguisher, seed: int, stats: Dict[str, int]) -> None:
    interface = real_world(params, seed)
    stats["trials"] += 1
    try:
        advice = distinguisher.offline(interface).check(distinguisher.S)
        view = interface.online(distinguisher.T)
        bit = distinguisher.online(view, advice, generator(seed, "distinguisher"))
    except BudgetViolation:
        stats["aborted"] += 1
        return
    stats["successes"] += int(bit)
    stats["max_S"] = max(stats["max_S"], advice.bits)
    stats["max_T"] = max(stats["max_T"], view.queries)
    stats["priv"] += view.priv_queries
    stats["pub"] += view.pub_queries


def _ideal_trial(
    params: SpongeParams,
    distinguisher: Distinguisher,
    simulator: SimulatorPair,
    variant: str,
    seed: int,
    stats: Dict[str, int],
) -> None:
    f = sample_function(params, derive_seed(seed, "ideal", "f"))
    sr = SharedRandomness.from_seed(seed, "simulator") if simulator.uses_shared_randomness else None
    coins = derive_seed(seed, "S0")
    stats["trials"] += 1
    try:
        if variant == "weak":
            advice, sim_advice = weak_offline(simulator, distinguisher, params, f, coins, sr)
        else:
            exposed, sim_advice = ideal_interface(params, f, simulator, coins, sr)
            advice = distinguisher.offline(exposed)
        advice.check(distinguisher.S)
        sim_advice.check(simulator.S_sim)
        interface, f_queries = online_interface(params, f, simulator, sim_advice, sr)
        view = interface.online(distinguisher.T)
        bit = distinguisher.online(view, advice, generator(seed, "distinguisher"))
    except BudgetViolation:
        stats["aborted"] += 1
        return
    stats["successes"] += int(bit)
    stats["max_S"] = max(stats["max_S"], advice.bits)
    stats["max_T"] = max(stats["max_T"], view.queries)
    stats["max_S_sim"] = max(stats["max_S_sim"], sim_advice.bits)
    stats["max_T_sim"] = max(stats["max_T_sim"], f_queries())
    stats["priv"] += view.priv_queries
    stats["pub"] += view.pub_queries
    stats["f"] += f_queries()


def _indiff_chunk(
    params: SpongeParams,
    distinguisher: Distinguisher,
    simulator: SimulatorPair,
    seed: int,
    variant: str,
    trials: range,
) -> Tuple[Dict[str, int], Dict[str, int]]:
    real, ideal = _empty_stats(), _empty_stats()
    for i in trials:
        seed_i = trial_seed(seed, i)
        _real_trial(params, distinguisher, seed_i, real)
        _ideal_trial(params, distinguisher, simulator, variant, seed_i, ideal)
    return real, ideal


def _merge(parts: List[Dict[str, int]]) -> Dict[str, int]:
    merged = _empty_stats()
    for part in parts:
        for key, value in part.items():
            merged[key] = max(merged[key], value) if key.startswith("max_") else merged[key] + value
    return merged


def run_indiff_experiment(
    params: SpongeParams,
    distinguisher: Distinguisher,
    simulator: Union[SimulatorPair, SimFactory] = SimOracle,
    trials: int = 1000,
    seed: int = 0,
    workers: Optional[int] = None,
    variant: str = "strong",
) -> Tuple[GameReport, GameReport]:
    """
    Play D in the real and ideal worlds for `trials` trials each.

    Trials that break a declared budget are aborted and counted, never
    silently dropped. Reports are identical for any worker count.

    Raises:
        ParameterError: unknown game variant
    """
    if variant not in VARIANTS:
        raise ParameterError(f"unknown game variant {variant!r}; expected one of {VARIANTS}")
    params.require_table_mode()
    pair = _as_pair(simulator)
    experiment = f"indiff-{variant}"

    logger.info(
        "Running indifferentiability experiment",
        distinguisher=distinguisher.name, simulator=pair.name, trials=trials, variant=variant, **params.to_dict(),
    )
    with timed(experiment):
        parts = run_chunked(
            partial(_indiff_chunk, params, distinguisher, pair, seed, variant),
            chunk_ranges(trials),
            workers=workers,
            desc=experiment,
        )
    real = _merge([p[0] for p in parts])
    ideal = _merge([p[1] for p in parts])

    declared = ResourceBudget(S=distinguisher.S, T=distinguisher.T, S_sim=pair.S_sim, T_sim=distinguisher.T)
    reports = []
    for world, stats in (("real", real), ("ideal", ideal)):
        record_trials(experiment, world, stats["trials"] - stats["aborted"], stats["aborted"])
        record_queries(f"{world}:priv", stats["priv"])
        record_queries(f"{world}:pub", stats["pub"])
        record_queries(f"{world}:f", stats["f"])
        reports.append(GameReport(
            experiment=experiment,
            world=world,
            trials=stats["trials"],
            successes=stats["successes"],
            aborted=stats["aborted"],
            params=params.to_dict(),
            declared=declared,
            measured=ResourceBudget(
                S=stats["max_S"], T=stats["max_T"], S_sim=stats["max_S_sim"], T_sim=stats["max_T_sim"],
            ),
            extra={"distinguisher": distinguisher.to_dict(), "simulator": pair.to_dict(), "seed": seed},
        ))

    real_report, ideal_report = reports
    logger.info(
        "Indifferentiability experiment finished",
        real=real_report.frequency, ideal=ideal_report.frequency,
        aborted=real_report.aborted + ideal_report.aborted,
    )
    return real_report, ideal_report


def _table_verdict(params: SpongeParams, distinguisher: Distinguisher, table: Tuple[int, ...]) -> int:
    f = FunctionTable(params, np.array(table))
    interface = Interface(params, priv=f, world="table", tables={"priv": f})
    advice = distinguisher.offline(interface)
    return int(distinguisher.online(interface.online(0), advice, generator(0, "distinguisher")))


def exact_table_advantage(params: SpongeParams, distinguisher: Distinguisher) -> Fraction:
    """
    |Pr[D = 1 | Sp^phi] - Pr[D = 1 | f]| for a distinguisher that only reads the
    priv truth table, summed exactly over every function table.

    Raises:
        ParameterError: too many tables to enumerate, or D needs online queries
    """
    if distinguisher.T:
        raise ParameterError("exact table advantage needs a distinguisher with no online queries")
    total = params.rate_size ** params.rate_size
    if total > MAX_EXACT_FUNCTIONS:
        raise ParameterError(f"{total} function tables exceed the exact-enumeration guardrail")

    uniform = Fraction(1, total)
    gap = Fraction(0)
    for table in all_function_tables(params):
        if not _table_verdict(params, distinguisher, table):
            continue
        loads = np.bincount(np.array(table), minlength=params.rate_size)
        gap += sponge_profile_probability(params, [int(m) for m in loads if m]) - uniform
    logger.debug("Exact table advantage", distinguisher=distinguisher.name, advantage=str(abs(gap)))
    return abs(gap)


def advantage_interval(real: GameReport, ideal: GameReport) -> Tuple[float, float]:
    """Advantage +- the combined Hoeffding radius, clipped to [0, 1]."""
    value = abs(real.frequency - ideal.frequency)
    radius = math.hypot(real.radius, ideal.radius)
    return max(0.0, value - radius), min(1.0, value + radius)


def summarize(real: GameReport, ideal: GameReport) -> Dict[str, Any]:
    low, high = advantage_interval(real, ideal)
    return {
        "real": real.to_dict(),
        "ideal": ideal.to_dict(),
        "advantage": abs(real.frequency - ideal.frequency),
        "advantage_interval": [low, high],
    }
