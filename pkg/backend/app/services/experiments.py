"""
Experiment dispatch: one function per experiment id, each returning a
report body, an optional table of rows, and whether its invariants held.
"""
import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from app.attacks import (
    analytic_trapdoor_advantage,
    collapse_check,
    envelope_constant,
    indifferentiability_gap,
    run_separation,
    run_tradeoff_sweep,
    transfer_check,
    trapdoor_distinguish,
    trapdoor_sweep,
)
from app.core.errors import ParameterError
from app.core.logging import get_logger
from app.games import (
    DISTINGUISHERS,
    Distinguisher,
    exact_table_advantage,
    remove_shared_randomness,
    run_indiff_experiment,
    summarize,
)
from app.schemas.experiment import ExperimentConfig
from app.stats import truncation_advantage_curve
from app.young import coset_census

from .verification import verify_suite

logger = get_logger(__name__)

DEFAULT_SEPARATION_BUDGETS = [0, 16, 64, 256]
DEFAULT_DISTINGUISHERS = {"indiff": "truth-table-reader", "remove-sr": "permutation-table-reader"}


@dataclass
class ExperimentResult:
    body: Dict[str, Any]
    passed: bool = True
    frame: Optional[pd.DataFrame] = field(default=None, repr=False)


def _distinguisher(config: ExperimentConfig) -> Distinguisher:
    name = config.distinguisher or DEFAULT_DISTINGUISHERS[config.experiment]
    try:
        return DISTINGUISHERS[name]()
    except KeyError:
        raise ParameterError(f"unknown distinguisher {name!r}; expected one of {sorted(DISTINGUISHERS)}") from None


def _records(frame: pd.DataFrame) -> List[Dict[str, Any]]:
    return json.loads(frame.to_json(orient="records"))


def run_verify(config: ExperimentConfig) -> ExperimentResult:
    report = verify_suite(config.sponge_params(), seed=config.seed)
    return ExperimentResult(body=report, passed=report["passed"])


def run_coset_census(config: ExperimentConfig) -> ExperimentResult:
    census = coset_census(config.sponge_params(), workers=config.workers)
    frame = pd.DataFrame([
        {"size": entry.size, "factorizations": entry.factorizations, "example_f": " ".join(map(str, entry.example_f))}
        for entry in census
    ])
    return ExperimentResult(body=census.to_dict(), passed=census.consistent, frame=frame)


def run_indiff(config: ExperimentConfig) -> ExperimentResult:
    params = config.sponge_params()
    distinguisher = _distinguisher(config)
    real, ideal = run_indiff_experiment(
        params, distinguisher, trials=config.trials, seed=config.seed, workers=config.workers, variant=config.variant,
    )
    body = summarize(real, ideal)
    if distinguisher.T == 0 and params.rate_size <= 4:
        exact = exact_table_advantage(params, distinguisher)
        body["exact_table_advantage"] = f"{exact.numerator}/{exact.denominator}"
    frame = pd.DataFrame([real.to_row(), ideal.to_row()])
    return ExperimentResult(body=body, passed=real.within_budget and ideal.within_budget, frame=frame)


def run_remove_sr(config: ExperimentConfig) -> ExperimentResult:
    result = remove_shared_randomness(
        _distinguisher(config),
        config.sponge_params(),
        mode=config.mode,
        sr_bits=config.sr_bits,
        search_budget=config.search_budget,
        samples=config.trials,
        seed=config.seed,
    )
    return ExperimentResult(body=result.to_dict(), passed=result.played is not None and result.preserved)


def run_tradeoff(config: ExperimentConfig) -> ExperimentResult:
    grid = [cell.model_dump(exclude_none=True) for cell in config.tradeoff_grid()]
    frame = run_tradeoff_sweep(grid, config.instances, config.challenges, seed=config.seed, workers=config.workers)

    gaps = {}
    for r, c in sorted({(cell["r"], cell["c"]) for cell in grid}):
        gaps[f"{r},{c}"] = indifferentiability_gap(r, c, config.eps_samples, seed=config.seed)
    epsilon = max((gap.value + gap.radius for gap in gaps.values()), default=0.0)

    transfer = transfer_check(frame, epsilon)
    collapse = collapse_check(frame)
    body = {
        "grid": grid,
        "epsilon_indiff": {key: gap.to_dict() for key, gap in gaps.items()},
        "envelope_constant": envelope_constant(frame),
        "transfer": _records(transfer),
        "collapse": _records(collapse),
    }
    passed = bool(transfer["holds"].all()) if not transfer.empty else True
    if not collapse.empty:
        passed = passed and bool(collapse["collapsed"].all())
    return ExperimentResult(body=body, passed=passed, frame=frame)


def run_separation_experiment(config: ExperimentConfig) -> ExperimentResult:
    n = config.n
    reports = run_separation(n, config.instances, config.challenges, seed=config.seed, workers=config.workers)
    budgets = config.budgets or ([config.T] if config.T is not None else DEFAULT_SEPARATION_BUDGETS)
    sweep = trapdoor_sweep(n, budgets, config.trials, seed=config.seed)

    trapdoor, plain = reports["trapdoor"], reports["plain"]
    ceiling = 2.0 ** -n + 3.0 * math.sqrt(2.0 ** -n / plain.trials)
    largest = max(budgets)
    estimate = trapdoor_distinguish(n, largest, config.trials, seed=config.seed)
    analytic = analytic_trapdoor_advantage(n, largest)
    body = {
        "trapdoor": trapdoor.to_dict(),
        "plain": plain.to_dict(),
        "plain_ceiling": ceiling,
        "distinguisher": _records(sweep),
        "analytic_check": {"T": largest, "analytic": analytic, "estimate": estimate.to_dict(),
                           "analytic_covered": estimate.covers(analytic)},
    }
    passed = trapdoor.frequency == 1.0 and plain.frequency <= ceiling and estimate.covers(analytic)
    return ExperimentResult(body=body, passed=passed, frame=sweep)


def run_truncation(config: ExperimentConfig) -> ExperimentResult:
    n, m = config.n, config.m
    grid = config.q_grid or [1 << max(0, (n + m) // 2 - shift) for shift in (5, 3, 0)]
    frame = truncation_advantage_curve(n, m, grid, config.trials, config.seed)
    return ExperimentResult(body={"n": n, "m": m, "curve": _records(frame)}, frame=frame)


EXPERIMENTS: Dict[str, Callable[[ExperimentConfig], ExperimentResult]] = {
    "verify": run_verify,
    "coset-census": run_coset_census,
    "indiff": run_indiff,
    "remove-sr": run_remove_sr,
    "tradeoff": run_tradeoff,
    "separation": run_separation_experiment,
    "truncation-curve": run_truncation,
}


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    logger.info("Running experiment", experiment=config.experiment, seed=config.seed)
    result = EXPERIMENTS[config.experiment](config)
    logger.info("Experiment finished", experiment=config.experiment, passed=result.passed)
    return result
