"""
Prometheus metrics for experiments.

Runners update these with per-report aggregates, never per oracle query.
"""
from typing import Any, Optional

from prometheus_client import REGISTRY, Counter, Histogram, Info, write_to_textfile

from .config import settings

# Trial metrics
trials_total = Counter(
    "lab_trials_total",
    "Total game trials executed",
    ["experiment", "world", "status"]
)

oracle_queries_total = Counter(
    "lab_oracle_queries_total",
    "Oracle queries issued during online phases",
    ["oracle"]
)

block_materializations_total = Counter(
    "lab_block_materializations_total",
    "Seeded block permutations materialized for lazy evaluation",
    ["kind"]
)

# Experiment metrics
experiment_duration_seconds = Histogram(
    "lab_experiment_duration_seconds",
    "Experiment wall time in seconds",
    ["experiment"],
    buckets=[0.1, 0.5, 1, 5, 10, 30, 60, 300, 900]
)

experiment_failures_total = Counter(
    "lab_experiment_failures_total",
    "Experiments that finished with a failed invariant",
    ["experiment"]
)

# System Info
system_info = Info(
    "lab_system",
    "System information"
)


def timed(experiment: str) -> Any:
    """Wall-time timer for one experiment; works as a decorator or a context manager."""
    return experiment_duration_seconds.labels(experiment=experiment).time()


def record_trials(experiment: str, world: str, completed: int, aborted: int = 0) -> None:
    """Account a finished batch of trials."""
    if completed:
        trials_total.labels(experiment=experiment, world=world, status="completed").inc(completed)
    if aborted:
        trials_total.labels(experiment=experiment, world=world, status="aborted").inc(aborted)


def record_queries(oracle: str, count: int) -> None:
    if count:
        oracle_queries_total.labels(oracle=oracle).inc(count)


def dump_metrics(path: Optional[str] = None) -> Optional[str]:
    """Write the registry in textfile-collector format. Returns the path written, if any."""
    target = path or settings.METRICS_FILE
    if not target:
        return None
    write_to_textfile(target, REGISTRY)
    return target


system_info.info({
    "app": settings.PROJECT_NAME,
    "version": settings.VERSION,
})
