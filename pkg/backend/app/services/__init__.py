"""Experiment dispatch and self-checks."""
from .experiments import EXPERIMENTS, ExperimentResult, run_experiment
from .verification import verify_suite

__all__ = [
    "EXPERIMENTS",
    "ExperimentResult",
    "run_experiment",
    "verify_suite",
]
