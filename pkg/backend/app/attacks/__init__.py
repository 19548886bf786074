"""Trapdoor separation and Hellman-style preprocessing inversion."""
from .hellman import (
    HellmanAdversary,
    build_tables,
    function_evaluator,
    invert_with_tables,
    sponge_evaluator,
)
from .models import HellmanTables, TrapdoorFunction
from .tradeoff import (
    CSV_COLUMNS,
    collapse_check,
    coverage,
    envelope_constant,
    indifferentiability_gap,
    run_tradeoff_cell,
    run_tradeoff_sweep,
    transfer_check,
)
from .trapdoor import (
    TrapdoorAdversary,
    analytic_trapdoor_advantage,
    find_trapdoor,
    plain_world,
    planted_world,
    run_separation,
    sample_trapdoor,
    trapdoor_attack,
    trapdoor_distinguish,
    trapdoor_sweep,
    trapdoor_world,
)

__all__ = [
    "HellmanAdversary",
    "build_tables",
    "function_evaluator",
    "invert_with_tables",
    "sponge_evaluator",
    "HellmanTables",
    "TrapdoorFunction",
    "CSV_COLUMNS",
    "collapse_check",
    "coverage",
    "envelope_constant",
    "indifferentiability_gap",
    "run_tradeoff_cell",
    "run_tradeoff_sweep",
    "transfer_check",
    "TrapdoorAdversary",
    "analytic_trapdoor_advantage",
    "find_trapdoor",
    "plain_world",
    "planted_world",
    "run_separation",
    "sample_trapdoor",
    "trapdoor_attack",
    "trapdoor_distinguish",
    "trapdoor_sweep",
    "trapdoor_world",
]
