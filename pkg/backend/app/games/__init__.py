"""Indifferentiability-with-pre-computation games, simulator pairs and security games."""
from .adversaries import ReplayAdversary, TruthTableAdversary
from .distinguishers import (
    DISTINGUISHERS,
    ConstantDistinguisher,
    InverseConsistencyDistinguisher,
    PermutationTableReader,
    PrivParityDistinguisher,
    TruthTableReader,
)
from .models import Adversary, Advice, Distinguisher, GameReport, ResourceBudget, advantage, joint_sigma
from .runners import advantage_interval, exact_table_advantage, run_indiff_experiment, summarize, weak_offline
from .security import (
    ComposedAdversary,
    InversionGame,
    SecurityGame,
    Transcript,
    compose_adversary,
    function_inversion_game,
    function_model,
    run_security_game,
    sponge_inversion_game,
    sponge_model,
)
from .shared_randomness import (
    SRRemovalResult,
    acceptance_probability,
    pair_acceptance,
    remove_shared_randomness,
    table_acceptance,
)
from .simulators import (
    BiasedSRSimulatorPair,
    FixedSRSimulatorPair,
    IdentitySimulatorPair,
    ResetSimulatorPair,
    SimulatorPair,
    ideal_interface,
    lift_reset_to_precomp,
    online_interface,
    replay_check,
)

__all__ = [
    "ReplayAdversary",
    "TruthTableAdversary",
    "DISTINGUISHERS",
    "ConstantDistinguisher",
    "InverseConsistencyDistinguisher",
    "PermutationTableReader",
    "PrivParityDistinguisher",
    "TruthTableReader",
    "Adversary",
    "Advice",
    "Distinguisher",
    "GameReport",
    "ResourceBudget",
    "advantage",
    "joint_sigma",
    "advantage_interval",
    "exact_table_advantage",
    "run_indiff_experiment",
    "summarize",
    "weak_offline",
    "ComposedAdversary",
    "InversionGame",
    "SecurityGame",
    "Transcript",
    "compose_adversary",
    "function_inversion_game",
    "function_model",
    "run_security_game",
    "sponge_inversion_game",
    "sponge_model",
    "SRRemovalResult",
    "acceptance_probability",
    "pair_acceptance",
    "table_acceptance",
    "remove_shared_randomness",
    "BiasedSRSimulatorPair",
    "FixedSRSimulatorPair",
    "IdentitySimulatorPair",
    "ResetSimulatorPair",
    "SimulatorPair",
    "ideal_interface",
    "lift_reset_to_precomp",
    "online_interface",
    "replay_check",
]
