"""The one-round sponge and the public/private interface abstraction."""
from .construction import (
    construction_world,
    function_pub,
    permutation_pub,
    random_oracle_world,
    real_world,
    sponge_eval,
    sponge_truth_table,
)
from .interface import BudgetedView, CountingOracle, Direction, Interface, QueryCounter

__all__ = [
    "construction_world",
    "function_pub",
    "permutation_pub",
    "random_oracle_world",
    "real_world",
    "sponge_eval",
    "sponge_truth_table",
    "BudgetedView",
    "CountingOracle",
    "Direction",
    "Interface",
    "QueryCounter",
]
