"""Symmetrization of the one-round sponge and its stateless simulator."""
from .models import SharedRandomness, Transversal, transversal_table
from .oracle import SimOracle, point_eval_block_perm, sim_query, transversal_fwd, transversal_inv
from .stateful import LazyPermutationSimulator
from .symmetrize import FunctionBatch, SymmetrizedBatch, symmetrize, symmetrize_with, symmetrizers

__all__ = [
    "SharedRandomness",
    "Transversal",
    "transversal_table",
    "SimOracle",
    "point_eval_block_perm",
    "sim_query",
    "transversal_fwd",
    "transversal_inv",
    "LazyPermutationSimulator",
    "FunctionBatch",
    "SymmetrizedBatch",
    "symmetrize",
    "symmetrize_with",
    "symmetrizers",
]
