"""
Offline symmetrization: a full table of omega . pi_f . sigma.
"""
from functools import cached_property, lru_cache
from typing import Sequence, Tuple, Union

import numpy as np

from app.bitdomain import FunctionTable, PermutationTable, SeedLike, SpongeParams
from app.young import YoungSubgroup, member_forward, sample_member, subgroup_h, subgroup_k

from .models import SharedRandomness, transversal_table


@lru_cache(maxsize=8)
def symmetrizers(sr: SharedRandomness, params: SpongeParams) -> Tuple[PermutationTable, PermutationTable]:
    """(omega, sigma) tables drawn from H and K under the shared randomness."""
    omega = sample_member(subgroup_h(params), sr.omega_seed)
    sigma = sample_member(subgroup_k(params), sr.sigma_seed)
    return omega, sigma


def symmetrize_with(f: FunctionTable, omega: PermutationTable, sigma: PermutationTable) -> PermutationTable:
    return omega.compose(transversal_table(f).compose(sigma))


def symmetrize(f: FunctionTable, seed: Union[SeedLike, SharedRandomness]) -> PermutationTable:
    """
    Uniform element of { phi : Sp^phi = f } given uniform coins.

    A plain seed is used as the shared-randomness seed itself, so
    symmetrize(f, s) agrees pointwise with SimOracle(params, f, SharedRandomness(s)).
    """
    sr = seed if isinstance(seed, SharedRandomness) else SharedRandomness(seed)
    omega, sigma = symmetrizers(sr, f.params)
    return symmetrize_with(f, omega, sigma)


class FunctionBatch:
    """A fixed list of functions with their truth tables and transversal tables stacked."""

    def __init__(self, params: SpongeParams, functions: Sequence[FunctionTable]):
        self.params = params
        self.functions = list(functions)
        self.tables = np.stack([f.table for f in self.functions])
        self.transversals = np.stack([transversal_table(f).forward for f in self.functions])
        self.h: YoungSubgroup = subgroup_h(params)
        self.k: YoungSubgroup = subgroup_k(params)

    def __len__(self) -> int:
        return len(self.functions)

    def symmetrized(self, sr: SharedRandomness) -> "SymmetrizedBatch":
        return SymmetrizedBatch(self, sr)


class SymmetrizedBatch:
    """
    phi_j = omega . pi_{f_j} . sigma for every function of a batch under one SR.

    omega and sigma are drawn on first use, so readers of priv alone pay nothing.
    """

    def __init__(self, batch: FunctionBatch, sr: SharedRandomness):
        self.batch = batch
        self.sr = sr

    @cached_property
    def omega(self) -> np.ndarray:
        return member_forward(self.batch.h, self.sr.omega_seed)

    @cached_property
    def sigma(self) -> np.ndarray:
        return member_forward(self.batch.k, self.sr.sigma_seed)

    def fwd(self, w: int) -> np.ndarray:
        """phi_j(w) for every j."""
        return self.omega[self.batch.transversals[:, self.sigma[w]]]

    def table(self) -> np.ndarray:
        """Full forward tables, one row per function."""
        return self.omega[self.batch.transversals[:, self.sigma]]
