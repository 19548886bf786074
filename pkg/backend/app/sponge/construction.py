"""
The one-round sponge Sp^phi(x) = top r bits of phi(x || 0^c), and the two
worlds every indifferentiability game is played in.
"""
from typing import Callable, Optional, Union

import numpy as np

from app.bitdomain import (
    FunctionTable,
    PermutationTable,
    SeedLike,
    SpongeParams,
    Word,
    derive_seed,
    sample_function,
    sample_permutation,
)
from app.core.errors import ParameterError
from app.core.logging import get_logger

from .interface import Direction, Interface

logger = get_logger(__name__)

ForwardOracle = Callable[[int], int]


def sponge_eval(phi: ForwardOracle, x: Union[Word, int], params: SpongeParams) -> int:
    """
    Evaluate Sp^phi at an r-bit input with exactly one forward query to phi.

    phi may be a PermutationTable or any callable w -> phi(w).
    """
    if isinstance(x, Word):
        if x.width != params.r:
            raise ParameterError(f"expected an {params.r}-bit word, got width {x.width}")
        x = x.value
    if not 0 <= x < params.rate_size:
        raise ParameterError(f"value {x} is not an {params.r}-bit word")
    return phi(x << params.c) >> params.c


def sponge_truth_table(phi: PermutationTable, params: SpongeParams) -> FunctionTable:
    """Full truth table of Sp^phi read directly off phi's forward table."""
    if phi.n != params.n:
        raise ParameterError(f"permutation width {phi.n} does not match n = {params.n}")
    inputs = np.arange(params.rate_size, dtype=np.uint32) << np.uint32(params.c)
    return FunctionTable(params=params, table=phi.forward[inputs] >> np.uint32(params.c))


def permutation_pub(phi: PermutationTable) -> Callable[[Direction, int], int]:
    def pub(direction: Direction, w: int) -> int:
        return phi.fwd(w) if direction is Direction.FWD else phi.inv(w)

    return pub


def function_pub(f: FunctionTable) -> Callable[[Direction, int], int]:
    """Public interface that is the random function itself (forward only)."""

    def pub(direction: Direction, x: int) -> int:
        if direction is not Direction.FWD:
            raise ParameterError("a random function has no inverse interface")
        return f(x)

    return pub


def construction_world(params: SpongeParams, phi: PermutationTable, world: str = "real") -> Interface:
    """
    Interface for (Sp^phi, (phi, phi^-1)).

    priv evaluates its own copy of phi, so priv calls never move the pub counter.
    """
    return Interface(
        params,
        priv=lambda x: sponge_eval(phi.fwd, x, params),
        pub=permutation_pub(phi),
        world=world,
        tables={"priv": lambda: sponge_truth_table(phi, params), "phi": phi},
    )


def real_world(params: SpongeParams, seed: SeedLike) -> Interface:
    """Sample a uniform phi and expose (Sp^phi, (phi, phi^-1))."""
    params.require_table_mode()
    phi = sample_permutation(params.n, derive_seed(seed, "real", "phi"), params=params)
    return construction_world(params, phi)


def random_oracle_world(
    params: SpongeParams,
    seed: SeedLike,
    expose_pub: bool = False,
    f: Optional[FunctionTable] = None,
) -> Interface:
    """
    Sample a uniform f and expose it as priv.

    pub stays unbound until a simulator is attached, unless expose_pub is set,
    in which case pub is f itself (the plain random-oracle model).
    """
    if f is None:
        f = sample_function(params, derive_seed(seed, "ideal", "f"))
    return Interface(
        params,
        priv=f,
        pub=function_pub(f) if expose_pub else None,
        world="ideal",
        tables={"priv": f, "f": f},
    )
