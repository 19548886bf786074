"""
Stateless query-access simulator for the symmetrized permutation
phi_hat = omega . pi_f . sigma with omega ~ H and sigma ~ K.

sigma and omega are never materialized: a query evaluates the one block
permutation it lands in, straight from the shared randomness.
"""
from typing import Union

from app.bitdomain import SpongeParams, Word
from app.core.errors import ParameterError
from app.sponge import CountingOracle, Direction, QueryCounter
from app.young import BlockPartition, block_tables

from .models import FunctionOracle, SharedRandomness, Transversal


def point_eval_block_perm(
    seed: int,
    partition: BlockPartition,
    block_id: int,
    point: int,
    direction: Direction = Direction.FWD,
) -> int:
    """
    Evaluate the seeded uniform permutation of one block (or its inverse) at a point.

    Value-identical to young.sample_member(YoungSubgroup(partition), seed) restricted
    to the block.

    Raises:
        ParameterError: if point does not lie in the block
    """
    if partition.block_of(point) != block_id:
        raise ParameterError(f"point {point} is not in block {block_id} of the {partition.kind}-partition")
    size = partition.block_size(block_id)
    if size == 1:
        return point
    forward, backward = block_tables(seed, partition.kind, block_id, size)
    table = forward if Direction(direction) is Direction.FWD else backward
    return partition.point_at(block_id, int(table[partition.local_index(point)]))


def _as_int(w: Union[Word, int], params: SpongeParams) -> int:
    if isinstance(w, Word):
        if w.width != params.n:
            raise ParameterError(f"expected an {params.n}-bit word, got width {w.width}")
        w = w.value
    if not 0 <= w < params.domain_size:
        raise ParameterError(f"value {w} is not an {params.n}-bit word")
    return int(w)


def transversal_fwd(t: Transversal, w: Union[Word, int]) -> int:
    return t.fwd(_as_int(w, t.params))


def transversal_inv(t: Transversal, w: Union[Word, int]) -> int:
    return t.inv(_as_int(w, t.params))


class SimOracle:
    """
    Answers phi_hat and phi_hat^-1 with exactly one f-query per call.

    Holds no state besides counters: answers depend only on
    (direction, input, f, shared randomness).
    """

    def __init__(self, params: SpongeParams, f_oracle: FunctionOracle, sr: SharedRandomness):
        self.params = params
        self.sr = sr
        self.f_oracle = CountingOracle(f_oracle)
        self.transversal = Transversal(params, self.f_oracle)
        self.a_partition = BlockPartition(params, "A")
        self.b_partition = BlockPartition(params, "B")
        self.block_evals = QueryCounter()

    @property
    def f_queries(self) -> int:
        return self.f_oracle.queries

    def _sigma(self, w: int, direction: Direction) -> int:
        block = self.b_partition.block_of(w)
        self.block_evals.increment()
        return point_eval_block_perm(self.sr.sigma_seed, self.b_partition, block, w, direction)

    def _omega(self, w: int, direction: Direction) -> int:
        block = self.a_partition.block_of(w)
        self.block_evals.increment()
        return point_eval_block_perm(self.sr.omega_seed, self.a_partition, block, w, direction)

    def fwd(self, w: int) -> int:
        return self._omega(self.transversal.fwd(self._sigma(w, Direction.FWD)), Direction.FWD)

    def inv(self, w: int) -> int:
        return self._sigma(self.transversal.inv(self._omega(w, Direction.INV)), Direction.INV)

    def query(self, direction: Direction, w: Union[Word, int]) -> int:
        w = _as_int(w, self.params)
        return self.fwd(w) if Direction(direction) is Direction.FWD else self.inv(w)

    __call__ = fwd

    def to_dict(self) -> dict:
        return {
            **self.params.to_dict(),
            "f_queries": self.f_queries,
            "block_evals": self.block_evals.value,
        }


def sim_query(o: SimOracle, direction: Direction, w: Union[Word, int]) -> int:
    return o.query(direction, w)
