"""
Tests for symmetrization and the stateless sponge simulator.
"""
import itertools

import numpy as np
import pytest
from app.bitdomain import FunctionTable, SpongeParams, derive_seed, sample_function
from app.core.errors import ContractError, ParameterError
from app.games import lift_reset_to_precomp, replay_check
from app.sponge import Direction, sponge_truth_table
from app.stats import chi_square_uniformity
from app.symsim import (
    LazyPermutationSimulator,
    SharedRandomness,
    SimOracle,
    Transversal,
    point_eval_block_perm,
    sim_query,
    symmetrize,
    transversal_table,
)
from app.young import BlockCache, BlockPartition

SETTINGS = [(1, 1), (1, 2), (2, 2), (2, 3)]


class TestTransversal:
    """Test suite for pi_f."""

    @pytest.mark.parametrize("r,c", SETTINGS)
    def test_transversal_hashes_to_f(self, r, c):
        """Test Sp^{pi_f} = f."""
        params = SpongeParams(r, c)
        f = sample_function(params, 1)

        assert sponge_truth_table(transversal_table(f), params) == f

    def test_oracle_matches_table(self):
        """Test the one-query transversal against its full table."""
        params = SpongeParams(2, 3)
        f = sample_function(params, 2)
        table = transversal_table(f)
        t = Transversal(params, f)

        for w in range(params.domain_size):
            assert t.fwd(w) == table.fwd(w)
            assert t.inv(table.fwd(w)) == w


class TestSymmetrize:
    """Test suite for omega . pi_f . sigma."""

    @pytest.mark.parametrize("r,c", SETTINGS)
    def test_sponge_match(self, r, c):
        """Test Sp^{symmetrize(f)} = f for 100 seeded functions."""
        params = SpongeParams(r, c)
        for i in range(100):
            f = sample_function(params, derive_seed(0, "f", i))
            phi = symmetrize(f, derive_seed(0, "sr", i))
            assert sponge_truth_table(phi, params) == f

    def test_shared_randomness_changes_phi(self):
        """Test that different shared randomness gives different permutations."""
        params = SpongeParams(2, 3)
        f = sample_function(params, 0)

        assert symmetrize(f, 1) != symmetrize(f, 2)
        assert symmetrize(f, 1) == symmetrize(f, SharedRandomness(1))


class TestSimOracle:
    """Test suite for the point-wise simulator."""

    def test_agrees_with_offline_table(self):
        """Test that online answers equal the offline symmetrized table."""
        params = SpongeParams(2, 3)
        f = sample_function(params, 3)
        sr = SharedRandomness(17)
        sim = SimOracle(params, f, sr)
        phi = symmetrize(f, sr)

        for w in range(params.domain_size):
            assert sim.fwd(w) == phi.fwd(w)
            assert sim.inv(w) == phi.inv(w)

    def test_inverse_consistency(self):
        """Test inv(fwd(w)) = w."""
        params = SpongeParams(2, 4)
        sim = SimOracle(params, sample_function(params, 4), SharedRandomness(5))

        for w in range(params.domain_size):
            assert sim_query(sim, Direction.INV, sim_query(sim, Direction.FWD, w)) == w

    def test_single_f_query_per_call(self):
        """Test that 1000 mixed calls make exactly 1000 f-queries."""
        params = SpongeParams(2, 3)
        sim = SimOracle(params, sample_function(params, 6), SharedRandomness(7))
        for i in range(1000):
            sim.query(Direction.FWD if i % 3 else Direction.INV, (i * 7) % params.domain_size)

        assert sim.f_queries == 1000

    def test_sponge_inputs_read_f(self):
        """Test that fwd at x || 0^c carries f(x) in its top bits."""
        params = SpongeParams(2, 2)
        f = sample_function(params, 8)
        sim = SimOracle(params, f, SharedRandomness(9))

        for x in range(params.rate_size):
            assert sim.fwd(x << params.c) >> params.c == f(x)

    def test_out_of_range_query(self):
        """Test that queries must be n-bit words."""
        params = SpongeParams(1, 1)
        sim = SimOracle(params, sample_function(params, 0), SharedRandomness(0))

        with pytest.raises(ParameterError):
            sim.query(Direction.FWD, 4)

    def test_point_outside_block(self):
        """Test that block evaluation checks membership."""
        partition = BlockPartition(SpongeParams(1, 1), "A")

        with pytest.raises(ParameterError):
            point_eval_block_perm(0, partition, 0, 3)


class TestStatelessness:
    """Test suite for the replay check."""

    def test_sim_oracle_passes(self):
        """Test that the sponge simulator is stateless."""
        replay_check(SimOracle, SpongeParams(2, 4), seed=3)

    def test_lazy_simulator_rejected(self):
        """Test that a lazily sampled permutation fails the replay check."""
        with pytest.raises(ContractError):
            replay_check(LazyPermutationSimulator, SpongeParams(2, 4), seed=3)

    def test_lift_rejects_stateful(self):
        """Test that lifting refuses a stateful simulator."""
        with pytest.raises(ContractError):
            lift_reset_to_precomp(LazyPermutationSimulator, SpongeParams(2, 4))

    def test_lift_stateless(self):
        """Test that lifting the sponge simulator needs no advice."""
        pair = lift_reset_to_precomp(SimOracle, SpongeParams(2, 4))

        assert pair.S_sim == 0
        assert pair.uses_shared_randomness

    def test_lazy_simulator_consistent_on_sponge_inputs(self):
        """Test that the lazy simulator still agrees with f at x || 0^c."""
        params = SpongeParams(2, 4)
        f = sample_function(params, 1)
        sim = LazyPermutationSimulator(params, f, SharedRandomness(2))

        for x in range(params.rate_size):
            assert sim.fwd(x << params.c) >> params.c == f(x)


class TestBlockCacheBound:
    """Test suite for simulator memory under many shared-randomness values."""

    def test_points_stay_within_budget(self, monkeypatch):
        """Test that distinct SR values cannot grow the block cache past its budget."""
        params = SpongeParams(2, 4)
        f = sample_function(params, 1)
        small = BlockCache(max_entries=1000, max_points=64, max_block=64)
        reference = [SimOracle(params, f, SharedRandomness(value)).fwd(w) for value in range(3) for w in range(64)]

        monkeypatch.setattr("app.young.sampling.BLOCK_CACHE", small)
        for value in range(40):
            sim = SimOracle(params, f, SharedRandomness(value))
            for w in range(params.domain_size):
                sim.fwd(w)
            assert small.info()["points"] <= 64

        bounded = [SimOracle(params, f, SharedRandomness(value)).fwd(w) for value in range(3) for w in range(64)]
        assert bounded == reference
        assert small.misses > small.info()["entries"]


class TestSamplingUniformity:
    """Test suite for the distributions behind the simulator."""

    @pytest.mark.statistical
    def test_symmetrize_uniform_on_fiber(self):
        """Test that phi is uniform over the 8 permutations hashing to the identity at (1,1)."""
        params = SpongeParams(1, 1)
        f = FunctionTable(params, np.array([0, 1]))
        fiber = [p for p in itertools.permutations(range(4)) if p[0] >> 1 == 0 and p[2] >> 1 == 1]
        index = {p: i for i, p in enumerate(fiber)}
        draws = np.array([index[symmetrize(f, seed).as_tuple()] for seed in range(4000)])

        assert len(fiber) == 8
        assert len(set(draws.tolist())) == 8
        assert chi_square_uniformity(draws, 8) > 0.001

    @pytest.mark.statistical
    def test_block_shuffle_uniform(self):
        """Test that the size-4 A-block at (1,2) is shuffled into all 24 orders equally often."""
        partition = BlockPartition(SpongeParams(1, 2), "A")
        points = [w for w in range(8) if partition.block_of(w) == 0]
        index = {p: i for i, p in enumerate(itertools.permutations(points))}
        draws = np.array([
            index[tuple(point_eval_block_perm(seed, partition, 0, w) for w in points)]
            for seed in range(2400)
        ])

        assert len(points) == 4
        assert chi_square_uniformity(draws, 24) > 0.001
