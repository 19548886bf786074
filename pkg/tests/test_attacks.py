"""
Tests for the trapdoor separation and Hellman trade-off attacks.
"""
import numpy as np
import pandas as pd
import pytest
from app.attacks import (
    CSV_COLUMNS,
    HellmanAdversary,
    analytic_trapdoor_advantage,
    build_tables,
    collapse_check,
    coverage,
    envelope_constant,
    find_trapdoor,
    indifferentiability_gap,
    invert_with_tables,
    run_separation,
    run_tradeoff_cell,
    run_tradeoff_sweep,
    sample_trapdoor,
    transfer_check,
    trapdoor_attack,
    trapdoor_distinguish,
    trapdoor_sweep,
)
from app.bitdomain import SpongeParams
from app.core.errors import ParameterError
from app.games import IdentitySimulatorPair, compose_adversary, run_security_game, sponge_inversion_game, sponge_model


class TestTrapdoor:
    """Test suite for the planted trapdoor function."""

    def test_planted_column(self):
        """Test g(x || s) = x for every x."""
        tf = sample_trapdoor(6, seed=1)

        assert find_trapdoor(tf) == tf.s
        for x in range(1 << 6):
            assert tf(trapdoor_attack(6, tf.s, x)) == x

    def test_foil_has_no_trapdoor(self):
        """Test that the plain function has no identity column."""
        assert find_trapdoor(sample_trapdoor(6, seed=1, planted=False)) is None

    def test_guardrail(self):
        """Test that n is capped."""
        with pytest.raises(ParameterError):
            sample_trapdoor(20, seed=0)

    def test_separation(self):
        """Test rate 1 with zero queries against g and a low rate against h."""
        reports = run_separation(8, instances=200, challenges=50, seed=0)
        trapdoor, plain = reports["trapdoor"], reports["plain"]

        assert trapdoor.trials == 10_000
        assert trapdoor.frequency == 1.0
        assert trapdoor.extra["T1"] == 0
        assert trapdoor.measured.S == 8
        assert plain.frequency < 0.02


class TestTrapdoorDistinguisher:
    """Test suite for the query-bounded hit distinguisher."""

    def test_zero_queries(self):
        """Test that T = 0 gives no advantage."""
        estimate = trapdoor_distinguish(12, 0, trials=100)

        assert estimate.value == 0.0

    def test_analytic_value(self):
        """Test the closed form at n = 12, T = 64."""
        assert analytic_trapdoor_advantage(12, 64) == pytest.approx(0.0153, abs=5e-4)
        assert analytic_trapdoor_advantage(12, 0) == 0.0

    @pytest.mark.statistical
    def test_estimate_matches_analytic(self):
        """Test that the measured advantage covers the closed form."""
        estimate = trapdoor_distinguish(12, 64, trials=20_000, seed=1)

        assert estimate.covers(analytic_trapdoor_advantage(12, 64))

    def test_sweep_monotone(self):
        """Test that hit rates never fall as T grows."""
        frame = trapdoor_sweep(8, [0, 4, 16, 64], trials=2000, seed=2)

        assert list(frame["T"]) == [0, 4, 16, 64]
        assert frame["trapdoor"].is_monotonic_increasing
        assert frame["plain"].is_monotonic_increasing
        assert frame["trapdoor"].iloc[0] == 0.0

    def test_negative_budget(self):
        """Test that budgets must be non-negative."""
        with pytest.raises(ParameterError):
            trapdoor_sweep(8, [-1], trials=10)


class TestHellman:
    """Test suite for Hellman tables."""

    def test_tables_deterministic(self):
        """Test that the seed fixes the tables."""
        target = np.arange(16)[::-1]
        first = build_tables(target, 4, m=4, t=3, k=2, seed=5)
        second = build_tables(target, 4, m=4, t=3, k=2, seed=5)

        assert np.array_equal(first.ends, second.ends)
        assert np.array_equal(first.starts, second.starts)
        assert (first.multipliers % 2 == 1).all()
        assert first.advice_bits == 2 * 4 * 2 * 4

    def test_ends_sorted(self):
        """Test that each table is sorted by end point."""
        tables = build_tables(np.arange(64) ^ 7, 6, m=16, t=4, k=3, seed=1)

        assert all((np.diff(row) >= 0).all() for row in tables.ends)

    def test_found_preimages_are_correct(self):
        """Test that every returned x is a verified preimage."""
        table = (np.arange(16) * 5 + 3) % 16
        tables = build_tables(table, 4, m=16, t=1, k=1, seed=3)
        found = 0
        for y in range(16):
            x = invert_with_tables(tables, lambda v: int(table[v]), y)
            if x is not None:
                assert table[x] == y
                found += 1

        assert found > 0

    def test_miss_returns_none(self):
        """Test that a value outside the image is never inverted."""
        table = np.zeros(16, dtype=np.int64)
        tables = build_tables(table, 4, m=8, t=3, k=2, seed=0)

        assert invert_with_tables(tables, lambda v: int(table[v]), 5) is None

    def test_query_cap(self):
        """Test that a zero cap stops before any evaluation."""
        table = np.arange(16)
        tables = build_tables(table, 4, m=16, t=2, k=1, seed=0)
        calls = []

        def evaluate(v):
            calls.append(v)
            return int(table[v])

        assert invert_with_tables(tables, evaluate, 3, max_queries=0) is None
        assert calls == []

    def test_invalid_sizes(self):
        """Test that m, t and k must be positive."""
        with pytest.raises(ParameterError):
            build_tables(np.arange(4), 2, m=0, t=1, k=1, seed=0)

    def test_adversary_budgets(self):
        """Test S = k m 2r and T = k (t(t+1)/2 + t)."""
        adversary = HellmanAdversary(SpongeParams(4, 4), m=4, t=3, k=2)

        assert adversary.S == 64
        assert adversary.T == 18
        with pytest.raises(ParameterError):
            HellmanAdversary(SpongeParams(4, 4), m=4, t=3, k=2, evaluation="oracle")

    def test_adversary_within_budget(self):
        """Test that the online phase never exceeds T."""
        params = SpongeParams(6, 6)
        adversary = HellmanAdversary(params, m=16, t=4, k=2)
        report = run_security_game(
            sponge_inversion_game(params), sponge_model, adversary, params, instances=4, challenges=25, seed=1,
        )

        assert report.aborted == 0
        assert report.extra["T1"] <= adversary.T
        assert report.within_budget
        assert report.successes > 0

    def test_identity_composition(self):
        """Test that the identity simulator leaves Hellman results unchanged."""
        params = SpongeParams(5, 5)
        adversary = HellmanAdversary(params, m=8, t=4, k=2)
        game = sponge_inversion_game(params)
        plain = run_security_game(game, sponge_model, adversary, params, instances=3, challenges=20, seed=4)
        composed = run_security_game(
            game, sponge_model, compose_adversary(adversary, IdentitySimulatorPair()), params,
            instances=3, challenges=20, seed=4,
        )

        assert plain.successes == composed.successes
        assert plain.extra["T1"] == composed.extra["T1"]


class TestTradeoff:
    """Test suite for trade-off sweeps and their checks."""

    def test_coverage(self):
        """Test the (m k)(t k) / 2^r abscissa."""
        assert coverage(4, 4, 4, 1) == 1.0
        assert coverage(10, 8, 8, 2) == 256 / 1024

    def test_cell_worlds(self):
        """Test one grid cell in all three worlds."""
        reports = run_tradeoff_cell(6, 6, m=8, t=4, k=2, instances=3, challenges=10, seed=0)

        assert [r.world for r in reports] == ["sponge", "composed", "function"]
        assert all(r.aborted == 0 for r in reports)
        assert all(r.extra["m"] == 8 for r in reports)
        assert reports[1].extra["shared_coins_bits"] == 256
        assert reports[1].measured.S == reports[0].measured.S + 256

    def test_sweep_and_checks(self):
        """Test the CSV frame, transfer inequality and capacity collapse."""
        grid = [
            {"r": 5, "c": 5, "m": 8, "t": 4, "k": 1},
            {"r": 5, "c": 7, "m": 8, "t": 4, "k": 1},
        ]
        frame = run_tradeoff_sweep(grid, instances=3, challenges=10, seed=1)

        assert list(frame.columns) == CSV_COLUMNS
        assert len(frame) == 6
        transfer = transfer_check(frame, epsilon_indiff=0.0)
        assert len(transfer) == 2
        assert {"gap", "bound", "holds"} <= set(transfer.columns)
        assert transfer["holds"].all()
        collapse = collapse_check(frame)
        assert len(collapse) == 1
        assert collapse.iloc[0]["capacities"] == [5, 7]
        assert collapse["collapsed"].all()

    @pytest.mark.slow
    @pytest.mark.statistical
    def test_composition_transfer_r8_c8(self):
        """Test sponge vs composed inversion at (8,8) over 10^4 trials per world."""
        grid = [{"r": 8, "c": 8, "m": 16, "t": 16, "k": 2}]
        frame = run_tradeoff_sweep(grid, instances=100, challenges=100, seed=4, worlds=("sponge", "composed"))
        gap = indifferentiability_gap(8, 8, samples=4096, seed=4)

        assert set(frame["trials"]) == {10_000}
        transfer = transfer_check(frame, gap.value + gap.radius)
        assert len(transfer) == 1
        assert transfer["holds"].all()

    def test_envelope_constant(self):
        """Test K = max eps / x on a hand-made frame."""
        frame = pd.DataFrame([
            {"world": "sponge", "r": 4, "c": 4, "m": 4, "t": 4, "k": 1, "eps": 0.5},
            {"world": "sponge", "r": 4, "c": 4, "m": 2, "t": 2, "k": 1, "eps": 0.2},
            {"world": "function", "r": 4, "c": 4, "m": 2, "t": 2, "k": 1, "eps": 0.9},
        ])

        assert envelope_constant(frame) == pytest.approx(0.8)
        assert envelope_constant(frame, world="composed") == 0.0
