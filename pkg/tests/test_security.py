"""
Tests for pre-computation security games and adversary composition.
"""
import numpy as np
import pytest
from app.bitdomain import SpongeParams
from app.core.errors import ProtocolError
from app.games import (
    Adversary,
    Advice,
    IdentitySimulatorPair,
    InversionGame,
    ReplayAdversary,
    ResetSimulatorPair,
    Transcript,
    TruthTableAdversary,
    compose_adversary,
    function_inversion_game,
    function_model,
    run_security_game,
    sponge_inversion_game,
    sponge_model,
)
from app.symsim import SharedRandomness


class BloatedAdversary(Adversary):
    """Declares S = 0 but stores one bit."""
    name = "bloated"

    def offline(self, interface, coins):
        return Advice.from_bit(1)

    def online(self, view, advice, challenge, coins):
        return 0


class TestTranscript:
    """Test suite for message ordering."""

    def test_in_order(self):
        """Test a complete round."""
        transcript = Transcript()
        for step in Transcript.STEPS:
            transcript.record(step)

        assert transcript.complete

    def test_answer_before_challenge(self):
        """Test that A1 cannot answer before the challenge."""
        with pytest.raises(ProtocolError):
            Transcript().record("answer")

    def test_extra_message(self):
        """Test that a finished round accepts nothing more."""
        transcript = Transcript()
        for step in Transcript.STEPS:
            transcript.record(step)

        with pytest.raises(ProtocolError):
            transcript.record("challenge")


class TestInversionGame:
    """Test suite for the inversion game."""

    def test_cryptosystem_queries(self):
        """Test that P makes one query to challenge and one to verify."""
        game = InversionGame(in_bits=3, out_bits=3)
        calls = []

        def priv(x):
            calls.append(x)
            return x ^ 5

        state, message = game.challenge(priv, np.random.default_rng(0))
        assert game.verify(priv, state, message ^ 5)
        assert len(calls) == game.T2 == 2

    def test_out_of_range_answer(self):
        """Test that answers outside the domain lose."""
        game = InversionGame(in_bits=2, out_bits=2)

        assert not game.verify(lambda x: 0, 0, 4)

    def test_truth_table_adversary_always_wins(self):
        """Test that storing the whole table inverts every challenge."""
        params = SpongeParams(3, 3)
        adversary = TruthTableAdversary(params)
        report = run_security_game(
            sponge_inversion_game(params), sponge_model, adversary, params, instances=5, challenges=20, seed=0,
        )

        assert report.frequency == 1.0
        assert report.measured.S == adversary.S == 3 * 8
        assert report.extra["T1"] == 0
        assert report.extra["T2"] == 2
        assert report.within_budget

    def test_replay_adversary_rarely_wins(self):
        """Test that echoing the challenge wins about twice in 2^r."""
        params = SpongeParams(6, 6)
        report = run_security_game(
            function_inversion_game(params), function_model, ReplayAdversary(), params,
            instances=50, challenges=40, seed=1,
        )

        assert report.trials == 2000
        assert report.frequency < 0.1

    def test_oversized_advice_aborts_instance(self):
        """Test that advice beyond S aborts every challenge of the instance."""
        params = SpongeParams(2, 2)
        report = run_security_game(
            sponge_inversion_game(params), sponge_model, BloatedAdversary(), params, instances=3, challenges=4, seed=0,
        )

        assert report.aborted == report.trials == 12
        assert report.successes == 0


class TestComposition:
    """Test suite for composed adversaries."""

    def test_budgets_add_simulator_advice(self):
        """Test S' = S + S_sim + seed bits and T' = T."""
        params = SpongeParams(2, 2)
        composed = compose_adversary(TruthTableAdversary(params), ResetSimulatorPair())

        assert composed.S == 8 + SharedRandomness.SEED_BITS
        assert compose_adversary(TruthTableAdversary(params), IdentitySimulatorPair()).S == 8
        assert composed.T == 0

    def test_identity_composition_is_transparent(self):
        """Test that composing with the identity simulator changes nothing."""
        params = SpongeParams(3, 3)
        inner = TruthTableAdversary(params)
        game = sponge_inversion_game(params)
        plain = run_security_game(game, sponge_model, inner, params, instances=4, challenges=10, seed=2)
        composed = run_security_game(
            game, sponge_model, compose_adversary(inner, IdentitySimulatorPair()), params,
            instances=4, challenges=10, seed=2,
        )

        assert plain.successes == composed.successes
        assert plain.measured.S == composed.measured.S

    def test_reset_composition_in_function_model(self):
        """Test the lifted table adversary in the R-model and its shared coins."""
        params = SpongeParams(3, 3)
        composed = compose_adversary(TruthTableAdversary(params), ResetSimulatorPair())
        report = run_security_game(
            function_inversion_game(params), function_model, composed, params, instances=3, challenges=10, seed=3,
        )

        assert report.frequency == 1.0
        assert report.extra["shared_coins_bits"] == 256
        assert report.measured.S == composed.S
        assert report.measured.S == TruthTableAdversary(params).S + SharedRandomness.SEED_BITS

    def test_shared_coins_are_charged_as_advice(self):
        """Test that the simulator seed is part of the emitted advice bits."""
        params = SpongeParams(2, 2)
        inner = TruthTableAdversary(params)
        composed = compose_adversary(inner, ResetSimulatorPair())
        interface = function_model(params, 5)

        advice = composed.offline(interface, 11)

        assert advice.bits == inner.S + SharedRandomness.SEED_BITS
        assert advice.shared_coins_bits == SharedRandomness.SEED_BITS
        assert advice.payload[2] is not None
