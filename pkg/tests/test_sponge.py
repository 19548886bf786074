"""
Tests for the one-round sponge and the query interfaces.
"""
import pytest
from app.bitdomain import PermutationTable, SpongeParams, Word, sample_function, sample_permutation
from app.core.errors import BudgetViolation, ConfigurationError, ParameterError, ProtocolError
from app.sponge import (
    Direction,
    Interface,
    construction_world,
    random_oracle_world,
    real_world,
    sponge_eval,
    sponge_truth_table,
)


class TestSpongeEval:
    """Test suite for Sp^phi."""

    def test_identity_permutation(self):
        """Test that the identity permutation hashes x to x."""
        params = SpongeParams(1, 1)
        phi = PermutationTable.identity(2)

        assert [sponge_eval(phi, x, params) for x in range(2)] == [0, 1]

    def test_truth_table_matches_pointwise(self):
        """Test that the table shortcut agrees with single evaluations."""
        params = SpongeParams(2, 3)
        phi = sample_permutation(params.n, 11, params=params)
        table = sponge_truth_table(phi, params)

        assert table.as_tuple() == tuple(sponge_eval(phi, x, params) for x in range(4))

    def test_one_forward_query(self):
        """Test that each evaluation costs exactly one call to phi."""
        params = SpongeParams(2, 2)
        phi = sample_permutation(params.n, 3)
        calls = []

        def oracle(w):
            calls.append(w)
            return phi.fwd(w)

        sponge_eval(oracle, Word(3, 2), params)
        assert calls == [3 << 2]

    def test_input_width_checked(self):
        """Test that inputs outside {0,1}^r are refused."""
        with pytest.raises(ParameterError):
            sponge_eval(PermutationTable.identity(2), 2, SpongeParams(1, 1))

    def test_width_mismatch(self):
        """Test that phi must act on n-bit words."""
        with pytest.raises(ParameterError):
            sponge_truth_table(PermutationTable.identity(3), SpongeParams(1, 1))


class TestWorlds:
    """Test suite for the real and random-oracle worlds."""

    def test_real_world_consistent(self):
        """Test that priv equals the sponge of the exposed pub."""
        params = SpongeParams(2, 2)
        interface = real_world(params, 4)

        for x in range(4):
            assert interface.priv_eval(x) == interface.pub_eval(Direction.FWD, x << 2) >> 2
        w = interface.pub_eval(Direction.FWD, 9)
        assert interface.pub_eval(Direction.INV, w) == 9

    def test_counters_are_separate(self):
        """Test that priv calls never move the pub counter."""
        interface = real_world(SpongeParams(1, 1), 0)
        interface.priv_eval(0)
        interface.priv_eval(1)
        interface.pub_eval(Direction.FWD, 2)

        assert interface.counts == (2, 1)

    def test_truth_tables_exposed(self):
        """Test offline reads of priv and phi."""
        params = SpongeParams(1, 2)
        phi = sample_permutation(params.n, 1, params=params)
        interface = construction_world(params, phi)

        assert interface.truth_table("phi") == phi
        assert interface.truth_table("priv") == sponge_truth_table(phi, params)
        with pytest.raises(ConfigurationError):
            interface.truth_table("missing")

    def test_ideal_pub_unbound(self):
        """Test that the ideal world needs a simulator for pub."""
        interface = random_oracle_world(SpongeParams(1, 1), 0)

        assert not interface.pub_bound
        with pytest.raises(ConfigurationError):
            interface.pub_eval(Direction.FWD, 0)

    def test_random_oracle_model_pub(self):
        """Test that expose_pub makes pub the function itself, forward only."""
        params = SpongeParams(2, 2)
        f = sample_function(params, 2)
        interface = random_oracle_world(params, 0, expose_pub=True, f=f)

        assert [interface.pub_eval(Direction.FWD, x) for x in range(4)] == list(f.as_tuple())
        with pytest.raises(ParameterError):
            interface.pub_eval(Direction.INV, 0)


class TestBudgetedView:
    """Test suite for online query budgets."""

    def test_budget_enforced(self):
        """Test that the (T+1)-th query aborts."""
        view = real_world(SpongeParams(1, 1), 0).online(2)
        view.priv_eval(0)
        view.pub_eval(Direction.FWD, 1)

        assert view.queries == 2
        with pytest.raises(BudgetViolation):
            view.priv_eval(1)

    def test_unbounded_view(self):
        """Test that budget None never aborts."""
        view = real_world(SpongeParams(1, 1), 0).online(None)
        for _ in range(50):
            view.priv_eval(0)

        assert view.priv_queries == 50

    def test_pub_only_view(self):
        """Test that a pub-only stage cannot reach priv."""
        view = real_world(SpongeParams(1, 1), 0).online(5, allow_priv=False)

        with pytest.raises(ProtocolError):
            view.priv_eval(0)

    def test_unbound_priv(self):
        """Test that an interface without priv refuses priv queries."""
        with pytest.raises(ConfigurationError):
            Interface(SpongeParams(1, 1), priv=None).priv_eval(0)
