"""
Tests for exact laws, distances and the truncation curve.
"""
import math
from fractions import Fraction

import numpy as np
import pytest
from app.bitdomain import SpongeParams
from app.core.errors import ParameterError
from app.stats import (
    Distribution,
    Estimate,
    chi_square_counts,
    chi_square_uniformity,
    estimate_truthtable_tv,
    expected_collisions,
    expected_distinct,
    hoeffding_radius,
    profile_truthtable_tv,
    sponge_profile_probability,
    sponge_truthtable_law,
    symmetrized_permutation_tv,
    truncation_advantage_curve,
    truthtable_likelihood_ratio,
    tv_distance,
    uniform_function_law,
)


class TestDistribution:
    """Test suite for finite laws."""

    def test_exact_weights_must_sum_to_one(self):
        """Test that rational weights are checked exactly."""
        with pytest.raises(ParameterError):
            Distribution(("a", "b"), (Fraction(1, 3), Fraction(1, 3)))

    def test_negative_weight(self):
        """Test that negative weights are refused."""
        with pytest.raises(ParameterError):
            Distribution(("a", "b"), (Fraction(3, 2), Fraction(-1, 2)))

    def test_missing_outcome_has_zero_mass(self):
        """Test prob outside the support."""
        law = Distribution.uniform(["a", "b"])

        assert law.prob("c") == 0
        assert law.prob("a") == Fraction(1, 2)

    def test_tv_of_identical_laws(self):
        """Test that a law is at distance zero from itself."""
        law = uniform_function_law(SpongeParams(1, 1))

        assert tv_distance(law, law) == 0

    def test_float_tv(self):
        """Test TV between Monte Carlo laws."""
        p = Distribution(("a", "b"), (0.25, 0.75))
        q = Distribution(("a", "b"), (0.75, 0.25))

        assert tv_distance(p, q) == pytest.approx(0.5)


class TestSpongeLaws:
    """Test suite for the exact sponge truth-table law."""

    def test_law_r1_c1(self):
        """Test Pr[Sp = id] = Pr[Sp = not] = 1/3 and Pr[constant] = 1/6."""
        law = sponge_truthtable_law(SpongeParams(1, 1))

        assert law.prob((0, 1)) == Fraction(8, 24)
        assert law.prob((1, 0)) == Fraction(8, 24)
        assert law.prob((0, 0)) == Fraction(4, 24)
        assert law.prob((1, 1)) == Fraction(4, 24)

    def test_law_independent_of_order(self):
        """Test that the enumeration order does not change the law."""
        params = SpongeParams(1, 1)

        assert sponge_truthtable_law(params, order=[3, 1, 0, 2]) == sponge_truthtable_law(params)

    def test_order_must_be_permutation(self):
        """Test that a bad chunk order is refused."""
        with pytest.raises(ParameterError):
            sponge_truthtable_law(SpongeParams(1, 1), order=[0, 0, 1, 2])

    def test_tv_r1_c1(self):
        """Test the exact truth-table TV at (1,1)."""
        params = SpongeParams(1, 1)
        tv = tv_distance(sponge_truthtable_law(params), uniform_function_law(params))

        assert tv == Fraction(1, 6)
        assert profile_truthtable_tv(params) == Fraction(1, 6)

    def test_profile_probabilities_r1_c2(self):
        """Test 2/7 for non-constant and 3/14 for constant tables at (1,2)."""
        params = SpongeParams(1, 2)

        assert sponge_profile_probability(params, [1, 1]) == Fraction(2, 7)
        assert sponge_profile_probability(params, [2]) == Fraction(3, 14)

    def test_tv_r1_c2(self):
        """Test the truth-table TV at (1,2) and the bound 2 * 2^{-r/2}."""
        params = SpongeParams(1, 2)
        tv = tv_distance(sponge_truthtable_law(params), uniform_function_law(params))

        assert tv == Fraction(1, 14)
        assert profile_truthtable_tv(params) == tv
        assert tv <= 2 * 2 ** -0.5

    def test_symmetrized_tv_r1_c1(self):
        """Test the symmetrized-permutation TV at (1,1)."""
        assert symmetrized_permutation_tv(SpongeParams(1, 1)) == Fraction(1, 6)

    @pytest.mark.slow
    def test_symmetrized_tv_r1_c2(self):
        """Test the symmetrized-permutation TV over S_8."""
        tv = symmetrized_permutation_tv(SpongeParams(1, 2))

        assert tv == Fraction(1, 14)
        assert tv <= 2 * 2 ** -0.5

    def test_likelihood_ratio(self):
        """Test Pr_sponge / Pr_uniform for the identity at (1,1)."""
        params = SpongeParams(1, 1)

        assert truthtable_likelihood_ratio(params, [0, 1]) == pytest.approx(4 / 3)
        assert truthtable_likelihood_ratio(params, [1, 1]) == pytest.approx(2 / 3)

    def test_profile_tv_shrinks_with_capacity(self):
        """Test that the exact TV at r = 1 falls as c grows."""
        tvs = [profile_truthtable_tv(SpongeParams(1, c)) for c in (1, 2, 3)]

        assert tvs == [Fraction(1, 6), Fraction(1, 14), Fraction(1, 30)]

    @pytest.mark.statistical
    def test_estimate_covers_exact(self):
        """Test that the Monte Carlo TV covers the exact value."""
        params = SpongeParams(2, 2)
        estimate = estimate_truthtable_tv(params, samples=4096, seed=0)

        assert estimate.covers(float(profile_truthtable_tv(params)))


class TestHypothesis:
    """Test suite for radii and goodness-of-fit helpers."""

    def test_hoeffding_radius(self):
        """Test the closed form and the empty case."""
        assert hoeffding_radius(0) == 1.0
        assert hoeffding_radius(1000, delta=0.05) == pytest.approx(math.sqrt(math.log(40) / 2000))

    def test_balanced_counts(self):
        """Test that perfectly balanced counts give p = 1."""
        assert chi_square_uniformity(np.repeat(np.arange(8), 100), 8) == pytest.approx(1.0)

    def test_skewed_counts(self):
        """Test that a heavily skewed histogram is rejected."""
        assert chi_square_counts(np.array([1000, 10, 10, 10])) < 1e-6

    def test_samples_outside_support(self):
        """Test that out-of-range samples are refused."""
        with pytest.raises(ParameterError):
            chi_square_uniformity(np.array([0, 8]), 8)

    def test_too_few_samples_refused(self):
        """Test that sparse histograms are refused instead of given a p-value."""
        with pytest.raises(ParameterError):
            chi_square_uniformity(np.array([0, 1, 2, 3, 4, 5, 6, 7, 0, 1]), 8)
        with pytest.raises(ParameterError):
            chi_square_counts(np.array([4, 4, 4, 4]))

        assert chi_square_counts(np.array([5, 5, 5, 5])) == pytest.approx(1.0)

    def test_estimate_interval_clipped(self):
        """Test that intervals stay inside [0, 1]."""
        assert Estimate(value=0.02, radius=0.1, samples=10).interval == (0.0, pytest.approx(0.12))


class TestTruncation:
    """Test suite for truncated-permutation distinguishing."""

    def test_expected_means(self):
        """Test the closed-form collision and distinct-output means."""
        f_coll, p_coll = expected_collisions(16, 8, 256)
        f_dist, p_dist = expected_distinct(16, 8, 256)

        assert f_coll == pytest.approx(256 * 255 / 2 / 256)
        assert p_coll < f_coll
        assert p_dist > f_dist

    def test_invalid_truncation(self):
        """Test that m must lie in [1, n)."""
        with pytest.raises(ParameterError):
            truncation_advantage_curve(8, 8, [16], 10, 0)

    @pytest.mark.slow
    @pytest.mark.statistical
    def test_curve_shape(self):
        """Test the advantage rise at q = 2^{(n+m)/2} for n = 16, m = 8."""
        frame = truncation_advantage_curve(16, 8, [128, 512, 4096], trials=4000, seed=0)
        low, mid, high = frame.to_dict("records")

        assert low["advantage"] <= 0.05
        assert high["advantage"] - mid["advantage"] >= 3 * math.hypot(high["sigma"], mid["sigma"])
