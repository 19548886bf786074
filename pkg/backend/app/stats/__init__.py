"""Exact laws, distances and hypothesis tests."""
from .distances import (
    all_function_tables,
    estimate_truthtable_tv,
    profile_truthtable_tv,
    sponge_profile_probability,
    sponge_truthtable_law,
    symmetrized_permutation_law_counts,
    symmetrized_permutation_tv,
    truthtable_likelihood_ratio,
    tv_distance,
    uniform_function_law,
)
from .hypothesis import binomial_sigma, chi_square_counts, chi_square_uniformity, hoeffding_radius
from .models import Distribution, Estimate
from .truncation import expected_collisions, expected_distinct, truncation_advantage_curve

__all__ = [
    "all_function_tables",
    "estimate_truthtable_tv",
    "profile_truthtable_tv",
    "sponge_profile_probability",
    "sponge_truthtable_law",
    "symmetrized_permutation_law_counts",
    "symmetrized_permutation_tv",
    "truthtable_likelihood_ratio",
    "tv_distance",
    "uniform_function_law",
    "binomial_sigma",
    "chi_square_counts",
    "chi_square_uniformity",
    "hoeffding_radius",
    "Distribution",
    "Estimate",
    "expected_collisions",
    "expected_distinct",
    "truncation_advantage_curve",
]
