"""
Confidence radii and goodness-of-fit tests.
"""
import math
from typing import Optional

import numpy as np
from scipy import stats as scipy_stats

from app.core.config import settings
from app.core.errors import ParameterError

MIN_EXPECTED_COUNT = 5


def hoeffding_radius(trials: int, delta: Optional[float] = None) -> float:
    """Two-sided Hoeffding radius sqrt(ln(2/delta) / (2 trials)) for a [0,1]-valued mean."""
    if trials <= 0:
        return 1.0
    delta = settings.HOEFFDING_DELTA if delta is None else delta
    return math.sqrt(math.log(2.0 / delta) / (2.0 * trials))


def binomial_sigma(p: float, trials: int) -> float:
    if trials <= 0:
        return 0.0
    p = min(max(p, 0.0), 1.0)
    return math.sqrt(p * (1.0 - p) / trials)


def chi_square_uniformity(samples: np.ndarray, support_size: int) -> float:
    """
    Chi-square p-value of samples (integers in [0, support_size)) against the uniform law.

    Raises:
        ParameterError: if a sample falls outside the support, or fewer than
            MIN_EXPECTED_COUNT samples are expected per cell
    """
    samples = np.asarray(samples, dtype=np.int64)
    if samples.size == 0:
        raise ParameterError("no samples")
    if samples.min() < 0 or samples.max() >= support_size:
        raise ParameterError(f"samples outside [0, {support_size})")
    counts = np.bincount(samples, minlength=support_size)
    return chi_square_counts(counts)


def chi_square_counts(counts: np.ndarray) -> float:
    """Chi-square p-value of observed cell counts against equal expected counts."""
    counts = np.asarray(counts, dtype=np.float64)
    expected = counts.sum() / max(counts.size, 1)
    if expected < MIN_EXPECTED_COUNT:
        raise ParameterError(
            f"expected count {expected:.2f} per cell is below {MIN_EXPECTED_COUNT}; draw more samples"
        )
    result = scipy_stats.chisquare(counts)
    return float(result.pvalue)
