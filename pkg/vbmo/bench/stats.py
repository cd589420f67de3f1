"""
Paired significance testing for planner comparisons.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from scipy import stats

from ..exceptions import UsageError

logger = logging.getLogger(__name__)

MIN_PAIRS = 6
EXACT_BELOW = 20
ALPHA = 0.05


def _exact_p(differences: np.ndarray) -> float:
    """Two-sided p from the exact signed-rank null distribution.

    Average ranks are doubled so tied ranks stay integral.
    """
    ranks = stats.rankdata(np.abs(differences))
    doubled = np.rint(2 * ranks).astype(np.int64)

    total = int(doubled.sum())
    w_plus = int(doubled[differences > 0].sum())

    counts = np.zeros(total + 1, dtype=np.float64)
    counts[0] = 1.0

    for r in doubled.tolist():
        counts[r:] = counts[r:] + counts[:total + 1 - r].copy()

    counts /= counts.sum()

    lower = counts[:w_plus + 1].sum()
    upper = counts[w_plus:].sum()
    return float(min(1.0, 2 * min(lower, upper)))


def wilcoxon_signed_rank(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sided p-value of the Wilcoxon signed-rank test on a - b.

    Zero differences are dropped. Below 20 remaining pairs the exact
    distribution is used, otherwise the normal approximation with tie
    correction.
    """
    if len(a) != len(b):
        raise UsageError(f"paired samples differ in length: "
                         f"{len(a)} and {len(b)}")
    if len(a) < MIN_PAIRS:
        raise UsageError(f"signed-rank test needs {MIN_PAIRS} pairs, "
                         f"got {len(a)}")

    differences = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    differences = differences[~np.isclose(differences, 0.0,
                                          rtol=0.0, atol=1e-12)]

    if not differences.size:
        return 1.0

    if differences.size < EXACT_BELOW:
        return _exact_p(differences)

    result = stats.wilcoxon(differences, zero_method='wilcox',
                            correction=False, method='approx')
    return float(result.pvalue)


def significant(p: float | None) -> bool:
    return p is not None and p < ALPHA
