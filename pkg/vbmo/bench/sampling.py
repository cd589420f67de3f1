"""
Random start/goal pairs for experiment trials.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from ..exceptions import SamplingError, UsageError
from ..graph import Graph

logger = logging.getLogger(__name__)

RETRIES_PER_PAIR = 1000


def sample_pairs(g: Graph, n: int, seed: int | Sequence[int] = 0,
                 max_retries: int | None = None) -> list[tuple[int, int]]:
    """`n` connected (start, goal) pairs with start != goal.

    Draws are uniform over vertices, disconnected pairs are redrawn.
    The same seed always gives the same list.
    """
    if g.vertex_count < 2:
        raise UsageError("sampling pairs needs at least two vertices")
    if n < 1:
        raise UsageError(f"cannot sample {n} pairs")

    budget = max_retries if max_retries is not None else RETRIES_PER_PAIR * n
    rng = np.random.default_rng(seed)

    pairs: list[tuple[int, int]] = []
    rejected = 0

    while len(pairs) < n:
        start, goal = rng.integers(0, g.vertex_count, size=2).tolist()

        if start != goal and g.reachable(start, goal):
            pairs.append((start, goal))
            continue

        rejected += 1
        if rejected > budget:
            raise SamplingError(f"only {len(pairs)} of {n} connected pairs "
                                f"after {rejected} rejected draws")

    if rejected:
        logger.debug(f"Rejected {rejected} draws while sampling {n} pairs")

    return pairs
