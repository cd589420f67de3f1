"""
Score matrices, the voting mechanisms and the VBMO procedure itself.

One optimal plan is built per objective, every plan is costed under every
objective, the matrix is min-max normalized per column and a voting rule
picks the plan that best balances all objectives.
"""

# Copyright (C) 2024, VBMO contributors

# This program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 2
# of the License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program; if not, write to the Free Software
# Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston,
# MA  02110-1301, USA.

from __future__ import annotations

import math
import time
import logging
from enum import Enum
from typing import Any, Literal
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from .exceptions import UsageError
from .executor import TrialExecutor, run_ordered
from .graph import Graph
from .search import Plan, SearchConfig, astar, evaluate_objective

__all__ = [
    'REL_TOL',
    'ABS_TOL',
    'Mechanism',
    'TieBreak',
    'ScoreMatrix',
    'VoteOutcome',
    'VbmoReport',
    'normalize',
    'build_score_matrix',
    'vote_range',
    'vote_borda',
    'borda_points',
    'vote_cav',
    'cav_values',
    'vote',
    'parse_tie_break',
    'dominates',
    'pareto_filter',
    'score_plan_against',
    'generate_plans',
    'vbmo',
    'report_json'
]

logger = logging.getLogger(__name__)

REL_TOL = 1e-9
ABS_TOL = 1e-9


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=ABS_TOL)


def _noise(lo: float, hi: float) -> float:
    """Largest gap in a raw cost column that still counts as equal.

    Absolute, widening only for magnitudes where summation error
    could pass it.
    """
    return max(ABS_TOL, 1e-12 * max(abs(lo), abs(hi)))


class Mechanism(str, Enum):
    RANGE = 'range'
    BORDA = 'borda'
    CAV = 'cav'


class TieBreak(BaseModel):
    """How the final vote picks among plans sharing the best total."""

    model_config = ConfigDict(frozen=True)

    rule: Literal['lowest', 'random'] = 'lowest'
    seed: int | None = None

    def __str__(self) -> str:
        return self.rule if self.seed is None else f"{self.rule}:{self.seed}"


def parse_tie_break(text: str | TieBreak | None) -> TieBreak:
    """`lowest` or `random:<seed>`."""
    if text is None:
        return TieBreak()
    if isinstance(text, TieBreak):
        return text

    rule, _, seed = text.partition(':')

    if rule == 'lowest' and not seed:
        return TieBreak()

    if rule == 'random':
        try:
            return TieBreak(rule='random', seed=int(seed))
        except ValueError:
            pass

    raise UsageError(f"invalid tie break {text!r}, "
                     "expected 'lowest' or 'random:<seed>'")


class ScoreMatrix(BaseModel):
    """Row i is plan i, column j is objective j."""

    model_config = ConfigDict(frozen=True)

    raw: tuple[tuple[float, ...], ...]
    normalized: tuple[tuple[float, ...], ...]
    plans: tuple[Plan, ...] = ()

    evaluations: int = 0
    """Plan-cost evaluations spent building the matrix."""

    @property
    def size(self) -> int:
        return len(self.raw)

    @classmethod
    def from_raw(cls, raw: Sequence[Sequence[float]],
                 plans: Sequence[Plan] = (),
                 evaluations: int = 0) -> ScoreMatrix:
        rows = tuple(tuple(float(c) for c in row) for row in raw)
        return cls(raw=rows, normalized=normalize(rows),
                   plans=tuple(plans), evaluations=evaluations)

    @classmethod
    def from_normalized(cls,
                        normalized: Sequence[Sequence[float]]) -> ScoreMatrix:
        """A matrix whose raw scores are already normalized."""
        rows = tuple(tuple(float(c) for c in row) for row in normalized)
        for row in rows:
            if any(not 0.0 <= c <= 1.0 for c in row):
                raise UsageError(f"normalized score outside [0, 1] in {row}")
        return cls(raw=rows, normalized=rows)


class VoteOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    mechanism: Mechanism
    winner: int
    per_plan_totals: tuple[float, ...]
    tie_set: tuple[int, ...]


def _normalize_column(column: Sequence[float]) -> list[float]:
    lo, hi = min(column), max(column)
    noise = _noise(lo, hi)

    if hi - lo <= noise:
        return [0.0] * len(column)

    scores = []
    for c in column:
        if c - lo <= noise:
            scores.append(0.0)
        elif hi - c <= noise:
            scores.append(1.0)
        else:
            scores.append(min(1.0, max(0.0, (c - lo) / (hi - lo))))
    return scores


def normalize(raw: Sequence[Sequence[float]]
              ) -> tuple[tuple[float, ...], ...]:
    """Per-column min-max scaling to [0, 1].

    Extremes come out as exact 0.0 and 1.0 and a column whose values
    all agree becomes all zeros.
    """
    if not raw:
        return ()

    width = len(raw[0])
    if any(len(row) != width for row in raw):
        raise UsageError("score rows differ in length")

    columns = [_normalize_column([row[j] for row in raw])
               for j in range(width)]
    return tuple(zip(*columns)) if width else tuple(() for _ in raw)


def build_score_matrix(plans: Sequence[Plan], g: Graph) -> ScoreMatrix:
    """Cost every plan under every objective of `g`."""
    objectives = g.objective_count

    if len(plans) != objectives:
        raise UsageError(f"{len(plans)} plans for {objectives} objectives")

    evaluations = 0
    raw = []

    for plan in plans:
        row = []
        for j in range(objectives):
            row.append(evaluate_objective(g, plan.vertices, j))
            evaluations += 1
        raw.append(row)

    return ScoreMatrix.from_raw(raw, plans, evaluations)


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """`a` is no worse than `b` anywhere and strictly better somewhere.

    Costs within floating point noise of each other count as equal.
    """
    if len(a) != len(b):
        raise UsageError(f"cannot compare {len(a)} costs with {len(b)}")

    strictly_better = False

    for x, y in zip(a, b):
        if _close(x, y):
            continue
        if x > y:
            return False
        strictly_better = True

    return strictly_better


def pareto_filter(vectors: Sequence[Sequence[float] | Plan]) -> list[int]:
    """Indices of the vectors no other vector dominates."""
    costs = [v.raw_costs if isinstance(v, Plan) else v for v in vectors]

    return [i for i, a in enumerate(costs)
            if not any(dominates(b, a)
                       for k, b in enumerate(costs) if k != i)]


def _select(m: ScoreMatrix, mechanism: Mechanism, totals: Sequence[float],
            highest: bool, tie_break: TieBreak) -> VoteOutcome:
    best = max(totals) if highest else min(totals)
    tie_set = [i for i, t in enumerate(totals) if _close(t, best)]

    # Drop dominated tie-set members; normalized scores order plans like raw
    # costs within each column
    candidates = [i for i in tie_set
                  if not any(dominates(m.normalized[k], m.normalized[i])
                             for k in tie_set if k != i)]

    if tie_break.rule == 'random':
        rng = np.random.default_rng(tie_break.seed)
        winner = int(rng.choice(candidates))
    else:
        winner = candidates[0]

    if len(tie_set) > 1:
        logger.info(f"{mechanism.value} vote tied between plans {tie_set}, "
                    f"picked {winner}")

    return VoteOutcome(mechanism=mechanism, winner=winner,
                       per_plan_totals=tuple(totals), tie_set=tuple(tie_set))


def _check_matrix(m: ScoreMatrix) -> None:
    if not m.size:
        raise UsageError("cannot vote on an empty score matrix")


def vote_range(m: ScoreMatrix,
               tie_break: TieBreak | None = None) -> VoteOutcome:
    """Lowest sum of normalized scores wins."""
    _check_matrix(m)
    totals = [math.fsum(row) for row in m.normalized]
    return _select(m, Mechanism.RANGE, totals, False,
                   tie_break or TieBreak())


def _dense_ranks(column: Sequence[float]) -> list[int]:
    """1 for the lowest score, equal scores share a rank."""
    order = np.argsort(column, kind='stable').tolist()
    ranks = [0] * len(column)

    rank, previous = 0, None
    for i in order:
        if previous is None or not _close(column[i], previous):
            rank += 1
        ranks[i] = rank
        previous = column[i]
    return ranks


def borda_points(m: ScoreMatrix) -> list[list[int]]:
    """(J + 1) - rank for every cell, ranks dense per column."""
    size = m.size
    width = len(m.normalized[0])
    points = [[0] * width for _ in range(size)]

    for j in range(width):
        ranks = _dense_ranks([row[j] for row in m.normalized])
        for i, rank in enumerate(ranks):
            points[i][j] = size + 1 - rank
    return points


def vote_borda(m: ScoreMatrix,
               tie_break: TieBreak | None = None) -> VoteOutcome:
    """Most Borda points wins."""
    _check_matrix(m)
    totals = [sum(row) for row in borda_points(m)]
    return _select(m, Mechanism.BORDA, totals, True, tie_break or TieBreak())


def cav_values(m: ScoreMatrix) -> list[list[int]]:
    """+1 for a column best, -1 for a column worst, 0 otherwise."""
    def value(score: float) -> int:
        if score == 0.0:
            return 1
        if score == 1.0:
            return -1
        return 0

    return [[value(s) for s in row] for row in m.normalized]


def vote_cav(m: ScoreMatrix,
             tie_break: TieBreak | None = None) -> VoteOutcome:
    """Highest combined approval value wins."""
    _check_matrix(m)
    totals = [sum(row) for row in cav_values(m)]
    return _select(m, Mechanism.CAV, totals, True, tie_break or TieBreak())


_VOTERS = {
    Mechanism.RANGE: vote_range,
    Mechanism.BORDA: vote_borda,
    Mechanism.CAV: vote_cav,
}


def vote(m: ScoreMatrix, mechanism: Mechanism | str,
         tie_break: TieBreak | str | None = None) -> VoteOutcome:
    try:
        mechanism = Mechanism(mechanism)
    except ValueError:
        raise UsageError(f"unknown voting mechanism {mechanism!r}") from None

    return _VOTERS[mechanism](m, parse_tie_break(tie_break))


def score_plan_against(m: ScoreMatrix, costs: Sequence[float]) -> float:
    """Range total of an outside plan on the matrix's normalization scale.

    Each cost is scaled with its column's min and max over the matrix
    rows and is not clamped, so plans beyond the extremes score below 0
    or above 1. On a column where every row agrees the plan scores 0
    when it matches and 1 otherwise.
    """
    _check_matrix(m)

    if len(costs) != len(m.raw[0]):
        raise UsageError(f"{len(costs)} costs for "
                         f"{len(m.raw[0])} objectives")

    total = 0.0
    for j, c in enumerate(costs):
        column = [row[j] for row in m.raw]
        lo, hi = min(column), max(column)
        noise = _noise(lo, hi)

        if hi - lo <= noise:
            total += 0.0 if abs(c - lo) <= noise else 1.0
        elif abs(c - lo) <= noise:
            continue
        elif abs(c - hi) <= noise:
            total += 1.0
        else:
            total += (c - lo) / (hi - lo)
    return total


class VbmoReport(BaseModel):
    """Everything one VBMO run produced."""

    model_config = ConfigDict(frozen=True)

    plans: tuple[Plan, ...]
    matrix: ScoreMatrix
    outcome: VoteOutcome
    elapsed: float
    """Wall time of plan construction, scoring and voting, in seconds."""

    @property
    def selected(self) -> Plan:
        return self.plans[self.outcome.winner]

    @property
    def expansions(self) -> int:
        return sum(plan.expansions for plan in self.plans)


def generate_plans(g: Graph, start: int, goal: int,
                   cfg: SearchConfig | None = None,
                   executor: TrialExecutor | None = None) -> list[Plan]:
    """One optimal plan per objective, in objective order."""
    if not g.objective_count:
        raise UsageError("graph has no objectives to plan for")

    cfg = cfg or SearchConfig()

    def plan_for(j: int) -> Plan:
        return astar(g, j, start, goal, cfg)

    return run_ordered(plan_for, range(g.objective_count), executor)


def vbmo(g: Graph, start: int, goal: int,
         mechanism: Mechanism | str = Mechanism.RANGE,
         cfg: SearchConfig | None = None,
         tie_break: TieBreak | str | None = None,
         executor: TrialExecutor | None = None) -> VbmoReport:
    """Plan once per objective and vote for the best compromise."""
    began = time.perf_counter()

    plans = generate_plans(g, start, goal, cfg, executor)
    matrix = build_score_matrix(plans, g)
    outcome = vote(matrix, mechanism, tie_break)

    elapsed = time.perf_counter() - began

    logger.info(f"{outcome.mechanism.value} vote picked the "
                f"{g.objective_names[outcome.winner]} plan")

    return VbmoReport(plans=tuple(plans), matrix=matrix, outcome=outcome,
                      elapsed=elapsed)


def report_json(report: VbmoReport, g: Graph | None = None) -> dict[str, Any]:
    """The report as plain JSON-ready data."""
    names = g.objective_names if g is not None else None

    plans = []
    for i, plan in enumerate(report.plans):
        entry: dict[str, Any] = {
            'vertices': list(plan.vertices),
            'raw_costs': list(plan.raw_costs),
            'expansions': plan.expansions,
        }
        if names is not None:
            entry['objective'] = names[i]
        plans.append(entry)

    return {
        'plans': plans,
        'raw_matrix': [list(row) for row in report.matrix.raw],
        'normalized_matrix': [list(row) for row in report.matrix.normalized],
        'mechanism': report.outcome.mechanism.value,
        'totals': list(report.outcome.per_plan_totals),
        'winner': report.outcome.winner,
        'tie_set': list(report.outcome.tie_set),
        'expansions': report.expansions,
        'elapsed_ms': report.elapsed * 1000,
    }
