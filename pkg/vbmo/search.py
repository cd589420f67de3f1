"""
Single-objective A* over one cost layer or a weighted sum of layers.
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
import heapq
import logging
from typing import Literal
from collections.abc import Callable, Sequence

import numpy as np
from pydantic import (BaseModel, ConfigDict, NonNegativeFloat,
                      ValidationError, model_validator)
from scipy.sparse.csgraph import dijkstra

from .config import HeuristicMode
from .exceptions import InvalidPlanError, NoPathError, UsageError
from .graph import Graph
from .objectives import HeuristicKind, effective_heuristic, heuristic_fn

__all__ = [
    'WEIGHTED',
    'SearchConfig',
    'Plan',
    'astar',
    'astar_weighted',
    'evaluate_plan',
    'evaluate_objective',
    'dijkstra_cost'
]

logger = logging.getLogger(__name__)

WEIGHTED = 'weighted'


class SearchConfig(BaseModel):
    """Options shared by every search of one planning run."""

    model_config = ConfigDict(frozen=True)

    heuristic_mode: HeuristicMode = HeuristicMode.ADMISSIBLE

    tie_break: Literal['high-g'] = 'high-g'
    """Equal f prefers larger g, then smaller vertex id."""

    weights: tuple[NonNegativeFloat, ...] | None = None
    """Per-objective weights for the weighted-sum baseline."""

    @model_validator(mode='after')
    def _check_weights(self) -> SearchConfig:
        if self.weights is not None and not any(w > 0 for w in self.weights):
            raise ValueError("weights need at least one positive entry")
        return self


class Plan(BaseModel):
    """A start-to-goal vertex sequence and its cost under every objective."""

    model_config = ConfigDict(frozen=True)

    vertices: tuple[int, ...]
    raw_costs: tuple[float, ...]
    source_objective: int | Literal['weighted']
    expansions: int = 0
    elapsed: float = 0.0
    """Wall time of the search in seconds."""

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def goal(self) -> int:
        return self.vertices[-1]


def _path_arcs(g: Graph, vertices: Sequence[int]) -> list[int]:
    arcs = []

    for u, v in zip(vertices, vertices[1:]):
        i = g.arc(u, v)
        if i is None:
            raise InvalidPlanError(u, v)
        arcs.append(i)
    return arcs


def _arc_totals(g: Graph, arcs: Sequence[int]) -> tuple[float, ...]:
    """Cost of an arc sequence under every layer, summed start to goal."""
    totals = [0.0] * g.objective_count
    layers = [layer.costs for layer in g.layers]

    for i in arcs:
        for j, costs in enumerate(layers):
            totals[j] += costs[i]
    return tuple(totals)


def evaluate_plan(g: Graph, vertices: Sequence[int]) -> tuple[float, ...]:
    """Raw cost vector of a vertex sequence."""
    if not vertices:
        raise UsageError("empty plan")
    return _arc_totals(g, _path_arcs(g, vertices))


def evaluate_objective(g: Graph, vertices: Sequence[int], j: int) -> float:
    """Cost of a vertex sequence under objective `j` alone."""
    costs = g.costs(j)
    total = 0.0

    for i in _path_arcs(g, vertices):
        total += costs[i]
    return total


def _tied(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)


def _improves(g1: float, g2: float, label: tuple[float, float]) -> bool:
    """Lexicographic `(g1, g2) < label`, costs within noise count as equal."""
    if _tied(g1, label[0]):
        return g2 < label[1] and not _tied(g2, label[1])
    return g1 < label[0]


def _search(g: Graph, costs: Sequence[float], secondary: Sequence[float],
            h: Callable[[int], float], start: int, goal: int,
            exhaustive: bool) -> tuple[list[int], int]:
    """Arcs of a cheapest start→goal path and the expansion count.

    Paths of equal cost are ordered by their `secondary` total, so when
    that is the sum of every other objective the returned path is not
    dominated by any other start→goal path. Labels are corrected when a
    better one reaches an expanded node, and the search only stops once
    no open node can still match the goal cost. With `exhaustive` it
    runs until every open node has g above the goal cost, so
    overestimating heuristics still return optimal paths.
    """
    offsets, targets, sources = g.offsets, g.targets, g.sources

    label = {start: (0.0, 0.0)}
    parent: dict[int, int] = {}
    h_cache: dict[int, float] = {}

    best = math.inf
    expansions = 0
    open_list = [(h(start), -0.0, 0.0, start)]

    while open_list:
        f, neg_g, sv, v = heapq.heappop(open_list)
        gv = -neg_g

        if (gv, sv) != label[v]:
            continue  # stale

        if not exhaustive and f > best and not _tied(f, best):
            break

        if v == goal:
            best = gv
            continue

        if gv > best and not _tied(gv, best):
            continue

        expansions += 1

        for i in range(offsets[v], offsets[v + 1]):
            u = targets[i]
            ng = gv + costs[i]
            ns = sv + secondary[i]

            if ng > best and not _tied(ng, best):
                continue

            if u not in label or _improves(ng, ns, label[u]):
                label[u] = (ng, ns)
                parent[u] = i

                hu = h_cache.get(u)
                if hu is None:
                    hu = h_cache[u] = h(u)

                heapq.heappush(open_list, (ng + hu, -ng, ns, u))

    if best == math.inf:
        raise NoPathError(start, goal, len(label))

    arcs = []
    v = goal
    while v != start:
        i = parent[v]
        arcs.append(i)
        v = sources[i]

    arcs.reverse()
    return arcs, expansions


def _check_endpoints(g: Graph, start: int, goal: int) -> None:
    for v in (start, goal):
        if not 0 <= v < g.vertex_count:
            raise UsageError(f"vertex {v} outside of "
                             f"{g.vertex_count} vertices")


def _run(g: Graph, costs: Sequence[float], secondary: Sequence[float],
         h: Callable[[int], float], start: int, goal: int, exhaustive: bool,
         source: int | Literal['weighted']) -> Plan:
    _check_endpoints(g, start, goal)
    began = time.perf_counter()

    if start == goal:
        arcs, expansions = [], 0
    else:
        arcs, expansions = _search(g, costs, secondary, h, start, goal,
                                   exhaustive)

    vertices = [start] + [g.targets[i] for i in arcs]
    raw_costs = _arc_totals(g, arcs)

    return Plan(vertices=tuple(vertices), raw_costs=raw_costs,
                source_objective=source, expansions=expansions,
                elapsed=time.perf_counter() - began)


def astar(g: Graph, j: int, start: int, goal: int,
          cfg: SearchConfig | None = None) -> Plan:
    """Plan minimizing objective `j`."""
    cfg = cfg or SearchConfig()
    layer = g.layer(j)

    heuristic = effective_heuristic(layer, g, cfg.heuristic_mode)
    exhaustive = (cfg.heuristic_mode is HeuristicMode.GEOMETRIC
                  and heuristic.kind is not HeuristicKind.ZERO)

    # Ties on objective j go to the cheapest total over the others
    others = g.combined_costs([float(k != j)
                               for k in range(g.objective_count)])

    h = heuristic_fn(heuristic, g, goal)
    plan = _run(g, layer.costs, others, h, start, goal, exhaustive, j)

    logger.debug(f"A* on {layer.name}: cost {plan.raw_costs[j]:.6g}, "
                 f"{plan.expansions} expansions")
    return plan


def astar_weighted(g: Graph, weights: Sequence[float], start: int,
                   goal: int, cfg: SearchConfig | None = None) -> Plan:
    """Plan minimizing the weighted sum of every objective.

    The estimate is the same weighted sum of the per-layer estimates,
    which stays admissible when each of them is.
    """
    cfg = cfg or SearchConfig()

    if len(weights) != g.objective_count:
        raise UsageError(f"{len(weights)} weights for "
                         f"{g.objective_count} objectives")

    try:
        cfg = SearchConfig(heuristic_mode=cfg.heuristic_mode,
                           weights=tuple(weights))
    except ValidationError as e:
        raise UsageError(f"invalid weights {list(weights)}: "
                         f"{e.errors()[0]['msg']}") from None

    parts = []
    for w, layer in zip(weights, g.layers):
        heuristic = effective_heuristic(layer, g, cfg.heuristic_mode)
        if w > 0 and heuristic.kind is not HeuristicKind.ZERO:
            parts.append((w, heuristic_fn(heuristic, g, goal)))

    def h(v: int) -> float:
        return sum(w * fn(v) for w, fn in parts)

    exhaustive = (cfg.heuristic_mode is HeuristicMode.GEOMETRIC
                  and bool(parts))

    plan = _run(g, g.combined_costs(weights),
                g.combined_costs([1.0] * g.objective_count), h, start, goal,
                exhaustive, WEIGHTED)

    logger.debug(f"Weighted A*: {plan.expansions} expansions")
    return plan


def dijkstra_cost(g: Graph, j: int, start: int) -> np.ndarray:
    """Optimal cost of objective `j` from `start` to every vertex."""
    _check_endpoints(g, start, start)
    return dijkstra(g.csr(j), directed=True, indices=start)
