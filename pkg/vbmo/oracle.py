"""
Brute-force reference answers for small instances.

Every simple start→goal path is enumerated, so optimal costs and the exact
Pareto frontier can be checked against what the planners return.
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

import logging
from typing import Any

import networkx as nx
from pydantic import BaseModel, ConfigDict

from .exceptions import CapacityError, NoPathError, UsageError
from .executor import TrialExecutor
from .graph import Graph
from .search import SearchConfig, evaluate_plan
from .voting import Mechanism, dominates, pareto_filter, vbmo

__all__ = [
    'DEFAULT_CAP',
    'PathSet',
    'enumerate_paths',
    'brute_optimal',
    'brute_pareto',
    'oracle_report'
]

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10 ** 6


class PathSet(BaseModel):
    """Every simple path between two vertices and its cost vector."""

    model_config = ConfigDict(frozen=True)

    paths: tuple[tuple[int, ...], ...]
    cost_vectors: tuple[tuple[float, ...], ...]

    def __len__(self) -> int:
        return len(self.paths)


def _to_networkx(g: Graph) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(g.vertex_count))
    graph.add_edges_from(zip(g.sources, g.targets))
    return graph


def enumerate_paths(g: Graph, start: int, goal: int,
                    cap: int = DEFAULT_CAP) -> PathSet:
    """All simple start→goal paths in lexicographic vertex order.

    Raises CapacityError rather than returning a truncated set.
    """
    for v in (start, goal):
        if not 0 <= v < g.vertex_count:
            raise UsageError(f"vertex {v} outside of "
                             f"{g.vertex_count} vertices")

    if start == goal:
        paths = [(start,)]
    else:
        paths = []
        for path in nx.all_simple_paths(_to_networkx(g), start, goal):
            if len(paths) >= cap:
                raise CapacityError(cap)
            paths.append(tuple(path))
        paths.sort()

    logger.debug(f"Enumerated {len(paths)} paths from {start} to {goal}")

    return PathSet(paths=tuple(paths),
                   cost_vectors=tuple(evaluate_plan(g, p) for p in paths))


def brute_optimal(ps: PathSet, j: int) -> tuple[float, tuple[int, ...]]:
    """Lowest cost under objective `j` and the first path reaching it."""
    if not ps.paths:
        raise NoPathError(-1, -1, 0)

    best = min(range(len(ps)), key=lambda i: ps.cost_vectors[i][j])
    return ps.cost_vectors[best][j], ps.paths[best]


def brute_pareto(ps: PathSet) -> PathSet:
    """The paths no other enumerated path dominates."""
    keep = pareto_filter(ps.cost_vectors)
    return PathSet(paths=tuple(ps.paths[i] for i in keep),
                   cost_vectors=tuple(ps.cost_vectors[i] for i in keep))


def _on_frontier(costs: tuple[float, ...], ps: PathSet) -> bool:
    return not any(dominates(other, costs) for other in ps.cost_vectors)


def oracle_report(g: Graph, start: int, goal: int,
                  cfg: SearchConfig | None = None,
                  mechanism: Mechanism | str = Mechanism.RANGE,
                  cap: int = DEFAULT_CAP,
                  executor: TrialExecutor | None = None) -> dict[str, Any]:
    """Exact frontier next to the VBMO plans, for spot checks."""
    paths = enumerate_paths(g, start, goal, cap)

    if not paths.paths:
        raise NoPathError(start, goal, 0)

    frontier = brute_pareto(paths)
    report = vbmo(g, start, goal, mechanism, cfg, executor=executor)

    plans = []
    for j, plan in enumerate(report.plans):
        optimum, _ = brute_optimal(paths, j)
        plans.append({
            'objective': g.objective_names[j],
            'vertices': list(plan.vertices),
            'raw_costs': list(plan.raw_costs),
            'optimal_cost': optimum,
            'on_frontier': _on_frontier(plan.raw_costs, paths),
        })

    return {
        'objectives': g.objective_names,
        'path_count': len(paths),
        'frontier': [{'vertices': list(p), 'raw_costs': list(c)}
                     for p, c in zip(frontier.paths, frontier.cost_vectors)],
        'plans': plans,
        'mechanism': report.outcome.mechanism.value,
        'winner': report.outcome.winner,
        'winner_on_frontier': plans[report.outcome.winner]['on_frontier'],
    }
