"""A* search tests"""

import pytest
from hypothesis import given, settings
from scipy.sparse.csgraph import dijkstra

from vbmo.config import HeuristicMode
from vbmo.exceptions import InvalidPlanError, NoPathError, UsageError
from vbmo.ingest import grid_to_graph
from vbmo.objectives import SQRT2, build_layers, parse_objectives
from vbmo.search import (SearchConfig, astar, astar_weighted, dijkstra_cost,
                         evaluate_objective, evaluate_plan)

from .strategies import instances, text_map

GEOMETRIC_MODE = SearchConfig(heuristic_mode=HeuristicMode.GEOMETRIC)


def labelled(*rows, objectives="distance,uniform:1,safety"):
    return build_layers(grid_to_graph(text_map(*rows)),
                        parse_objectives(objectives))


def test_diagonal_route():
    g = labelled('...', '...', '...')
    plan = astar(g, 0, 0, 8)

    assert plan.vertices == (0, 4, 8)
    assert plan.raw_costs[0] == pytest.approx(2 * SQRT2)
    assert plan.raw_costs[1] == 2
    assert plan.source_objective == 0
    assert plan.expansions > 0


def test_start_is_goal():
    g = labelled('...', '...')
    plan = astar(g, 1, 3, 3)

    assert plan.vertices == (3,)
    assert plan.raw_costs == (0.0, 0.0, 0.0)
    assert plan.expansions == 0


def test_no_path():
    g = labelled('..@..', '..@..')

    with pytest.raises(NoPathError) as e:
        astar(g, 0, 0, 3)

    assert e.value.component_size == 4
    assert e.value.exit_code == 1


def test_corner_cutting_forbidden():
    g = labelled('@.', '..')
    plan = astar(g, 0, 0, 1)

    assert plan.vertices == (0, 2, 1)
    assert plan.raw_costs[0] == 2


def test_endpoints_checked():
    g = labelled('..')
    with pytest.raises(UsageError):
        astar(g, 0, 0, 2)
    with pytest.raises(UsageError):
        astar(g, 3, 0, 1)


def test_evaluate_plan():
    g = labelled('...', '...', '...')
    assert evaluate_plan(g, [0, 1, 2]) == pytest.approx((2.0, 2.0, 10.0))
    assert evaluate_objective(g, [0, 4], 0) == pytest.approx(SQRT2)


def test_evaluate_invalid_plan():
    g = labelled('...', '...', '...')

    with pytest.raises(InvalidPlanError) as e:
        evaluate_plan(g, [0, 2])
    assert e.value.pair == (0, 2)

    with pytest.raises(UsageError):
        evaluate_plan(g, [])


def test_plans_are_deterministic():
    g = labelled('....', '....', '....', '....')
    first = astar(g, 1, 0, 15)
    second = astar(g, 1, 0, 15)
    assert first.vertices == second.vertices


def test_equal_cost_paths_prefer_cheaper_others():
    g = labelled('...', '...', '...', objectives="uniform:1,distance")

    # 0 1 2 and 0 4 2 both take two moves, the diagonal one is longer
    assert astar(g, 0, 0, 2).vertices == (0, 1, 2)
    assert astar_weighted(g, [1.0, 0.0], 0, 2).vertices == (0, 1, 2)
    assert astar(g, 0, 0, 2, GEOMETRIC_MODE).raw_costs == (
        pytest.approx((2.0, 2.0)))


def test_weighted_search():
    g = labelled('...', '...', '...')
    plan = astar_weighted(g, [1.0, 1.0, 1.0], 0, 8)

    assert plan.source_objective == 'weighted'
    assert plan.goal == 8
    assert plan.raw_costs == evaluate_plan(g, plan.vertices)


@pytest.mark.parametrize('weights', [
    [1.0, 1.0],
    [0.0, 0.0, 0.0],
    [1.0, -1.0, 1.0],
])
def test_invalid_weights(weights):
    g = labelled('...', '...', '...')
    with pytest.raises(UsageError):
        astar_weighted(g, weights, 0, 8)


def test_dijkstra_cost():
    g = labelled('...', '...', '...')
    costs = dijkstra_cost(g, 0, 0)
    assert costs[8] == pytest.approx(2 * SQRT2)
    assert costs[0] == 0


@settings(max_examples=200, deadline=None)
@given(instances(max_side=6))
def test_astar_matches_dijkstra(instance):
    g, start, goal = instance

    for j in range(g.objective_count):
        best = dijkstra_cost(g, j, start)[goal]

        for cfg in (SearchConfig(), GEOMETRIC_MODE):
            plan = astar(g, j, start, goal, cfg)
            assert plan.raw_costs[j] == pytest.approx(best, abs=1e-9)
            assert plan.vertices[0] == start
            assert plan.vertices[-1] == goal


@settings(max_examples=100, deadline=None)
@given(instances(max_side=6))
def test_weighted_matches_dijkstra(instance):
    g, start, goal = instance
    weights = [1.0] * g.objective_count

    combined = g.topology.csr(g.combined_costs(weights))
    best = dijkstra(combined, directed=True, indices=start)[goal]

    plan = astar_weighted(g, weights, start, goal)
    assert sum(plan.raw_costs) == pytest.approx(best, abs=1e-9)
