"""Brute-force enumeration tests and cross-checks against the planners"""

import pytest
from hypothesis import HealthCheck, given, reject, settings

from vbmo.exceptions import CapacityError, NoPathError, UsageError
from vbmo.ingest import grid_to_graph
from vbmo.objectives import build_layers, parse_objectives
from vbmo.oracle import (PathSet, brute_optimal, brute_pareto,
                         enumerate_paths, oracle_report)
from vbmo.search import astar, astar_weighted, evaluate_plan
from vbmo.voting import (Mechanism, build_score_matrix, dominates,
                         generate_plans, vote)

from .strategies import instances, text_map

SMALL = settings(max_examples=200, deadline=None,
                 suppress_health_check=[HealthCheck.filter_too_much,
                                        HealthCheck.too_slow])
CAP = 2000


def labelled(*rows, objectives="distance,uniform:1,safety"):
    return build_layers(grid_to_graph(text_map(*rows)),
                        parse_objectives(objectives))


def enumerate_or_reject(g, start, goal):
    try:
        return enumerate_paths(g, start, goal, CAP)
    except CapacityError:
        reject()


def test_start_is_goal():
    paths = enumerate_paths(labelled('..', '..'), 2, 2)
    assert paths.paths == ((2,),)
    assert paths.cost_vectors == ((0.0, 0.0, 0.0),)


def test_single_corridor():
    assert enumerate_paths(labelled('..'), 0, 1).paths == ((0, 1),)


def test_open_square():
    paths = enumerate_paths(labelled('..', '..'), 0, 3)

    assert len(paths) == 5
    assert paths.paths[0] == (0, 1, 2, 3)
    assert (0, 3) in paths.paths


def test_blocked_corner_removes_diagonal():
    paths = enumerate_paths(labelled('@.', '..'), 0, 1)
    assert paths.paths == ((0, 2, 1),)


def test_disconnected():
    assert not enumerate_paths(labelled('.@.'), 0, 1).paths


def test_cap():
    with pytest.raises(CapacityError) as e:
        enumerate_paths(labelled('....', '....', '....'), 0, 11, cap=10)
    assert e.value.cap == 10


def test_outside_vertex():
    with pytest.raises(UsageError):
        enumerate_paths(labelled('..'), 0, 2)


def test_brute_optimal():
    paths = enumerate_paths(labelled('...', '...'), 0, 2)

    cost, path = brute_optimal(paths, 1)
    assert cost == 2.0
    assert len(path) == 3

    with pytest.raises(NoPathError):
        brute_optimal(PathSet(paths=(), cost_vectors=()), 0)


def test_brute_pareto():
    one = PathSet(paths=((0, 1),), cost_vectors=((1.0, 2.0),))
    assert brute_pareto(one) == one

    incomparable = PathSet(paths=((0, 1), (0, 2, 1)),
                           cost_vectors=((1.0, 2.0), (2.0, 1.0)))
    assert len(brute_pareto(incomparable)) == 2

    dominated = PathSet(paths=((0, 1), (0, 2, 1)),
                        cost_vectors=((1.0, 2.0), (2.0, 2.0)))
    assert brute_pareto(dominated).paths == ((0, 1),)


def test_random_layer_optimum():
    g = labelled('.....', '.@.@.', '.....', objectives="random:1:20:7")
    paths = enumerate_paths(g, 0, g.vertex_count - 1, 10 ** 6)

    cost, _ = brute_optimal(paths, 0)
    assert astar(g, 0, 0, g.vertex_count - 1).raw_costs[0] == (
        pytest.approx(cost, rel=1e-9, abs=1e-9))


@SMALL
@given(instances(max_side=5, min_objectives=1, max_objectives=4,
                 open_cells=1))
def test_astar_matches_enumeration(instance):
    g, start, goal = instance
    paths = enumerate_or_reject(g, start, goal)

    for j in range(g.objective_count):
        plan = astar(g, j, start, goal)
        cost, _ = brute_optimal(paths, j)

        assert plan.raw_costs[j] == pytest.approx(cost, rel=1e-9, abs=1e-9)
        assert plan.vertices in paths.paths
        assert evaluate_plan(g, plan.vertices) == pytest.approx(
            paths.cost_vectors[paths.paths.index(plan.vertices)])


@SMALL
@given(instances(max_side=4, min_objectives=2, max_objectives=3,
                 open_cells=1))
def test_weighted_sum_matches_enumeration(instance):
    g, start, goal = instance
    paths = enumerate_or_reject(g, start, goal)

    plan = astar_weighted(g, [1.0] * g.objective_count, start, goal)
    best = min(sum(c) for c in paths.cost_vectors)

    assert sum(plan.raw_costs) == pytest.approx(best, rel=1e-9, abs=1e-9)


@SMALL
@given(instances(max_side=5, min_objectives=2, max_objectives=4,
                 open_cells=1))
def test_frontier_is_exact(instance):
    g, start, goal = instance
    paths = enumerate_or_reject(g, start, goal)
    frontier = brute_pareto(paths)

    for a in frontier.cost_vectors:
        assert not any(dominates(b, a) for b in frontier.cost_vectors)

    kept = set(frontier.paths)
    for path, costs in zip(paths.paths, paths.cost_vectors):
        if path not in kept:
            assert any(dominates(f, costs) for f in frontier.cost_vectors)


@SMALL
@given(instances(max_side=6, min_objectives=2, max_objectives=4,
                 open_cells=1))
def test_winner_on_exact_frontier(instance):
    g, start, goal = instance
    paths = enumerate_or_reject(g, start, goal)

    plans = generate_plans(g, start, goal)
    m = build_score_matrix(plans, g)
    frontier = brute_pareto(paths)

    for plan in plans:
        assert plan.vertices in frontier.paths
        assert not any(dominates(c, plan.raw_costs)
                       for c in paths.cost_vectors)

    for mechanism in Mechanism:
        winner = plans[vote(m, mechanism).winner]
        assert not any(dominates(c, winner.raw_costs)
                       for c in paths.cost_vectors)


def test_oracle_report():
    g = labelled('...', '.@.', '...')
    data = oracle_report(g, 0, g.vertex_count - 1, mechanism='borda')

    assert data['objectives'] == ['distance', 'uniform:1', 'safety']
    assert data['path_count'] == len(enumerate_paths(g, 0, 7))
    assert data['mechanism'] == 'borda'
    assert len(data['plans']) == 3
    assert data['plans'][1]['optimal_cost'] == 4.0
    assert all(p['raw_costs'][j] == pytest.approx(p['optimal_cost'])
               for j, p in enumerate(data['plans']))
    assert data['frontier']


def test_oracle_report_no_path():
    with pytest.raises(NoPathError):
        oracle_report(labelled('.@.'), 0, 1)


def test_tied_optimum_keeps_plans_undominated():
    g = labelled('....', '....', '....',
                 objectives="uniform:1,random:1:2:3")
    paths = enumerate_paths(g, 3, 0, 100_000)

    for plan in generate_plans(g, 3, 0):
        assert plan.raw_costs == pytest.approx((3.0, 4.0))
        assert not any(dominates(c, plan.raw_costs)
                       for c in paths.cost_vectors)


@pytest.mark.parametrize('objectives', [
    "uniform:1,random:1:2:3",
    "distance,uniform:1,random:1:3:5",
    "uniform:1,uniform:2,safety",
])
def test_every_pair_plans_on_frontier(objectives):
    g = labelled('....', '....', objectives=objectives)

    for start in range(g.vertex_count):
        for goal in range(g.vertex_count):
            if start == goal:
                continue

            paths = enumerate_paths(g, start, goal, 100_000)
            frontier = brute_pareto(paths)
            for plan in generate_plans(g, start, goal):
                assert plan.vertices in frontier.paths
