"""Command line tests"""

import json
import logging
from pathlib import Path

import pytest

from vbmo.cli import parse_vertex, run
from vbmo.exceptions import UsageError
from vbmo.executor import TrialExecutor
from vbmo.ingest import load_graph, render_movingai

from .strategies import text_map
from .test_ingest import COORDS, DISTANCE_GR, TIME_GR

OBJECTIVES = "distance,uniform:1,safety"


@pytest.fixture
def config_dir(tmp_path: Path) -> Path:
    return tmp_path / 'config'


@pytest.fixture
def grid(tmp_path: Path) -> Path:
    path = tmp_path / 'room.map'
    path.write_text(render_movingai(text_map(
        '....', '.@..', '..@.')))
    return path


@pytest.fixture
def roads(tmp_path: Path) -> Path:
    path = tmp_path / 'tiny-d.gr'
    path.write_text(DISTANCE_GR)
    (tmp_path / 'tiny-t.gr').write_text(TIME_GR)
    (tmp_path / 'tiny-d.co').write_text(COORDS)
    return path


def vbmo(capsys, config_dir, *argv):
    code = run(['--config-dir', str(config_dir), *argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_parse_vertex_grid(grid):
    g = load_graph(grid)

    assert parse_vertex('0,0', g) == 0
    assert parse_vertex(' 2,3 ', g) == g.vertex_count - 1

    for text in ('1,1', '5,0', 'a,b', '3'):
        with pytest.raises(UsageError):
            parse_vertex(text, g)


def test_parse_vertex_roads(roads):
    g = load_graph(roads)

    assert parse_vertex('1', g) == 0
    assert parse_vertex('3', g) == 2

    for text in ('0', '4', '1,1', 'x'):
        with pytest.raises(UsageError):
            parse_vertex(text, g)


def test_plan(capsys, config_dir, grid):
    code, report = vbmo(capsys, config_dir, 'plan', '--map', str(grid),
                        '--objectives', OBJECTIVES, '--start', '0,0',
                        '--goal', '2,3', '--mechanism', 'borda')

    assert code == 0
    assert report['mechanism'] == 'borda'
    assert [p['objective'] for p in report['plans']] == [
        'distance', 'uniform:1', 'safety']
    assert all(p['vertices'][0] == 0 for p in report['plans'])
    assert len(report['normalized_matrix']) == 3


def test_plan_is_deterministic(capsys, config_dir, grid):
    argv = ['plan', '--map', str(grid), '--objectives',
            "distance,random:1:20,safety", '--start', '0,0', '--goal', '2,3',
            '--seed', '9', '--tie-break', 'random:4']

    _, first = vbmo(capsys, config_dir, *argv)
    _, second = vbmo(capsys, config_dir, *argv)

    for report in (first, second):
        del report['elapsed_ms']
    assert first == second


def plan_without_timing(capsys, config_dir, grid, *extra):
    code, report = vbmo(capsys, config_dir, 'plan', '--map', str(grid),
                        '--objectives', "distance,random:1:20,safety",
                        '--start', '0,0', '--goal', '2,3', '--seed', '2',
                        *extra)
    assert code == 0

    del report['elapsed_ms']
    return report


def test_plan_heuristic_modes(capsys, config_dir, grid):
    faithful = plan_without_timing(capsys, config_dir, grid,
                                   '--heuristic-mode', 'paper-faithful')
    alias = plan_without_timing(capsys, config_dir, grid,
                                '--heuristic-mode', 'geometric')
    admissible = plan_without_timing(capsys, config_dir, grid)

    assert faithful == alias
    for j, row in enumerate(admissible['raw_matrix']):
        assert faithful['raw_matrix'][j][j] == pytest.approx(row[j])


def test_plan_threads(capsys, config_dir, grid):
    sequential = plan_without_timing(capsys, config_dir, grid,
                                     '--threads', '1')
    assert plan_without_timing(capsys, config_dir, grid,
                               '--threads', '2') == sequential


def test_plan_threads_from_environment(capsys, config_dir, grid,
                                       monkeypatch, mocker):
    sequential = plan_without_timing(capsys, config_dir, grid)

    monkeypatch.setenv('VBMO_THREADS', '3')
    pool = mocker.patch('vbmo.cli.TrialExecutor', wraps=TrialExecutor)

    assert plan_without_timing(capsys, config_dir, grid) == sequential
    pool.assert_called_once_with(3)


def test_plan_roads(capsys, config_dir, roads):
    code, report = vbmo(capsys, config_dir, 'plan', '--map', str(roads),
                        '--objectives', 'distance,time', '--start', '1',
                        '--goal', '3')

    assert code == 0
    assert report['plans'][0]['vertices'] == [0, 1, 2]
    assert report['raw_matrix'][0] == [30.0, 8.0]


def test_blocked_goal(capsys, config_dir, grid, caplog):
    with caplog.at_level(logging.ERROR):
        code, report = vbmo(capsys, config_dir, 'plan', '--map', str(grid),
                            '--objectives', OBJECTIVES, '--start', '0,0',
                            '--goal', '1,1')

    assert code == 2
    assert report is None
    assert 'blocked' in caplog.text


def test_unreachable_goal(capsys, config_dir, tmp_path):
    path = tmp_path / 'split.map'
    path.write_text(render_movingai(text_map('..@..', '..@..')))

    code, _ = vbmo(capsys, config_dir, 'plan', '--map', str(path),
                   '--objectives', OBJECTIVES, '--start', '0,0',
                   '--goal', '1,4')
    assert code == 1


def test_bad_objectives(capsys, config_dir, grid):
    code, _ = vbmo(capsys, config_dir, 'plan', '--map', str(grid),
                   '--objectives', 'distance,speed', '--start', '0,0',
                   '--goal', '2,3')
    assert code == 2


def test_bad_mechanism(config_dir, grid):
    with pytest.raises(SystemExit) as e:
        run(['--config-dir', str(config_dir), 'plan', '--map', str(grid),
             '--objectives', OBJECTIVES, '--start', '0,0', '--goal', '2,3',
             '--mechanism', 'condorcet'])
    assert e.value.code == 2


def test_oracle(capsys, config_dir, grid):
    code, data = vbmo(capsys, config_dir, 'oracle', '--map', str(grid),
                      '--objectives', OBJECTIVES, '--start', '0,0',
                      '--goal', '2,3')

    assert code == 0
    assert data['path_count'] > 0
    assert data['winner_on_frontier'] in (True, False)
    assert len(data['plans']) == 3


def test_oracle_cap(capsys, config_dir, grid):
    code, _ = vbmo(capsys, config_dir, 'oracle', '--map', str(grid),
                   '--objectives', OBJECTIVES, '--start', '0,0',
                   '--goal', '2,3', '--cap', '2')
    assert code == 2


def test_inspect(capsys, config_dir, grid, roads):
    code, stats = vbmo(capsys, config_dir, 'inspect', str(grid))

    assert code == 0
    assert stats['nodes'] == 10
    assert stats['components'] == 1

    code, stats = vbmo(capsys, config_dir, 'inspect', str(roads))
    assert stats['nodes'] == 3
    assert stats['edges'] == 2
    assert stats['objectives'] == ['distance', 'time']
    assert 'layer_correlation' in stats


def test_bench(capsys, config_dir, grid, tmp_path):
    out = tmp_path / 'out'
    code, data = vbmo(capsys, config_dir, 'bench', '--maps', str(grid),
                      '--objectives', OBJECTIVES, '--objectives',
                      'distance,uniform:2', '--runs', '6',
                      '--mechanisms', 'range,cav', '--out', str(out))

    assert code == 0
    assert [e['objectives'] for e in data['experiments']] == [
        OBJECTIVES, 'distance,uniform:2']

    for i in (1, 2):
        assert (out / f'config-{i}' / 'records.csv').exists()
        assert (out / f'config-{i}' / 'summary.json').exists()

    rows = (out / 'table.csv').read_text().splitlines()
    assert len(rows) == 3


def test_bench_invalid_runs(capsys, config_dir, grid, tmp_path):
    code, _ = vbmo(capsys, config_dir, 'bench', '--maps', str(grid),
                   '--objectives', OBJECTIVES, '--runs', '0',
                   '--out', str(tmp_path / 'out'))
    assert code == 2


def test_config(capsys, config_dir):
    code, values = vbmo(capsys, config_dir, 'config', 'set', 'runs', '7')
    assert code == 0
    assert values['runs'] == 7

    _, values = vbmo(capsys, config_dir, 'config', 'show')
    assert values['runs'] == 7

    code, _ = vbmo(capsys, config_dir, 'config', 'set', 'runs', 'x')
    assert code == 2
