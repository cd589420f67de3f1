"""Planner defaults tests"""

import tempfile
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vbmo.config import CornerCutting, HeuristicMode, PlannerConfig
from vbmo.exceptions import UsageError


def test_config_default_values(tmp_path):
    config = PlannerConfig(tmp_path)

    assert config.heuristic_mode is HeuristicMode.ADMISSIBLE
    assert config.corner_cutting is CornerCutting.FORBID
    assert config.diagonal_cost == pytest.approx(2 ** 0.5)
    assert config.tie_break == 'lowest'
    assert config.runs == 50
    assert config.map_sample == 10


def test_config_file_not_written_until_changed(tmp_path):
    PlannerConfig(tmp_path)
    assert not (tmp_path / 'vbmo').exists()


@given(st.integers(1, 10_000), st.integers(0, 2 ** 32))
def test_config_persists(runs, seed):
    with tempfile.TemporaryDirectory() as tmpdir:
        tmp_path = Path(tmpdir)
        config = PlannerConfig(tmp_path)
        config.runs = runs
        config.seed = seed

        new_config = PlannerConfig(tmp_path)
        assert new_config.runs == runs
        assert new_config.seed == seed


def test_config_enums_persist(tmp_path):
    config = PlannerConfig(tmp_path)
    config.heuristic_mode = HeuristicMode.GEOMETRIC
    config.corner_cutting = CornerCutting.ALLOW

    new_config = PlannerConfig(tmp_path)
    assert new_config.heuristic_mode is HeuristicMode.GEOMETRIC
    assert new_config.corner_cutting is CornerCutting.ALLOW


def test_heuristic_mode_alias(tmp_path):
    assert HeuristicMode('geometric') is HeuristicMode.GEOMETRIC
    assert HeuristicMode('paper-faithful') is HeuristicMode.GEOMETRIC

    PlannerConfig(tmp_path).set_value('heuristic_mode', 'geometric')
    assert PlannerConfig(tmp_path).as_dict()['heuristic_mode'] == (
        'paper-faithful')


def test_set_value(tmp_path):
    config = PlannerConfig(tmp_path)
    config.set_value('diagonal_cost', '1.5')
    config.set_value('corner_cutting', 'allow')
    config.set_value('tie_break', 'random:7')

    assert PlannerConfig(tmp_path).as_dict() | {'threads': 1} == {
        'heuristic_mode': 'admissible',
        'corner_cutting': 'allow',
        'diagonal_cost': 1.5,
        'tie_break': 'random:7',
        'runs': 50,
        'seed': 0,
        'map_sample': 10,
        'threads': 1,
    }


@pytest.mark.parametrize('key, value', [
    ('runs', 'many'),
    ('runs', '0'),
    ('diagonal_cost', '-1'),
    ('heuristic_mode', 'greedy'),
    ('tie_break', 'random'),
    ('tie_break', 'first'),
    ('colour', 'blue'),
])
def test_set_value_rejects(tmp_path, key, value):
    with pytest.raises(UsageError):
        PlannerConfig(tmp_path).set_value(key, value)


def test_threads_from_environment(tmp_path, monkeypatch):
    config = PlannerConfig(tmp_path)
    config.threads = 3

    monkeypatch.setenv('VBMO_THREADS', '6')
    assert config.threads == 6

    monkeypatch.setenv('VBMO_THREADS', 'lots')
    assert config.threads == 3

    monkeypatch.delenv('VBMO_THREADS')
    assert config.threads == 3
