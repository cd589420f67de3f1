"""
VBMO configuration manager
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

import os
import logging
import configparser
from enum import Enum
from typing import Any
from pathlib import Path
from functools import wraps
from collections.abc import Callable

from appdirs import user_config_dir

from .__about__ import __author__
from .exceptions import UsageError

logger = logging.getLogger(__name__)

THREADS_ENV = 'VBMO_THREADS'


class HeuristicMode(str, Enum):
    """Which layers get a geometric estimate; `geometric` is an alias."""
    ADMISSIBLE = 'admissible'
    GEOMETRIC = 'paper-faithful'

    @classmethod
    def _missing_(cls, value: object) -> "HeuristicMode | None":
        return cls.GEOMETRIC if value == 'geometric' else None


class CornerCutting(str, Enum):
    ALLOW = 'allow'
    FORBID = 'forbid'


class Config(configparser.ConfigParser):
    """Base configuration manager class, which wraps a ConfigParser."""

    def __init__(self, config_file: Path, *args, **kwargs):
        converters: dict[str, Callable[[str], Any]] = {
            'path': Path, 'mode': HeuristicMode, 'cutting': CornerCutting
        }

        super().__init__(converters=converters, interpolation=None,
                         *args, **kwargs)

        self._config_file = config_file
        self.read(self._config_file)

    def save(self) -> None:
        """Save the current configuration to disk."""
        self._config_file.parent.mkdir(parents=True, exist_ok=True)

        with self._config_file.open('w') as config_file:
            self.write(config_file)

    @staticmethod
    def persist(func) -> Callable[[Any, Any], None]:
        """A decorator to save any changes to the field to disk."""
        @wraps(func)
        def save_wrapper(self, *args: Any, **kwargs: Any) -> None:
            func(self, *args, **kwargs)
            self.save()
            logger.info("Updated configuration file")
        return save_wrapper


class PlannerConfig(Config):
    """User defaults for planning and benchmarking."""
    _config_filename = "vbmo"

    DEFAULT_DIAGONAL = 2 ** 0.5
    DEFAULT_RUNS = 50
    DEFAULT_SEED = 0
    DEFAULT_MAP_SAMPLE = 10

    def __init__(self, custom_dir: Path | None = None):
        default_dir = Path(user_config_dir(appauthor=__author__, roaming=True))

        config_dir = custom_dir or default_dir
        super().__init__(config_dir / self._config_filename,
                         empty_lines_in_values=False)

        for section in ('Planner', 'Bench'):
            if section not in self:
                self[section] = {}

        self._planner = self['Planner']
        self._bench = self['Bench']

    @property
    def heuristic_mode(self) -> HeuristicMode:
        return self._planner.getmode('heuristic_mode',
                                     HeuristicMode.ADMISSIBLE)

    @heuristic_mode.setter
    @Config.persist
    def heuristic_mode(self, mode: HeuristicMode) -> None:
        self._planner['heuristic_mode'] = HeuristicMode(mode).value

    @property
    def corner_cutting(self) -> CornerCutting:
        return self._planner.getcutting('corner_cutting',
                                        CornerCutting.FORBID)

    @corner_cutting.setter
    @Config.persist
    def corner_cutting(self, cutting: CornerCutting) -> None:
        self._planner['corner_cutting'] = CornerCutting(cutting).value

    @property
    def diagonal_cost(self) -> float:
        return self._planner.getfloat('diagonal_cost', self.DEFAULT_DIAGONAL)

    @diagonal_cost.setter
    @Config.persist
    def diagonal_cost(self, cost: float) -> None:
        if cost <= 0:
            raise UsageError("diagonal cost must be positive")
        self._planner['diagonal_cost'] = repr(float(cost))

    @property
    def tie_break(self) -> str:
        return self._planner.get('tie_break', 'lowest')

    @tie_break.setter
    @Config.persist
    def tie_break(self, rule: str) -> None:
        from .voting import parse_tie_break
        self._planner['tie_break'] = str(parse_tie_break(rule))

    @property
    def runs(self) -> int:
        return self._bench.getint('runs', self.DEFAULT_RUNS)

    @runs.setter
    @Config.persist
    def runs(self, runs: int) -> None:
        if runs < 1:
            raise UsageError("runs must be at least 1")
        self._bench['runs'] = str(runs)

    @property
    def seed(self) -> int:
        return self._bench.getint('seed', self.DEFAULT_SEED)

    @seed.setter
    @Config.persist
    def seed(self, seed: int) -> None:
        self._bench['seed'] = str(seed)

    @property
    def map_sample(self) -> int:
        return self._bench.getint('map_sample', self.DEFAULT_MAP_SAMPLE)

    @map_sample.setter
    @Config.persist
    def map_sample(self, count: int) -> None:
        self._bench['map_sample'] = str(count)

    @property
    def threads(self) -> int:
        """Worker count, the environment wins over the file; 0 is auto."""
        env = os.environ.get(THREADS_ENV)

        if env is not None:
            try:
                return max(0, int(env))
            except ValueError:
                logger.warning(f"Ignoring non-integer {THREADS_ENV}={env!r}")

        return self._bench.getint('threads', 1)

    @threads.setter
    @Config.persist
    def threads(self, threads: int) -> None:
        self._bench['threads'] = str(max(0, threads))

    KEYS = ('heuristic_mode', 'corner_cutting', 'diagonal_cost', 'tie_break',
            'runs', 'seed', 'map_sample', 'threads')

    def set_value(self, key: str, value: str) -> None:
        """Persist one key given as text, as typed on the command line."""
        parsers: dict[str, Callable[[str], Any]] = {
            'heuristic_mode': HeuristicMode,
            'corner_cutting': CornerCutting,
            'diagonal_cost': float,
            'tie_break': str,
            'runs': int,
            'seed': int,
            'map_sample': int,
            'threads': int,
        }

        if key not in parsers:
            raise UsageError(f"unknown configuration key {key!r}")

        try:
            parsed = parsers[key](value)
        except ValueError as e:
            raise UsageError(f"invalid value for {key}: {value!r}") from e

        setattr(self, key, parsed)

    def as_dict(self) -> dict[str, Any]:
        values = {key: getattr(self, key) for key in self.KEYS}
        return {k: v.value if isinstance(v, Enum) else v
                for k, v in values.items()}
