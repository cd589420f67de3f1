"""Errors raised by the planner, the parsers and the harness."""

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

__all__ = [
    'VBMOError',
    'UsageError',
    'ParseError',
    'BuildError',
    'NoPathError',
    'InvalidPlanError',
    'CapacityError',
    'SamplingError',
    'FetchError'
]


class VBMOError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 2


class UsageError(VBMOError):
    """An argument is outside of its valid range."""


class ParseError(VBMOError):
    """Input text could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BuildError(VBMOError):
    """Arc files could not be combined into one graph."""

    def __init__(self, message: str,
                 arc: tuple[int, int] | None = None) -> None:
        self.arc = arc
        super().__init__(message)


class NoPathError(VBMOError):
    """The goal cannot be reached from the start."""

    exit_code = 1

    def __init__(self, start: int, goal: int, component_size: int) -> None:
        self.start = start
        self.goal = goal
        self.component_size = component_size
        super().__init__(f"no path from {start} to {goal} "
                         f"({component_size} vertices searched)")


class InvalidPlanError(UsageError):
    """Two consecutive plan vertices are not joined by an edge."""

    def __init__(self, u: int, v: int) -> None:
        self.pair = (u, v)
        super().__init__(f"vertices {u} and {v} are not adjacent")


class CapacityError(VBMOError):
    """Path enumeration would exceed its cap."""

    def __init__(self, cap: int) -> None:
        self.cap = cap
        super().__init__(f"more than {cap} simple paths, "
                         "use a smaller instance")


class SamplingError(VBMOError):
    """Connected start/goal pairs could not be drawn."""

    exit_code = 1


class FetchError(VBMOError):
    """A dataset could not be downloaded."""

    exit_code = 1
