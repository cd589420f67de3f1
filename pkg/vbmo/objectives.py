"""Edge cost layers and the heuristics that go with them."""

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
import logging
from enum import Enum
from dataclasses import dataclass
from collections.abc import Callable, Sequence
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import (BaseModel, ConfigDict, Field, PositiveFloat,
                      PositiveInt, TypeAdapter, ValidationError,
                      model_validator)

from .config import HeuristicMode
from .exceptions import ParseError, UsageError
from .graph import Graph, GridGeometry, RoadGeometry

__all__ = [
    'SQRT2',
    'EARTH_RADIUS',
    'HeuristicKind',
    'Heuristic',
    'ObjectiveLayer',
    'RandomSpec',
    'ObjectiveSpec',
    'label_distance',
    'label_uniform',
    'label_random',
    'label_safety',
    'heuristic_fn',
    'heuristic_value',
    'effective_heuristic',
    'haversine',
    'calibrate_haversine_scale',
    'layer_correlation',
    'parse_objectives',
    'build_layers'
]

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2)
EARTH_RADIUS = 6_371_000.0


class HeuristicKind(str, Enum):
    EUCLIDEAN = 'euclidean'
    HAVERSINE = 'haversine'
    ZERO = 'zero'


@dataclass(frozen=True)
class Heuristic:
    """How A* estimates the remaining cost of one layer."""

    kind: HeuristicKind
    scale: float = 1.0

    @classmethod
    def zero(cls) -> Heuristic:
        return cls(HeuristicKind.ZERO, 0.0)

    @classmethod
    def euclidean(cls, scale: float = 1.0) -> Heuristic:
        return cls(HeuristicKind.EUCLIDEAN, scale)

    @classmethod
    def haversine(cls, scale: float = 1.0) -> Heuristic:
        if scale <= 0:
            return cls.zero()
        return cls(HeuristicKind.HAVERSINE, scale)


@dataclass(frozen=True)
class ObjectiveLayer:
    """A named cost for every arc of a graph."""

    name: str
    costs: tuple[float, ...]
    heuristic: Heuristic = Heuristic.zero()


class RandomSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    low: PositiveInt
    high: PositiveInt
    seed: int = 0

    @model_validator(mode='after')
    def _check_range(self) -> RandomSpec:
        if self.low > self.high:
            raise ValueError(f"low {self.low} above high {self.high}")
        return self


# Objective mini-language terms

class DistanceObjective(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal['distance'] = 'distance'

    @property
    def label(self) -> str:
        return 'distance'


class TimeObjective(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal['time'] = 'time'

    @property
    def label(self) -> str:
        return 'time'


class UniformObjective(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal['uniform'] = 'uniform'
    cost: PositiveFloat = 1.0

    @property
    def label(self) -> str:
        return f"uniform:{self.cost:g}"


class RandomObjective(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal['random'] = 'random'
    low: PositiveInt = 1
    high: PositiveInt = 20
    seed: int | None = None

    @model_validator(mode='after')
    def _check_range(self) -> RandomObjective:
        if self.low > self.high:
            raise ValueError(f"low {self.low} above high {self.high}")
        return self

    @property
    def label(self) -> str:
        text = f"random:{self.low}:{self.high}"
        return text if self.seed is None else f"{text}:{self.seed}"

    def resolve(self, default_seed: int) -> RandomSpec:
        seed = default_seed if self.seed is None else self.seed
        return RandomSpec(low=self.low, high=self.high, seed=seed)


class SafetyObjective(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal['safety'] = 'safety'

    @property
    def label(self) -> str:
        return 'safety'


ObjectiveSpec = Annotated[
    Union[DistanceObjective, TimeObjective, UniformObjective,
          RandomObjective, SafetyObjective],
    Field(discriminator='kind')
]

_spec_adapter: TypeAdapter[ObjectiveSpec] = TypeAdapter(ObjectiveSpec)

_TERM_FIELDS = {
    'distance': (),
    'time': (),
    'uniform': ('cost',),
    'random': ('low', 'high', 'seed'),
    'safety': (),
}


def parse_objectives(text: str) -> list[ObjectiveSpec]:
    """Parse `distance,uniform:1.5,random:1:20:7,safety,time`."""
    specs: list[ObjectiveSpec] = []

    for term in (t.strip() for t in text.split(',')):
        if not term:
            raise ParseError(f"empty objective term in {text!r}")

        kind, *args = term.split(':')
        fields = _TERM_FIELDS.get(kind)

        if fields is None:
            raise ParseError(f"unknown objective {kind!r}")

        if len(args) > len(fields):
            raise ParseError(f"too many parameters in {term!r}")

        try:
            spec = _spec_adapter.validate_python(
                {'kind': kind, **dict(zip(fields, args))})
        except ValidationError as e:
            raise ParseError(f"invalid objective {term!r}: "
                             f"{e.errors()[0]['msg']}") from None

        specs.append(spec)

    labels = [spec.label for spec in specs]
    if len(set(labels)) != len(labels):
        raise ParseError(f"repeated objective in {text!r}")

    return specs


def _grid(g: Graph) -> GridGeometry:
    if not isinstance(g.geometry, GridGeometry):
        raise UsageError("objective needs a grid-derived graph")
    return g.geometry


def label_distance(g: Graph, diagonal_cost: float = SQRT2,
                   name: str = 'distance') -> ObjectiveLayer:
    """1 for orthogonal moves, `diagonal_cost` for diagonal ones."""
    geometry = _grid(g)
    rows, cols = geometry.rows, geometry.cols

    costs = tuple(
        diagonal_cost if rows[u] != rows[v] and cols[u] != cols[v] else 1.0
        for u, v in zip(g.sources, g.targets)
    )

    # Shrink the estimate when the diagonal is cheaper than its length
    scale = min(1.0, diagonal_cost / SQRT2)
    return ObjectiveLayer(name, costs, Heuristic.euclidean(scale))


def label_uniform(g: Graph, c: float,
                  name: str | None = None) -> ObjectiveLayer:
    if not c > 0:
        raise UsageError(f"uniform cost must be positive, got {c}")
    return ObjectiveLayer(name or f"uniform:{c:g}",
                          (float(c),) * g.arc_count)


def label_random(g: Graph, spec: RandomSpec,
                 name: str | None = None) -> ObjectiveLayer:
    """Integer costs drawn uniformly in [low, high], one per edge pair.

    Draws follow ascending (min id, max id) order so a seed gives the
    same layer on every platform.
    """
    pairs = list(g.canonical_pairs())
    rng = np.random.default_rng(spec.seed)
    draws = rng.integers(spec.low, spec.high + 1, size=len(pairs)).tolist()

    costs = [0.0] * g.arc_count

    for (u, v), draw in zip(pairs, draws):
        for a, b in ((u, v), (v, u)):
            i = g.arc(a, b)
            if i is not None:
                costs[i] = float(draw)

    return ObjectiveLayer(name or f"random:{spec.low}:{spec.high}",
                          tuple(costs))


def label_safety(g: Graph, name: str = 'safety') -> ObjectiveLayer:
    """Max degree plus one minus the mean degree of the endpoints."""
    degrees = np.diff(g.offsets).tolist()
    top = g.max_degree + 1

    costs = tuple(top - (degrees[u] + degrees[v]) / 2
                  for u, v in zip(g.sources, g.targets))
    return ObjectiveLayer(name, costs)


def haversine(lon1: float, lat1: float, lon2: float, lat2: float) -> float:
    """Great-circle distance in meters between two points in degrees."""
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = phi2 - phi1
    dlmb = math.radians(lon2 - lon1)

    a = (math.sin(dphi / 2) ** 2
         + math.cos(phi1) * math.cos(phi2) * math.sin(dlmb / 2) ** 2)
    return 2 * EARTH_RADIUS * math.asin(min(1.0, math.sqrt(a)))


def heuristic_fn(h: Heuristic, g: Graph,
                 goal: int) -> Callable[[int], float]:
    """Estimate of the remaining cost from any vertex to `goal`."""
    if h.kind is HeuristicKind.ZERO or h.scale == 0:
        return lambda v: 0.0

    geometry = g.geometry

    if h.kind is HeuristicKind.EUCLIDEAN:
        if not isinstance(geometry, GridGeometry):
            raise UsageError("euclidean heuristic needs grid geometry")

        rows, cols, scale = geometry.rows, geometry.cols, h.scale
        gr, gc = rows[goal], cols[goal]

        def euclidean(v: int) -> float:
            return scale * math.hypot(rows[v] - gr, cols[v] - gc)
        return euclidean

    if not isinstance(geometry, RoadGeometry):
        raise UsageError("haversine heuristic needs coordinates")

    lon, lat, scale = geometry.lon, geometry.lat, h.scale
    glon, glat = lon[goal], lat[goal]

    def great_circle(v: int) -> float:
        return scale * haversine(lon[v], lat[v], glon, glat)
    return great_circle


def heuristic_value(layer: ObjectiveLayer, g: Graph, v: int,
                    goal: int) -> float:
    return heuristic_fn(layer.heuristic, g, goal)(v)


def effective_heuristic(layer: ObjectiveLayer, g: Graph,
                        mode: HeuristicMode) -> Heuristic:
    """The layer's own estimate, or the geometric one for every layer."""
    if HeuristicMode(mode) is HeuristicMode.ADMISSIBLE:
        return layer.heuristic

    if isinstance(g.geometry, GridGeometry):
        return Heuristic.euclidean()
    if isinstance(g.geometry, RoadGeometry):
        return Heuristic.haversine()
    return Heuristic.zero()


def calibrate_haversine_scale(g: Graph, j: int) -> float:
    """Largest s with s * great-circle length <= cost on every arc."""
    geometry = g.geometry
    if not isinstance(geometry, RoadGeometry):
        raise UsageError("haversine calibration needs coordinates")

    lon, lat = geometry.lon, geometry.lat
    costs = g.costs(j)
    scale = math.inf

    for i, (u, v) in enumerate(zip(g.sources, g.targets)):
        length = haversine(lon[u], lat[u], lon[v], lat[v])

        if length > 0:
            scale = min(scale, costs[i] / length)

    return 0.0 if scale == math.inf else scale


def layer_correlation(g: Graph, a: int, b: int) -> float:
    """Pearson correlation of two layers over all arcs."""
    return float(np.corrcoef(g.costs(a), g.costs(b))[0, 1])


def build_layers(g: Graph, specs: Sequence[ObjectiveSpec], *,
                 seed: int = 0, diagonal_cost: float = SQRT2) -> Graph:
    """Label `g` with one layer per spec, in spec order.

    Layers already on `g` (the DIMACS distance and time files) are
    reused for `distance` and `time`.
    """
    existing = {layer.name: layer for layer in g.layers}
    base = g.without_layers()
    layers: list[ObjectiveLayer] = []

    for j, spec in enumerate(specs):
        match spec:
            case DistanceObjective() if 'distance' in existing:
                layer = existing['distance']
            case DistanceObjective():
                layer = label_distance(base, diagonal_cost)
            case TimeObjective() if 'time' in existing:
                layer = existing['time']
            case TimeObjective():
                raise UsageError("time objective needs a DIMACS time file")
            case UniformObjective(cost=cost):
                layer = label_uniform(base, cost, spec.label)
            case RandomObjective():
                layer = label_random(base, spec.resolve(seed + j),
                                     spec.label)
            case SafetyObjective():
                layer = label_safety(base)

        layers.append(layer)
        logger.debug(f"Labelled objective {layer.name}")

    return base.with_layers(layers)
