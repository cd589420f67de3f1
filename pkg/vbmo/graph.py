"""Immutable multi-cost graph shared by every planner."""

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
from functools import cached_property
from dataclasses import dataclass, field
from collections.abc import Iterable, Iterator, Sequence
from typing import TYPE_CHECKING

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, breadth_first_order

from .exceptions import UsageError

if TYPE_CHECKING:
    from .objectives import ObjectiveLayer

__all__ = [
    'Edge',
    'GridGeometry',
    'RoadGeometry',
    'Topology',
    'Graph'
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Edge:
    """A directed arc and its cost under every objective."""

    source: int
    target: int
    index: int
    costs: tuple[float, ...]


@dataclass(frozen=True)
class GridGeometry:
    """Row/column of every vertex of a grid-derived graph."""

    height: int
    width: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @cached_property
    def _lookup(self) -> dict[tuple[int, int], int]:
        return {cell: v for v, cell in enumerate(zip(self.rows, self.cols))}

    def vertex_at(self, row: int, col: int) -> int | None:
        """Vertex of a cell, None when the cell is blocked or outside."""
        return self._lookup.get((row, col))

    def cell(self, v: int) -> tuple[int, int]:
        return self.rows[v], self.cols[v]


@dataclass(frozen=True)
class RoadGeometry:
    """Longitude/latitude of every vertex, in degrees."""

    lon: tuple[float, ...]
    lat: tuple[float, ...]


Geometry = GridGeometry | RoadGeometry


@dataclass(frozen=True)
class Topology:
    """Vertices and arcs in compressed sparse row form.

    Arcs leaving `v` are `targets[offsets[v]:offsets[v + 1]]`,
    sorted by target id.
    """

    vertex_count: int
    offsets: list[int]
    targets: list[int]
    directed: bool = False
    geometry: Geometry | None = None
    sources: list[int] = field(default_factory=list, repr=False)

    @classmethod
    def from_arcs(cls, vertex_count: int, arcs: Iterable[tuple[int, int]],
                  *, directed: bool = False,
                  geometry: Geometry | None = None) -> Topology:
        ordered = sorted(set(arcs))

        counts = [0] * (vertex_count + 1)
        targets = []
        sources = []

        for u, v in ordered:
            if u == v:
                raise UsageError(f"self-loop on vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise UsageError(f"arc ({u}, {v}) outside of "
                                 f"{vertex_count} vertices")
            counts[u + 1] += 1
            sources.append(u)
            targets.append(v)

        offsets = list(np.cumsum(counts).tolist())
        return cls(vertex_count, offsets, targets, directed, geometry, sources)

    @property
    def arc_count(self) -> int:
        return len(self.targets)

    @cached_property
    def _arc_index(self) -> dict[int, int]:
        n = self.vertex_count
        return {u * n + v: i for i, (u, v)
                in enumerate(zip(self.sources, self.targets))}

    def arc(self, u: int, v: int) -> int | None:
        """Index of the arc u→v, or None when there is none."""
        return self._arc_index.get(u * self.vertex_count + v)

    def csr(self, data: Sequence[float] | None = None) -> csr_matrix:
        if data is None:
            data = np.ones(self.arc_count)
        n = self.vertex_count
        return csr_matrix((np.asarray(data, dtype=float),
                           np.asarray(self.targets, dtype=np.int64),
                           np.asarray(self.offsets, dtype=np.int64)),
                          shape=(n, n))

    @cached_property
    def _components(self) -> tuple[int, np.ndarray]:
        if not self.vertex_count:
            return 0, np.zeros(0, dtype=np.int32)
        count, labels = connected_components(self.csr(), directed=True,
                                             connection='weak')
        return int(count), labels


class Graph:
    """One topology with J cost layers attached.

    Adding a layer returns a new graph that shares the topology,
    so vertex and edge counts never change.
    """

    def __init__(self, topology: Topology,
                 layers: Sequence[ObjectiveLayer] = ()) -> None:
        self._topology = topology
        self._layers = tuple(layers)
        self._combined: dict[tuple[float, ...], list[float]] = {}

        names = [layer.name for layer in self._layers]
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate objective names in {names}")

        for layer in self._layers:
            self._check_layer(layer)

    def _check_layer(self, layer: ObjectiveLayer) -> None:
        if len(layer.costs) != self.arc_count:
            raise UsageError(f"layer {layer.name} has {len(layer.costs)} "
                             f"costs for {self.arc_count} arcs")

        if self.arc_count and not all(
                c > 0 and math.isfinite(c) for c in layer.costs):
            raise UsageError(f"layer {layer.name} has a non-positive "
                             "or non-finite cost")

    def with_layer(self, layer: ObjectiveLayer) -> Graph:
        return Graph(self._topology, self._layers + (layer,))

    def with_layers(self, layers: Iterable[ObjectiveLayer]) -> Graph:
        return Graph(self._topology, self._layers + tuple(layers))

    def without_layers(self) -> Graph:
        return Graph(self._topology)

    @property
    def topology(self) -> Topology:
        return self._topology

    @property
    def vertex_count(self) -> int:
        return self._topology.vertex_count

    @property
    def arc_count(self) -> int:
        return self._topology.arc_count

    @property
    def directed(self) -> bool:
        return self._topology.directed

    @property
    def geometry(self) -> Geometry | None:
        return self._topology.geometry

    @property
    def offsets(self) -> list[int]:
        return self._topology.offsets

    @property
    def targets(self) -> list[int]:
        return self._topology.targets

    @property
    def sources(self) -> list[int]:
        return self._topology.sources

    @property
    def layers(self) -> tuple[ObjectiveLayer, ...]:
        return self._layers

    @property
    def objective_names(self) -> list[str]:
        return [layer.name for layer in self._layers]

    @property
    def objective_count(self) -> int:
        return len(self._layers)

    def layer(self, j: int) -> ObjectiveLayer:
        self._check_objective(j)
        return self._layers[j]

    def objective_index(self, name: str) -> int:
        try:
            return self.objective_names.index(name)
        except ValueError:
            raise UsageError(f"no objective named {name!r}") from None

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise UsageError(f"vertex {v} outside of "
                             f"{self.vertex_count} vertices")

    def _check_objective(self, j: int) -> None:
        if not 0 <= j < self.objective_count:
            raise UsageError(f"objective {j} outside of "
                             f"{self.objective_count} objectives")

    def neighbors(self, v: int) -> list[Edge]:
        """Outgoing edges of `v` by ascending target id."""
        self._check_vertex(v)
        first, last = self.offsets[v], self.offsets[v + 1]

        return [Edge(v, self.targets[i], i,
                     tuple(layer.costs[i] for layer in self._layers))
                for i in range(first, last)]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.offsets[v + 1] - self.offsets[v]

    def edge_cost(self, e: Edge, j: int) -> float:
        self._check_objective(j)
        return e.costs[j]

    def arc(self, u: int, v: int) -> int | None:
        return self._topology.arc(u, v)

    @cached_property
    def max_degree(self) -> int:
        if not self.vertex_count:
            return 0
        return max(np.diff(self.offsets).tolist())

    @property
    def average_degree(self) -> float:
        """Outgoing arcs per vertex (2E/V on symmetric graphs)."""
        if not self.vertex_count:
            return 0.0
        return self.arc_count / self.vertex_count

    @cached_property
    def edge_count(self) -> int:
        """Unordered vertex pairs joined by at least one arc."""
        return sum(1 for _ in self.canonical_pairs())

    def canonical_pairs(self) -> Iterator[tuple[int, int]]:
        """Unordered pairs (min id, max id) in ascending order."""
        pairs = {(min(u, v), max(u, v))
                 for u, v in zip(self.sources, self.targets)}
        return iter(sorted(pairs))

    def is_symmetric(self) -> bool:
        """Every arc u→v has v→u with an identical cost vector."""
        for i, (u, v) in enumerate(zip(self.sources, self.targets)):
            back = self.arc(v, u)

            if back is None:
                return False

            if any(layer.costs[i] != layer.costs[back]
                   for layer in self._layers):
                return False
        return True

    def costs(self, j: int) -> Sequence[float]:
        return self.layer(j).costs

    def combined_costs(self, weights: Sequence[float]) -> list[float]:
        """Per-arc weighted sum of the layers, cached per weight vector."""
        key = tuple(float(w) for w in weights)
        cached = self._combined.get(key)

        if cached is None:
            totals = np.zeros(self.arc_count)
            for w, layer in zip(key, self._layers):
                if w:
                    totals += w * np.asarray(layer.costs, dtype=float)
            cached = self._combined[key] = totals.tolist()
        return cached

    def csr(self, j: int | None = None) -> csr_matrix:
        return self._topology.csr(None if j is None else self.costs(j))

    def components(self) -> tuple[int, np.ndarray]:
        """Number of weakly connected components and vertex labels."""
        return self._topology._components

    def reachable(self, start: int, goal: int) -> bool:
        self._check_vertex(start)
        self._check_vertex(goal)

        if start == goal:
            return True

        _, labels = self.components()

        if labels[start] != labels[goal]:
            return False

        if not self.directed:
            return True

        order = breadth_first_order(self.csr(), start, directed=True,
                                    return_predecessors=False)
        return bool(np.isin(goal, order))

    def __repr__(self) -> str:
        return (f"Graph(vertices={self.vertex_count}, arcs={self.arc_count}, "
                f"objectives={self.objective_names})")
