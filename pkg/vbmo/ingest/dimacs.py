"""
DIMACS shortest path challenge files: `.gr` arcs and `.co` coordinates.
"""

from __future__ import annotations

import logging
from typing import NamedTuple
from dataclasses import dataclass

from ..exceptions import BuildError, ParseError
from ..graph import Graph, RoadGeometry, Topology
from ..objectives import (Heuristic, ObjectiveLayer,
                          calibrate_haversine_scale)

logger = logging.getLogger(__name__)

# Counts as published for the networks used in the experiments,
# (nodes, edges). Advisory only.
REFERENCE_COUNTS = {
    'NY': (365_050, 264_346),
}


class Arc(NamedTuple):
    source: int
    target: int
    weight: int


@dataclass(frozen=True)
class ArcFile:
    """Arcs of one `.gr` file with 0-based node ids."""

    node_count: int
    arcs: list[Arc]


@dataclass(frozen=True)
class Coordinates:
    """Longitude/latitude per 0-based node id, in degrees."""

    lon: tuple[float, ...]
    lat: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.lon)


def _ints(parts: list[str], lineno: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}",
                         lineno) from None


def parse_dimacs_gr(text: str) -> ArcFile:
    """Parse `p sp N M` and `a u v w` lines; `c` lines are comments."""
    node_count: int | None = None
    arc_count = 0
    arcs: list[Arc] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()

        if not parts or parts[0] == 'c':
            continue

        match parts[0]:
            case 'p':
                if node_count is not None:
                    raise ParseError("second problem line", lineno)
                if len(parts) != 4 or parts[1] != 'sp':
                    raise ParseError(f"expected 'p sp N M', got {line!r}",
                                     lineno)
                node_count, arc_count = _ints(parts[2:], lineno)
            case 'a':
                if node_count is None:
                    raise ParseError("arc before problem line", lineno)
                if len(parts) != 4:
                    raise ParseError(f"expected 'a u v w', got {line!r}",
                                     lineno)
                u, v, w = _ints(parts[1:], lineno)

                if not (1 <= u <= node_count and 1 <= v <= node_count):
                    raise ParseError(f"arc ({u}, {v}) outside of "
                                     f"{node_count} nodes", lineno)
                if w < 0:
                    raise ParseError(f"negative weight {w}", lineno)

                arcs.append(Arc(u - 1, v - 1, w))
            case _:
                raise ParseError(f"unknown line type {parts[0]!r}", lineno)

    if node_count is None:
        raise ParseError("missing problem line")

    if len(arcs) != arc_count:
        raise ParseError(f"{len(arcs)} arcs for declared {arc_count}")

    return ArcFile(node_count, arcs)


def parse_dimacs_co(text: str, node_count: int | None = None) -> Coordinates:
    """Parse `v id lon lat` lines given in micro-degrees."""
    declared: int | None = None
    seen: dict[int, tuple[int, int]] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()

        if not parts or parts[0] == 'c':
            continue

        if parts[0] == 'p':
            # p aux sp co N
            declared = _ints(parts[-1:], lineno)[0]
            continue

        if parts[0] != 'v' or len(parts) != 4:
            raise ParseError(f"expected 'v id lon lat', got {line!r}", lineno)

        node, lon, lat = _ints(parts[1:], lineno)

        if node in seen:
            raise ParseError(f"duplicate node {node}", lineno)
        seen[node] = (lon, lat)

    expected = node_count if node_count is not None else declared
    if expected is None:
        expected = len(seen)

    missing = [n for n in range(1, expected + 1) if n not in seen]
    if missing:
        raise ParseError(f"{len(missing)} nodes without coordinates, "
                         f"first is {missing[0]}")

    extra = [n for n in seen if not 1 <= n <= expected]
    if extra:
        raise ParseError(f"node {min(extra)} outside of {expected} nodes")

    lon = tuple(seen[n][0] * 1e-6 for n in range(1, expected + 1))
    lat = tuple(seen[n][1] * 1e-6 for n in range(1, expected + 1))
    return Coordinates(lon, lat)


def _collapse(name: str, arcs: list[Arc]) -> dict[tuple[int, int], int]:
    """Cheapest weight per (u, v); self-loops dropped, zero weights clamped."""
    weights: dict[tuple[int, int], int] = {}
    loops = clamped = 0

    for u, v, w in arcs:
        if u == v:
            loops += 1
            continue

        if w == 0:
            clamped += 1
            w = 1

        key = (u, v)
        weights[key] = min(w, weights.get(key, w))

    if loops:
        logger.warning(f"Dropped {loops} self-loops from {name} arcs")
    if clamped:
        logger.warning(f"Clamped {clamped} zero {name} weights to 1")
    if len(weights) + loops < len(arcs):
        logger.warning(f"Collapsed {len(arcs) - loops - len(weights)} "
                       f"parallel {name} arcs")
    return weights


def build_road_graph(distance_arcs: ArcFile,
                     time_arcs: ArcFile | None = None,
                     coords: Coordinates | None = None) -> Graph:
    """Directed graph with `distance` (and `time`) layers.

    With coordinates the distance layer gets a great-circle heuristic
    scaled so it never overestimates.
    """
    n = distance_arcs.node_count
    distance = _collapse('distance', distance_arcs.arcs)
    time = None

    if time_arcs is not None:
        if time_arcs.node_count != n:
            raise BuildError(f"time file has {time_arcs.node_count} nodes, "
                             f"distance file has {n}")

        time = _collapse('time', time_arcs.arcs)

        if time.keys() != distance.keys():
            (u, v), = sorted(time.keys() ^ distance.keys())[:1]
            where = 'time' if (u, v) in time else 'distance'
            raise BuildError(f"arc ({u + 1}, {v + 1}) present in "
                             f"{where} file only", (u, v))

    if coords is not None and len(coords) != n:
        raise BuildError(f"{len(coords)} coordinates for {n} nodes")

    keys = sorted(distance)
    geometry = RoadGeometry(coords.lon, coords.lat) if coords else None
    topology = Topology.from_arcs(n, keys, directed=True, geometry=geometry)

    base = Graph(topology)
    layers = [ObjectiveLayer('distance',
                             tuple(float(distance[k]) for k in keys))]

    if geometry is not None:
        scale = calibrate_haversine_scale(base.with_layer(layers[0]), 0)
        logger.info(f"Haversine scale for distance: {scale:.6g}")
        layers[0] = ObjectiveLayer('distance', layers[0].costs,
                                   Heuristic.haversine(scale))

    if time is not None:
        layers.append(ObjectiveLayer('time',
                                     tuple(float(time[k]) for k in keys)))

    return base.with_layers(layers)


def check_reference_counts(name: str, nodes: int, edges: int) -> str | None:
    """Compare with the published counts and warn on divergence."""
    key = name.rsplit('.', 1)[-1].upper()
    reference = REFERENCE_COUNTS.get(key)

    if reference is None or reference == (nodes, edges):
        return None

    note = (f"{key} has {nodes} nodes / {edges} edges, published figures "
            f"are {reference[0]} / {reference[1]}")
    logger.warning(note)
    return note
