"""
Turn map paths given on the command line into graphs.
"""

from __future__ import annotations

import logging
from pathlib import Path
from dataclasses import dataclass

import numpy as np

from ..config import CornerCutting
from ..exceptions import UsageError
from ..graph import Graph
from .movingai import parse_movingai, grid_to_graph
from .dimacs import (ArcFile, parse_dimacs_gr, parse_dimacs_co,
                     build_road_graph, check_reference_counts)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Source:
    map_id: str
    path: Path


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding='ascii', errors='replace')
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def road_siblings(path: Path) -> tuple[Path | None, Path | None]:
    """Time `.gr` and `.co` files next to a `-d.` distance file."""
    name = path.name
    time = coords = None

    if '-d.' in name:
        candidate = path.with_name(name.replace('-d.', '-t.', 1))
        time = candidate if candidate.exists() else None

    candidate = path.with_suffix('.co')
    if candidate.exists():
        coords = candidate

    return time, coords


def load_road(path: Path) -> Graph:
    time_path, co_path = road_siblings(path)

    distance = parse_dimacs_gr(_read(path))
    time: ArcFile | None = None

    if time_path is not None:
        logger.info(f"Pairing time arcs from {time_path.name}")
        time = parse_dimacs_gr(_read(time_path))

    coords = None
    if co_path is not None:
        coords = parse_dimacs_co(_read(co_path), distance.node_count)

    g = build_road_graph(distance, time, coords)

    logger.info(f"{path.stem}: {g.vertex_count} nodes, {g.arc_count} arcs")
    check_reference_counts(path.stem, g.vertex_count, g.edge_count)
    return g


def load_graph(path: Path,
               corner_cutting: CornerCutting = CornerCutting.FORBID) -> Graph:
    """Grid graph for `.map` files, road graph for `.gr` files."""
    match path.suffix:
        case '.map':
            return grid_to_graph(parse_movingai(_read(path)), corner_cutting)
        case '.gr':
            return load_road(path)
        case _:
            raise UsageError(f"unsupported map file {path.name}")


def resolve_sources(paths: list[Path], sample: int | None = None,
                    seed: int = 0) -> list[Source]:
    """Expand directories and sample maps for desk-scale runs.

    Directories contribute their `.map` files and their DIMACS
    distance files; `sample=None` keeps every map.
    """
    found: list[Path] = []

    for path in paths:
        if path.is_dir():
            found.extend(sorted(path.glob('*.map')))
            found.extend(sorted(p for p in path.glob('*.gr')
                                if '-t.' not in p.name))
        elif path.exists():
            found.append(path)
        else:
            raise UsageError(f"no such map source {path}")

    if not found:
        raise UsageError("no maps found")

    if sample is not None and sample < len(found):
        rng = np.random.default_rng(seed)
        picks = rng.choice(len(found), size=sample, replace=False)
        found = [found[i] for i in sorted(picks.tolist())]
        logger.info(f"Sampled {sample} maps")

    return [Source(p.stem, p) for p in found]
