"""
MovingAI grid maps (`.map`) and their 8-connected graphs.
"""

from __future__ import annotations

import logging

from pydantic import BaseModel, ConfigDict, model_validator

from ..config import CornerCutting
from ..exceptions import ParseError
from ..graph import Graph, GridGeometry, Topology

logger = logging.getLogger(__name__)

PASSABLE = frozenset('.G')
BLOCKED = frozenset('@OTSW')

# (dr, dc) in ascending target-id order for row-major ids
MOVES = ((-1, -1), (-1, 0), (-1, 1), (0, -1),
         (0, 1), (1, -1), (1, 0), (1, 1))


class GridMap(BaseModel):
    """Occupancy grid as written in the map file."""

    model_config = ConfigDict(frozen=True)

    width: int
    height: int
    rows: tuple[str, ...]

    @model_validator(mode='after')
    def _check_cells(self) -> GridMap:
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be positive")

        if len(self.rows) != self.height:
            raise ValueError(f"{len(self.rows)} rows for height {self.height}")

        for i, row in enumerate(self.rows):
            if len(row) != self.width:
                raise ValueError(f"row {i} has {len(row)} cells "
                                 f"for width {self.width}")
            unknown = set(row) - PASSABLE - BLOCKED
            if unknown:
                raise ValueError(f"row {i} has unknown cells "
                                 f"{sorted(unknown)}")
        return self

    def passable(self, row: int, col: int) -> bool:
        """True for an in-bounds `.` or `G` cell."""
        if not (0 <= row < self.height and 0 <= col < self.width):
            return False
        return self.rows[row][col] in PASSABLE

    @property
    def passable_count(self) -> int:
        return sum(sum(c in PASSABLE for c in row) for row in self.rows)


def _header_value(line: str, key: str, lineno: int) -> int:
    parts = line.split()

    if len(parts) != 2 or parts[0] != key:
        raise ParseError(f"expected '{key} <n>', got {line!r}", lineno)

    try:
        value = int(parts[1])
    except ValueError:
        raise ParseError(f"{key} is not an integer: {parts[1]!r}",
                         lineno) from None

    if value < 1:
        raise ParseError(f"{key} must be positive", lineno)
    return value


def parse_movingai(text: str) -> GridMap:
    """Parse the contents of a MovingAI `.map` file."""
    lines = text.splitlines()

    if len(lines) < 4:
        raise ParseError("missing header", len(lines) + 1)

    kind = lines[0].split()
    if len(kind) != 2 or kind[0] != 'type':
        raise ParseError(f"expected 'type octile', got {lines[0]!r}", 1)
    if kind[1] != 'octile':
        logger.warning(f"Map type {kind[1]!r} read as octile")

    dims = {}
    for lineno in (2, 3):
        key = lines[lineno - 1].split()[:1]
        if key not in (['height'], ['width']) or key[0] in dims:
            raise ParseError("expected 'height <n>' and 'width <n>'", lineno)
        dims[key[0]] = _header_value(lines[lineno - 1], key[0], lineno)

    if lines[3].strip() != 'map':
        raise ParseError(f"expected 'map', got {lines[3]!r}", 4)

    height, width = dims['height'], dims['width']

    body = lines[4:]
    # Tolerate trailing blank lines only
    while body and not body[-1].strip():
        body.pop()

    if len(body) != height:
        raise ParseError(f"{len(body)} rows for height {height}",
                         5 + min(len(body), height))

    for offset, row in enumerate(body):
        lineno = 5 + offset

        if len(row) != width:
            raise ParseError(f"row has {len(row)} cells for width {width}",
                             lineno)

        for col, cell in enumerate(row):
            if cell not in PASSABLE and cell not in BLOCKED:
                raise ParseError(f"unknown cell {cell!r} at column {col}",
                                 lineno)

    return GridMap(width=width, height=height, rows=tuple(body))


def render_movingai(m: GridMap) -> str:
    """Write a grid back in the MovingAI format."""
    header = ["type octile", f"height {m.height}", f"width {m.width}", "map"]
    return "\n".join(header + list(m.rows)) + "\n"


def grid_to_graph(m: GridMap,
                  corner_cutting: CornerCutting = CornerCutting.FORBID
                  ) -> Graph:
    """One vertex per passable cell, row-major; 8-connected arcs.

    With corner cutting forbidden a diagonal move needs both of the
    orthogonal cells it passes between to be passable.
    """
    forbid = CornerCutting(corner_cutting) is CornerCutting.FORBID

    rows: list[int] = []
    cols: list[int] = []
    ids: dict[tuple[int, int], int] = {}

    for r, line in enumerate(m.rows):
        for c, cell in enumerate(line):
            if cell in PASSABLE:
                ids[(r, c)] = len(rows)
                rows.append(r)
                cols.append(c)

    arcs = []

    for v, (r, c) in enumerate(zip(rows, cols)):
        for dr, dc in MOVES:
            u = ids.get((r + dr, c + dc))

            if u is None:
                continue

            if dr and dc and forbid:
                if (r, c + dc) not in ids or (r + dr, c) not in ids:
                    continue

            arcs.append((v, u))

    geometry = GridGeometry(m.height, m.width, tuple(rows), tuple(cols))
    topology = Topology.from_arcs(len(rows), arcs, directed=False,
                                  geometry=geometry)

    logger.debug(f"Grid {m.height}x{m.width}: {len(rows)} vertices, "
                 f"{topology.arc_count} arcs")
    return Graph(topology)
