# This program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 2
# of the License, or (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program; if not, write to the Free Software
# Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston,
# MA  02110-1301, USA.

from .movingai import GridMap, parse_movingai, render_movingai, grid_to_graph
from .dimacs import (Arc, ArcFile, Coordinates, parse_dimacs_gr,
                     parse_dimacs_co, build_road_graph,
                     check_reference_counts)
from .sources import Source, load_graph, resolve_sources
from .fetch import fetch_dataset

__all__ = [
    'GridMap',
    'parse_movingai',
    'render_movingai',
    'grid_to_graph',
    'Arc',
    'ArcFile',
    'Coordinates',
    'parse_dimacs_gr',
    'parse_dimacs_co',
    'build_road_graph',
    'check_reference_counts',
    'Source',
    'load_graph',
    'resolve_sources',
    'fetch_dataset'
]
