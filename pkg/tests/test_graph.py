"""Graph core tests"""

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
# Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston, MA  02110-1301, USA.

import pytest
from hypothesis import given

from vbmo.config import CornerCutting
from vbmo.exceptions import UsageError
from vbmo.graph import Graph, Topology
from vbmo.ingest import grid_to_graph
from vbmo.objectives import ObjectiveLayer, label_uniform

from .strategies import grid_maps, text_map


def test_free_2x2_grid():
    g = grid_to_graph(text_map('..', '..'))
    assert g.vertex_count == 4
    assert g.arc_count == 12
    assert g.edge_count == 6


def test_blocked_corner_forbids_cutting():
    m = text_map('@.', '..')

    forbid = grid_to_graph(m, CornerCutting.FORBID)
    allow = grid_to_graph(m, CornerCutting.ALLOW)

    assert forbid.vertex_count == allow.vertex_count == 3
    assert forbid.arc_count == 4
    assert allow.arc_count == 6


def test_3x3_degrees():
    g = grid_to_graph(text_map('...', '...', '...'))
    assert g.degree(4) == 8
    assert g.degree(0) == 3
    assert g.degree(1) == 5
    assert g.max_degree == 8


def test_single_cell_map():
    g = grid_to_graph(text_map('.'))
    assert g.vertex_count == 1
    assert g.edge_count == 0
    assert g.average_degree == 0
    assert g.components()[0] == 1


def test_neighbors_sorted_by_target():
    g = grid_to_graph(text_map('...', '...', '...'))
    targets = [e.target for e in g.neighbors(4)]
    assert targets == sorted(targets)
    assert all(e.source == 4 for e in g.neighbors(4))


def test_neighbors_carry_every_cost():
    g = grid_to_graph(text_map('..', '..'))
    g = g.with_layer(label_uniform(g, 2.0, 'two'))
    g = g.with_layer(label_uniform(g.without_layers(), 3.0, 'three'))

    for e in g.neighbors(0):
        assert e.costs == (2.0, 3.0)
        assert g.edge_cost(e, 1) == 3.0


def test_vertex_out_of_range():
    g = grid_to_graph(text_map('..'))
    with pytest.raises(UsageError):
        g.neighbors(2)
    with pytest.raises(UsageError):
        g.degree(-1)


def test_objective_out_of_range():
    g = grid_to_graph(text_map('..'))
    e = g.neighbors(0)[0]
    with pytest.raises(UsageError):
        g.edge_cost(e, 0)


def test_components_of_split_map():
    g = grid_to_graph(text_map('.@.'))
    count, labels = g.components()

    assert count == 2
    assert labels[0] != labels[1]
    assert not g.reachable(0, 1)
    assert g.reachable(1, 1)


def test_directed_reachability():
    topology = Topology.from_arcs(3, [(0, 1), (1, 2)], directed=True)
    g = Graph(topology)

    assert g.reachable(0, 2)
    assert not g.reachable(2, 0)
    assert not g.is_symmetric()


def test_self_loop_rejected():
    with pytest.raises(UsageError):
        Topology.from_arcs(2, [(1, 1)])


def test_layer_length_checked():
    g = grid_to_graph(text_map('..'))
    with pytest.raises(UsageError):
        g.with_layer(ObjectiveLayer('short', (1.0,)))


def test_non_positive_cost_rejected():
    g = grid_to_graph(text_map('..'))
    with pytest.raises(UsageError):
        g.with_layer(ObjectiveLayer('zero', (0.0, 1.0)))


def test_duplicate_layer_names():
    g = grid_to_graph(text_map('..'))
    layer = label_uniform(g, 1.0, 'same')
    with pytest.raises(UsageError):
        g.with_layers([layer, layer])


def test_objective_index():
    g = grid_to_graph(text_map('..'))
    g = g.with_layer(label_uniform(g, 1.0, 'steps'))
    assert g.objective_index('steps') == 0
    with pytest.raises(UsageError):
        g.objective_index('missing')


def test_combined_costs():
    g = grid_to_graph(text_map('..'))
    g = g.with_layers([label_uniform(g, 1.0, 'a'), label_uniform(g, 2.0, 'b')])
    assert g.combined_costs([1.0, 1.0]) == [3.0, 3.0]
    assert g.combined_costs([0.0, 0.5]) == [1.0, 1.0]


@given(grid_maps())
def test_grid_graphs_are_symmetric(m):
    g = grid_to_graph(m)
    assert g.is_symmetric()
    assert g.arc_count == 2 * g.edge_count
    assert g.vertex_count == m.passable_count


@given(grid_maps())
def test_layers_share_topology(m):
    g = grid_to_graph(m)
    labelled = g.with_layer(label_uniform(g, 1.0))
    assert labelled.vertex_count == g.vertex_count
    assert labelled.arc_count == g.arc_count
    assert labelled.topology is g.topology
