from wahl_blowdown.errors import DomainError, StructureError, UnsupportedGraphError
from wahl_blowdown.lattice import determinant, smith_normal_form
from wahl_blowdown.plumbing import (
    PlumbingGraph,
    boundary_h1,
    intersection_form,
    is_negative_definite,
    plumbed_invariants,
    rational_ball_invariants,
    same_tree,
    wahl_tree,
)
import pytest


def test_p1_form(p1):
    Q = intersection_form(p1)
    assert Q.to_list() == [
        [-4, 1, 1, 1],
        [1, -3, 0, 0],
        [1, 0, -3, 0],
        [1, 0, 0, -3],
    ]
    assert determinant(Q) == 81
    assert smith_normal_form(Q) == [1, 1, 3, 27]


def test_boundary_h1(p1, p2, p4):
    assert boundary_h1(p1).h1_order == 81
    assert boundary_h1(p1).h1_divisors == (3, 27)
    assert boundary_h1(p2).h1_order == 289
    assert boundary_h1(p2).h1_divisors == (289,)
    assert boundary_h1(p4).h1_order == 625


@pytest.mark.parametrize("r, order", [(2, 81), (4, 289), (6, 625), (8, 1089), (10, 1681)])
def test_wahl_trees_bound_square_order(r, order):
    g = wahl_tree(r)
    assert g.num_vertices() == r + 2
    assert g.is_tree()
    assert boundary_h1(g).h1_order == order == (4 * r + 1) ** 2
    assert is_negative_definite(g)


def test_wahl_tree_shape(p2):
    assert p2.weights == [-4, -5, -3, -2, -2, -3]
    assert p2.edges == [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]
    assert p2.degree(0) == 3
    assert p2.neighbors(3) == [0, 4]


@pytest.mark.parametrize("r", [0, 3, -2, 4.0])
def test_wahl_tree_rejects_bad_r(r):
    with pytest.raises(DomainError):
        wahl_tree(r)


def test_plumbed_invariants(p1, p2, p4):
    inv = plumbed_invariants(p1)
    assert (inv.e, inv.sigma, inv.b1, inv.b2) == (5, -4, 0, 4)
    assert inv.is_negative_definite()
    assert (plumbed_invariants(p2).e, plumbed_invariants(p2).sigma) == (7, -6)
    assert (plumbed_invariants(p4).e, plumbed_invariants(p4).sigma) == (9, -8)


def test_rational_ball():
    ball = rational_ball_invariants()
    assert (ball.e, ball.sigma, ball.b1, ball.b2) == (1, 0, 0, 0)


def test_cycle_is_not_plumbed():
    cycle = PlumbingGraph([-2, -2, -2], [(0, 1), (1, 2), (2, 0)])
    assert cycle.is_connected()
    assert not cycle.is_tree()
    with pytest.raises(UnsupportedGraphError):
        plumbed_invariants(cycle)


def test_indefinite_and_degenerate_forms():
    assert not is_negative_definite(PlumbingGraph([1], []))
    # [[-1, 1], [1, -1]] is degenerate
    assert not is_negative_definite(PlumbingGraph([-1, -1], [(0, 1)]))
    assert is_negative_definite(PlumbingGraph([-2, -2], [(0, 1)]))


def test_disconnected_graph_has_no_form():
    g = PlumbingGraph([-2, -2], [])
    assert not g.is_connected()
    with pytest.raises(StructureError):
        intersection_form(g)
    assert not PlumbingGraph([], []).is_connected()


@pytest.mark.parametrize(
    "weights, edges",
    [
        ([-2, -2], [(0, 0)]),
        ([-2, -2], [(0, 1), (1, 0)]),
        ([-2, -2], [(0, 2)]),
    ],
)
def test_bad_edges(weights, edges):
    with pytest.raises(StructureError):
        PlumbingGraph(weights, edges)


def test_from_ids():
    g = PlumbingGraph.from_ids([(10, -4), (20, -3)], [(10, 20)])
    assert g.ids == [10, 20]
    assert g.has_edge(0, 1)
    assert g.to_json() == {
        "vertices": [{"id": 10, "weight": -4}, {"id": 20, "weight": -3}],
        "edges": [[10, 20]],
    }
    with pytest.raises(StructureError):
        PlumbingGraph.from_ids([(1, -2), (1, -2)], [])
    with pytest.raises(StructureError):
        PlumbingGraph.from_ids([(1, -2)], [(1, 2)])


def test_same_tree_ignores_order(p1, p2):
    shuffled = PlumbingGraph([-3, -3, -4, -3], [(2, 0), (2, 1), (3, 2)])
    assert same_tree(p1, shuffled)
    assert not same_tree(p1, p2)
    assert not same_tree(p1, PlumbingGraph([-3, -3, -5, -3], [(2, 0), (2, 1), (3, 2)]))
