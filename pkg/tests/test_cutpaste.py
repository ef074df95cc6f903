from dataclasses import replace
from fractions import Fraction
from wahl_blowdown import constructions
from wahl_blowdown.cutpaste import (
    LSPACE_NOTE,
    SIMPLY_CONNECTED_NOTE,
    ClosedManifoldModel,
    blowdown_all,
    characteristic_extension_check,
    freedman_classify,
    rational_blowdown,
    restricted_square,
    sw_transfer,
)
from wahl_blowdown.errors import (
    ClassificationError,
    DimensionError,
    HypothesisError,
    InconsistencyError,
    PreconditionError,
    StructureError,
)
from wahl_blowdown.plumbing import CompactPieceInvariants, PlumbingGraph, intersection_form
import pytest


def test_blowup_of_cp2():
    m = ClosedManifoldModel.blowup_of_cp2(13)
    assert (m.e, m.sigma, m.b2, m.b_plus, m.b_minus) == (16, -12, 14, 1, 13)
    assert m.simply_connected
    assert m.parity == "odd"


@pytest.mark.parametrize(
    "kwargs",
    [
        {"e": 4, "sigma": 0, "b1": 1},
        {"e": 2, "sigma": 3},
        {"e": 5, "sigma": 2},
    ],
)
def test_inconsistent_models(kwargs):
    with pytest.raises(InconsistencyError):
        ClosedManifoldModel(**kwargs)


def test_x1_blowdown():
    plan, k = constructions.PLANS["X1'"]
    result = rational_blowdown(plan)
    assert (result.e, result.sigma) == (12, -8)
    assert result.simply_connected
    assert SIMPLY_CONNECTED_NOTE in result.notes
    assert LSPACE_NOTE in result.notes
    assert freedman_classify(result) == f"CP2#{k}CP2bar" == "CP2#9CP2bar"


@pytest.mark.parametrize(
    "name, e, sigma",
    [("X1'", 12, -8), ("X2'", 11, -7), ("X3'", 10, -6), ('X3"', 10, -6), ("X4'", 9, -5)],
)
def test_all_plans(name, e, sigma):
    plan, k = constructions.PLANS[name]
    result = rational_blowdown(plan)
    assert (result.e, result.sigma) == (e, sigma)
    assert freedman_classify(result) == f"CP2#{k}CP2bar"


def test_knot_surgery_is_noted():
    plan, _ = constructions.PLANS["X3'"]
    assert constructions.KNOT_SURGERY_NOTE in rational_blowdown(plan).notes


def test_blowdown_all():
    plan, _ = constructions.PLANS["X1'"]
    ambient = ClosedManifoldModel.blowup_of_cp2(13)
    result = blowdown_all(ambient, [plan, plan])
    assert (result.e, result.sigma) == (8, -4)
    assert freedman_classify(result) == "CP2#5CP2bar"
    assert blowdown_all(ambient, []) == ambient


def test_ball_with_homology():
    plan, _ = constructions.PLANS["X1'"]
    bad = replace(plan, ball=CompactPieceInvariants(e=2, sigma=-1, b1=0, b2=1))
    with pytest.raises(PreconditionError):
        rational_blowdown(bad)


def test_freedman_unrecognized():
    assert freedman_classify(ClosedManifoldModel(e=4, sigma=0, parity="even")) == "unrecognized"
    # CP2 # CP2 # CP2-bar has b+ = 2
    assert freedman_classify(ClosedManifoldModel(e=5, sigma=1)) == "unrecognized"
    assert freedman_classify(ClosedManifoldModel(e=3, sigma=1)) == "CP2#0CP2bar"
    with pytest.raises(ClassificationError):
        freedman_classify(ClosedManifoldModel(e=4, sigma=0, b1=1, simply_connected=False))


def test_sw_transfer_passes_value():
    plan, _ = constructions.PLANS["X1'"]
    assert sw_transfer(-1, plan, 0, True) == -1


@pytest.mark.parametrize(
    "change, d, agree, hypothesis",
    [
        ({"lspace_flag": False}, 0, True, "lspace"),
        ({"piece": CompactPieceInvariants(e=5, sigma=-2, b1=0, b2=4)}, 0, True, "piece_negative_definite"),
        ({"piece": CompactPieceInvariants(e=5, sigma=-4, b1=1, b2=4)}, 0, True, "piece_b1"),
        ({"ball": CompactPieceInvariants(e=1, sigma=0, b1=1, b2=0)}, 0, True, "ball_b1"),
        ({}, -2, True, "dimension"),
        ({}, 0, False, "restrictions"),
    ],
)
def test_sw_transfer_hypotheses(change, d, agree, hypothesis):
    plan, _ = constructions.PLANS["X1'"]
    with pytest.raises(HypothesisError) as error:
        sw_transfer(-1, replace(plan, **change), d, agree)
    assert error.value.hypothesis == hypothesis


def test_lspace_message():
    plan, _ = constructions.PLANS["X1'"]
    with pytest.raises(HypothesisError, match="L-space hypothesis unmet"):
        sw_transfer(1, replace(plan, lspace_flag=False), 0, True)


def test_characteristic_extension(p1_in_cp2_13, p1_reference, p2_in_cp2_14):
    assert characteristic_extension_check(constructions.K1, p1_in_cp2_13, p1_reference)
    assert characteristic_extension_check(constructions.K2, p2_in_cp2_14, constructions.reference_p2())


def test_characteristic_extension_failures(p1_in_cp2_13, p1_reference):
    lattice = p1_in_cp2_13.lattice
    even = lattice.class_of([2] + [-1] * 13)
    assert not characteristic_extension_check(even, p1_in_cp2_13, p1_reference)
    # characteristic, but 0 on the center instead of -2
    other = lattice.class_of([3] + [-1] * 11 + [1, -1])
    assert not characteristic_extension_check(other, p1_in_cp2_13, p1_reference)
    with pytest.raises(StructureError):
        characteristic_extension_check(constructions.K1, p1_in_cp2_13, constructions.reference_p2())
    with pytest.raises(DimensionError):
        characteristic_extension_check(constructions.K2, p1_in_cp2_13, p1_reference)


def test_restricted_squares(p1, p2):
    assert restricted_square([-2, -1, -1, -1], intersection_form(p1)) == -4
    assert restricted_square([-2, -3, -1, 0, 0, -1], intersection_form(p2)) == -6
    assert restricted_square([1, 0], intersection_form(PlumbingGraph([-4, -3], [(0, 1)]))) == Fraction(-3, 11)