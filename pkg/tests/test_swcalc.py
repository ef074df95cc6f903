from fractions import Fraction
from wahl_blowdown import constructions
from wahl_blowdown.errors import DomainError, InconsistencyError, PreconditionError
from wahl_blowdown.lattice import BlowupLattice
from wahl_blowdown.properties import run_suite
from wahl_blowdown.swcalc import (
    ChamberedValue,
    SWContext,
    chamber_sweep,
    class_condition_report,
    dimension_after_blowdown,
    formal_dimension,
    small_perturbation_sw,
    unique_chamber,
    wall_between,
    wall_cross,
)
import pytest


def test_formal_dimensions():
    assert constructions.K1.square() == -4
    assert formal_dimension(-4, -12, 16) == 0
    assert constructions.K2.square() == -5
    assert formal_dimension(-5, -13, 17) == 0
    # CP2 with K = 3H
    assert formal_dimension(9, 1, 3) == 0
    with pytest.raises(InconsistencyError):
        formal_dimension(-3, -12, 16)


@pytest.mark.parametrize("minus, d, plus", [(0, 0, -1), (0, 2, 1), (5, 0, 4), (-3, 4, -4)])
def test_wall_cross(minus, d, plus):
    assert wall_cross(minus, d) == plus
    assert ChamberedValue.crossing(minus, d) == ChamberedValue(minus, plus, d)


@pytest.mark.parametrize("d", [-2, 1, 3])
def test_wall_cross_needs_even_nonnegative_d(d):
    with pytest.raises(PreconditionError):
        wall_cross(0, d)


def test_chambered_value_consistency():
    with pytest.raises(InconsistencyError):
        ChamberedValue(0, 1, 0)


def test_context_preconditions():
    lattice = constructions.CP2_13
    with pytest.raises(PreconditionError):
        SWContext(16, -12, lattice.class_of([2] + [-1] * 13), lattice.H())
    with pytest.raises(PreconditionError):
        SWContext(16, -12, constructions.K1, lattice.E(1))


def test_wall_between():
    H = constructions.CP2_13.H()
    assert wall_between(constructions.K1, H, constructions.A1)
    assert not wall_between(constructions.K1, H, H)
    with pytest.raises(PreconditionError):
        wall_between(constructions.K1, H, constructions.CP2_13.E(1))
    with pytest.raises(PreconditionError):
        wall_between(constructions.K1, H, -H)
    with pytest.raises(PreconditionError):
        wall_between(constructions.K1, constructions.CP2_13.E(1), constructions.A1)


@pytest.mark.parametrize("name", ["one", "two"])
def test_small_perturbation_value(name):
    case = constructions.sw_cases()[name]
    ctx = SWContext(case.e, case.sigma, case.K, case.K.lattice.H())
    assert ctx.dimension() == 0
    value = small_perturbation_sw(ctx, case.a, True)
    assert abs(value) == 1
    assert value == -1
    with pytest.raises(PreconditionError):
        small_perturbation_sw(ctx, case.a, False)
    with pytest.raises(PreconditionError):
        small_perturbation_sw(ctx, case.K.lattice.H(), True)


def test_negative_dimension_vanishes():
    lattice = constructions.CP2_13
    K = lattice.class_of([3] + [-1] * 11 + [-3, -3])
    ctx = SWContext(16, -12, K, lattice.H())
    assert ctx.dimension() == -4
    assert small_perturbation_sw(ctx, constructions.A1, False) == 0


@pytest.mark.parametrize("b_minus, unique", [(0, True), (9, True), (10, False), (13, False)])
def test_unique_chamber(b_minus, unique):
    assert unique_chamber(b_minus) == unique


def test_unique_chamber_domain():
    with pytest.raises(DomainError):
        unique_chamber(-1)


def test_dimension_after_blowdown():
    assert dimension_after_blowdown(-4, Fraction(-4), constructions.PLANS["X1'"][0]) == 0
    assert dimension_after_blowdown(-5, Fraction(-6), constructions.PLANS["X2'"][0]) == 0
    with pytest.raises(InconsistencyError):
        dimension_after_blowdown(-4, Fraction(-7, 2), constructions.PLANS["X1'"][0])


def test_class_conditions_one(p1_in_cp2_13):
    report = class_condition_report(
        constructions.A1, constructions.K1, constructions.CP2_13.H(), p1_in_cp2_13
    )
    assert (report.a_sq, report.h_a, report.k_a, report.restrictions) == (1, 6, -1, (0, 0, 0, 0))
    assert report.ok
    assert report.lines() == [
        "a.a >= 0: 1: PASS",
        "H.a > 0: 6: PASS",
        "K.a < 0: -1: PASS",
        "a|P = 0: [0, 0, 0, 0]: PASS",
    ]
    assert report.to_json()["pass"] is True


def test_class_conditions_two():
    report = class_condition_report(
        constructions.A2,
        constructions.K2,
        constructions.CP2_14.H(),
        constructions.construction_two_orthogonal(),
    )
    assert (report.a_sq, report.h_a, report.k_a) == (2, 7, -2)
    assert report.restrictions == (0,) * 6
    assert report.ok


def test_failing_condition(p1_in_cp2_13):
    report = class_condition_report(
        constructions.CP2_13.H(), constructions.K1, constructions.CP2_13.H(), p1_in_cp2_13
    )
    assert not report.ok
    assert "K.a < 0: 3: FAIL" in report.lines()


def test_chamber_sweep():
    result = chamber_sweep()
    assert result.ok
    assert result.admissible > 0
    assert result.vectors >= result.admissible


def test_small_chamber_sweep():
    result = chamber_sweep(b_max=0, coefficient_bound=3)
    assert (result.orbits, result.vectors, result.admissible) == (4, 4, 2)


def test_sweep_past_nine_blowups():
    result = chamber_sweep(b_max=10, coefficient_bound=3)
    assert not result.ok
    assert (3,) + (1,) * 10 in result.violations
    with pytest.raises(DomainError):
        chamber_sweep(b_max=-1)


def test_canonical_class_of_cp2_9_sits_on_the_boundary():
    lattice = BlowupLattice.rational_surface(9)
    K = lattice.class_of([3] + [-1] * 9)
    assert K.square() == 0
    assert formal_dimension(K.square(), -8, 12) == 0


def test_wall_cross_property():
    assert run_suite("wall-cross-involution", cases=1000, seed=3).ok
