from fractions import Fraction
from wahl_blowdown.errors import DimensionError, DomainError
from wahl_blowdown.lattice import (
    BlowupLattice,
    SymmetricForm,
    determinant,
    is_characteristic,
    pair,
    signature_stats,
    smith_normal_form,
    solve_rational,
)
from wahl_blowdown.properties import run_suite
import pytest


def test_pairing_of_basis(cp2_9):
    H, E1, E2 = cp2_9.H(), cp2_9.E(1), cp2_9.E(2)
    assert pair(H, H) == 1
    assert pair(E1, E1) == -1
    assert pair(E1, E2) == 0
    assert pair(H, E1) == 0


def test_fiber_class_has_square_zero(cp2_9):
    F = 3 * cp2_9.H() - sum((cp2_9.E(i) for i in range(2, 10)), cp2_9.E(1))
    assert F.square() == 0
    assert str(F) == "3H - E1 - E2 - E3 - E4 - E5 - E6 - E7 - E8 - E9"


def test_pairing_across_lattices_fails(cp2_9, cp2_13):
    with pytest.raises(DimensionError):
        pair(cp2_9.H(), cp2_13.H())


def test_class_from_evaluations(cp2_13):
    K = cp2_13.class_from_evaluations([3] + [1] * 13)
    assert K.coefficients == (3,) + (-1,) * 13
    assert pair(K, cp2_13.H()) == 3
    assert all(pair(K, cp2_13.E(i)) == 1 for i in range(1, 14))
    assert K.square() == 9 - 13
    with pytest.raises(DimensionError):
        cp2_13.class_from_evaluations([3, 1])


def test_characteristic():
    lattice = BlowupLattice.rational_surface(13)
    assert is_characteristic(lattice.class_of([3] + [1] * 13))
    assert is_characteristic(lattice.class_of([3] + [-1] * 13))
    assert not is_characteristic(lattice.class_of([2] + [1] * 13))
    assert not is_characteristic(lattice.class_of([3] + [1] * 12 + [0]))


def test_class_validation(cp2_9):
    with pytest.raises(DimensionError):
        cp2_9.class_of([1, 2])
    with pytest.raises(DomainError):
        cp2_9.class_of([1.0] + [0] * 9)


def test_extend_keeps_pairings(cp2_9):
    x, y = cp2_9.H() - cp2_9.E(1), cp2_9.H() + cp2_9.E(3)
    bigger = cp2_9.blown_up(2)
    assert bigger.negative_rank == 11
    assert pair(x.extend(bigger), y.extend(bigger)) == pair(x, y)
    with pytest.raises(DimensionError):
        x.extend(BlowupLattice.negative_diagonal(12))


def test_lattice_validation():
    with pytest.raises(DomainError):
        BlowupLattice(2, 3)
    with pytest.raises(DomainError):
        BlowupLattice(1, -1)


def test_signature_of_cp2_13():
    stats = signature_stats(SymmetricForm.diagonal([1] + [-1] * 13))
    assert stats.as_tuple() == (1, 13, 0, "odd")


def test_signature_of_hyperbolic_plane():
    stats = signature_stats(SymmetricForm(((0, 1), (1, 0))))
    assert stats.as_tuple() == (1, 1, 0, "even")


def test_signature_of_zero_form():
    stats = signature_stats(SymmetricForm(((0, 0), (0, 0))))
    assert stats.as_tuple() == (0, 0, 2, "even")


def test_signature_of_e8():
    # negative definite E8 plumbing: center -2 with arms of length 1, 2, 4
    entries = [[0] * 8 for _ in range(8)]
    for i in range(8):
        entries[i][i] = -2
    for i, j in [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7)]:
        entries[i][j] = entries[j][i] = 1
    Q = SymmetricForm(tuple(tuple(r) for r in entries))
    assert signature_stats(Q).as_tuple() == (0, 8, 0, "even")
    assert determinant(Q) == 1


def test_asymmetric_form_rejected():
    with pytest.raises(DomainError):
        SymmetricForm(((1, 2), (3, 4)))
    with pytest.raises(DimensionError):
        SymmetricForm(((1, 2), (2,)))


def test_determinant_with_zero_pivot():
    assert determinant(SymmetricForm(((0, 1), (1, 0)))) == -1
    assert determinant(SymmetricForm(((0, 0), (0, 0)))) == 0
    assert determinant(SymmetricForm(())) == 1


def test_smith_normal_form():
    assert smith_normal_form(SymmetricForm(((2, 0), (0, 3)))) == [1, 6]
    assert smith_normal_form(SymmetricForm(((0, 0), (0, 0)))) == [0, 0]
    assert smith_normal_form(SymmetricForm(((4, 2), (2, 0)))) == [2, 2]


def test_solve_rational():
    Q = SymmetricForm(((-4, 1), (1, -3)))
    assert solve_rational(Q, [1, 0]) == [Fraction(-3, 11), Fraction(-1, 11)]
    with pytest.raises(DomainError):
        solve_rational(SymmetricForm(((1, 1), (1, 1))), [1, 0])


@pytest.mark.parametrize(
    "suite",
    ["bilinearity", "characteristic-congruence", "snf-divisibility", "signature-congruence"],
)
def test_lattice_properties(suite):
    result = run_suite(suite, cases=1000, seed=7)
    assert result.cases == 1000
    assert result.ok, result.first_failure
