from wahl_blowdown import constructions
from wahl_blowdown.configuration import SphereConfiguration
from wahl_blowdown.lattice import BlowupLattice
from wahl_blowdown.plumbing import PlumbingGraph
from pathlib import Path
import pytest


@pytest.fixture
def TEST_DATA_DIR():
    return (Path(__file__).parent / "data").resolve()


@pytest.fixture
def INSTANCES_DIR():
    return (Path(__file__).parent.parent / "instances").resolve()


@pytest.fixture
def p1() -> PlumbingGraph:
    return constructions.P1


@pytest.fixture
def p2() -> PlumbingGraph:
    return constructions.P2


@pytest.fixture
def p4() -> PlumbingGraph:
    return constructions.P4


@pytest.fixture
def cp2_9() -> BlowupLattice:
    return BlowupLattice.rational_surface(9)


@pytest.fixture
def cp2_13() -> BlowupLattice:
    return BlowupLattice.rational_surface(13)


@pytest.fixture
def p1_in_cp2_13() -> SphereConfiguration:
    # [center, S1, S2, leg]
    return constructions.construction_one()


@pytest.fixture
def p1_reference() -> SphereConfiguration:
    return constructions.reference_p1()


@pytest.fixture
def p2_in_cp2_14() -> SphereConfiguration:
    return constructions.construction_two()
