from dataclasses import dataclass

from .configuration import (
    FiberModel,
    SphereConfiguration,
    blow_up,
    blow_up_at,
    pseudo_section,
    smooth_intersection,
)
from .cutpaste import SIMPLY_CONNECTED_NOTE, BlowdownPlan, ClosedManifoldModel
from .lattice import BlowupLattice, HomologyClass
from .monodromy import FibrationCensus, Fiber, MonodromyWord
from .plumbing import (
    PlumbingGraph,
    boundary_h1,
    plumbed_invariants,
    rational_ball_invariants,
    wahl_tree,
)
from .seifert import SeifertData

P1 = wahl_tree(2)
P2 = wahl_tree(4)
P4 = wahl_tree(6)

SEIFERT = {
    "P1": SeifertData(0, ((1, 1), (3, 2), (3, 2), (3, 2))),
    "P2": SeifertData(0, ((1, 1), (3, 2), (5, 4), (7, 2))),
    # second reading of the P2 data: |H1| = 215 is not a square, so it bounds no rational ball
    "P2-printed": SeifertData(0, ((1, 1), (3, 2), (5, 4), (5, 2))),
    "P4": SeifertData(0, ((1, 1), (3, 2), (7, 6), (11, 2))),
}

CP2_13 = BlowupLattice.rational_surface(13)
CP2_14 = BlowupLattice.rational_surface(14)


def anticanonical(lattice: BlowupLattice) -> HomologyClass:
    # evaluates to 3 on H and 1 on every E
    return lattice.class_from_evaluations([3] + [1] * lattice.negative_rank)


K1 = anticanonical(CP2_13)
K2 = anticanonical(CP2_14)

A1 = CP2_13.class_of([6, -2, -2, 0, -2, -2, -2, -2, -2, -2, -1, 0, -1, -1])
A2 = CP2_14.class_of([7, -3, -2, -2, -2, -2, -2, -2, -2, -2, 0, 0, -1, -1, -2])


@dataclass(frozen=True)
class Fibration:
    lattice: BlowupLattice
    fiber: HomologyClass
    section: HomologyClass
    singular: FiberModel  # the I_k fiber


def _rational_elliptic(rows: list[list[int]]) -> tuple[BlowupLattice, list[HomologyClass], HomologyClass]:
    lattice = BlowupLattice.rational_surface(9)
    return lattice, [lattice.class_of(row) for row in rows], lattice.class_of([3] + [-1] * 9)


def i3_fibration() -> Fibration:
    # I3 fiber A + B + C, section E3
    lattice, (a, b, c), fiber = _rational_elliptic(
        [
            [0, 0, 1, -1, 0, 0, 0, 0, 0, 0],
            [3, -2, -1, 0, -1, -1, -1, -1, -1, -1],
            [0, 1, -1, 0, 0, 0, 0, 0, 0, 0],
        ]
    )
    return Fibration(lattice, fiber, lattice.E(3), FiberModel("I", 3, ((1, a), (1, b), (1, c))))


def i5_fibration() -> Fibration:
    # I5 fiber X1 + ... + X5 in cyclic order, section E2
    lattice, components, fiber = _rational_elliptic(
        [
            [1, -1, -1, -1, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, -1, 0, 0, 0, 0, 0],
            [1, 0, 0, -1, 0, -1, -1, 0, 0, 0],
            [1, -1, 0, 0, 0, 0, 0, -1, -1, 0],
            [0, 1, 0, 0, 0, 0, 0, 0, 0, -1],
        ]
    )
    return Fibration(
        lattice, fiber, lattice.E(2), FiberModel("I", 5, tuple((1, x) for x in components))
    )


def _extend_all(classes: list[HomologyClass], lattice: BlowupLattice) -> list[HomologyClass]:
    return [x.extend(lattice) for x in classes]


def construction_one() -> SphereConfiguration:
    # vertex order [center, S1, S2, leg]; E10 is the fishtail double point,
    # E11 the point B . C, E12 and E13 lie on A
    fibration = i3_fibration()
    a, b, c = (x for _, x in fibration.singular.components)
    fishtail, lattice = blow_up(fibration.fiber, 2)
    a, b, c, section = _extend_all([a, b, c, fibration.section], lattice)
    s1 = smooth_intersection(fishtail, section)
    (b, c), lattice = blow_up_at([b, c], [1, 1])
    a, s1 = _extend_all([a, s1], lattice)
    a, lattice = blow_up(a, 1)
    a, lattice = blow_up(a, 1)
    s1, b, c = _extend_all([s1, b, c], lattice)
    return SphereConfiguration((a, s1, b, c), P1, lattice)


def _two_fishtails_into_section(fibration: Fibration) -> tuple[HomologyClass, BlowupLattice]:
    first, lattice = blow_up(fibration.fiber, 2)
    second, lattice = blow_up(fibration.fiber.extend(lattice), 2)
    section = fibration.section.extend(lattice)
    chain = smooth_intersection(section, first.extend(lattice))
    return smooth_intersection(chain, second), lattice


def construction_two() -> SphereConfiguration:
    # vertex order [center, -5, -3 leg, -2, -2, -3]
    fibration = i5_fibration()
    x1, x2, x3, x4, x5 = (x for _, x in fibration.singular.components)
    g, lattice = _two_fishtails_into_section(fibration)
    x1, x2, x3, x4, x5 = _extend_all([x1, x2, x3, x4, x5], lattice)
    x1, lattice = blow_up(x1, 1)
    x1, lattice = blow_up(x1, 1)
    g, x2, x3, x4, x5 = _extend_all([g, x2, x3, x4, x5], lattice)
    (x4, x5), lattice = blow_up_at([x4, x5], [1, 1])
    x1, g, x2, x3 = _extend_all([x1, g, x2, x3], lattice)
    return SphereConfiguration((x1, g, x5, x2, x3, x4), P2, lattice)


def construction_two_orthogonal() -> SphereConfiguration:
    # lattice only, orthogonal to A2
    rows = [
        [0, 0, -1, 0, 0, 0, 1, 1, -1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, -1, 0, 0, 1, 1, 1, 0, 0, 0, -1],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, -1, 1, 0, 0, 0, 0],
        [0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, -1, -1, 0],
    ]
    return SphereConfiguration(tuple(CP2_14.class_of(r) for r in rows), P2, CP2_14)


def construction_three() -> SphereConfiguration:
    fibration = i5_fibration()
    x1, x2, x3, x4, x5 = (x for _, x in fibration.singular.components)
    g, lattice = pseudo_section(fibration.section, 1).resolve()
    x1, x2, x3, x4, x5 = _extend_all([x1, x2, x3, x4, x5], lattice)
    (x4, x5), lattice = blow_up_at([x4, x5], [1, 1])
    x1, x2, x3, g = _extend_all([x1, x2, x3, g], lattice)
    x1, lattice = blow_up(x1, 1)
    x1, lattice = blow_up(x1, 1)
    g, x2, x3, x4, x5 = _extend_all([g, x2, x3, x4, x5], lattice)
    return SphereConfiguration((x1, g, x5, x2, x3, x4), P2, lattice)


def reference_p1() -> SphereConfiguration:
    lattice = BlowupLattice.negative_diagonal(4)
    rows = [[1, 1, 1, -1], [1, -1, 0, 1], [-1, 0, 1, 1], [0, 1, -1, 1]]
    return SphereConfiguration(tuple(lattice.class_of(r) for r in rows), P1, lattice)


def reference_p2() -> SphereConfiguration:
    lattice = BlowupLattice.negative_diagonal(6)
    rows = [
        [1, 0, 0, 1, 1, -1],
        [1, 1, 1, 0, -1, 1],
        [0, 0, 0, -1, 1, 1],
        [1, -1, 0, 0, 0, 0],
        [0, 1, -1, 0, 0, 0],
        [0, 0, -1, 1, 0, 1],
    ]
    return SphereConfiguration(tuple(lattice.class_of(r) for r in rows), P2, lattice)


def _plan(name: str, blowups: int, tree: PlumbingGraph, notes: tuple[str, ...] = ()) -> BlowdownPlan:
    ambient = ClosedManifoldModel.blowup_of_cp2(blowups, notes=(SIMPLY_CONNECTED_NOTE,) + notes)
    return BlowdownPlan(
        ambient=ambient,
        piece=plumbed_invariants(tree),
        ball=rational_ball_invariants(),
        boundary=boundary_h1(tree),
        name=name,
    )


KNOT_SURGERY_NOTE = "knot surgery along a fiber: changes neither e nor sigma"

# name -> (plan, k of the expected CP2 # k CP2-bar)
PLANS: dict[str, tuple[BlowdownPlan, int]] = {
    "X1'": (_plan("X1'", 13, P1), 9),
    "X2'": (_plan("X2'", 14, P2), 8),
    "X3'": (_plan("X3'", 13, P2, (KNOT_SURGERY_NOTE,)), 7),
    'X3"': (_plan('X3"', 15, P4), 7),
    "X4'": (_plan("X4'", 14, P4, (KNOT_SURGERY_NOTE,)), 6),
}


def _fishtail(letters: str) -> Fiber:
    return Fiber("fishtail", 1, MonodromyWord.of(letters))


def i3_certificate() -> FibrationCensus:
    # (a^3 b)^3 with each b written as (ab) a (ab)^-1
    fibers = [Fiber("I", 3)]
    for last in range(3):
        fibers.append(_fishtail("ab"))
        if last < 2:
            fibers.extend(_fishtail("") for _ in range(3))
    return FibrationCensus(tuple(fibers))


def i5_certificate() -> FibrationCensus:
    # a^5 (a^-2 b a^2) a b a a a b
    return FibrationCensus(
        (
            Fiber("I", 5),
            _fishtail("Ab"),
            _fishtail(""),
            _fishtail("ab"),
            _fishtail(""),
            _fishtail(""),
            _fishtail(""),
            _fishtail("ab"),
        )
    )


def i7_certificate() -> FibrationCensus:
    # a^7 (a^-4 b a^4) (a^-1 b a) a a b
    return FibrationCensus(
        (
            Fiber("I", 7),
            _fishtail("AAAb"),
            _fishtail("b"),
            _fishtail(""),
            _fishtail(""),
            _fishtail("ab"),
        )
    )


@dataclass(frozen=True)
class SWCase:
    name: str
    ambient_blowups: int
    K: HomologyClass
    a: HomologyClass
    configuration: SphereConfiguration  # the piece a must vanish on
    geometric: SphereConfiguration  # the piece K is evaluated on
    reference: SphereConfiguration
    plan: str

    @property
    def e(self) -> int:
        return 3 + self.ambient_blowups

    @property
    def sigma(self) -> int:
        return 1 - self.ambient_blowups


def sw_cases() -> dict[str, SWCase]:
    one = construction_one()
    return {
        "one": SWCase("one", 13, K1, A1, one, one, reference_p1(), "X1'"),
        "two": SWCase(
            "two", 14, K2, A2, construction_two_orthogonal(), construction_two(), reference_p2(), "X2'"
        ),
    }
