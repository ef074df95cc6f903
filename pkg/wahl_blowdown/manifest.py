import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Literal

from sympy import Matrix

from . import constructions
from .configuration import blow_up, find_configuration, smooth_intersection, verify_configuration
from .cutpaste import characteristic_extension_check, freedman_classify, rational_blowdown, restricted_square
from .errors import InputError, WahlBlowdownError
from .formats import read_graph, read_json
from .lattice import BlowupLattice, determinant, pair, smith_normal_form
from .monodromy import MonodromyWord, SL2Matrix, euler_count, evaluate, verify_certificate, verify_relation
from .plumbing import PlumbingGraph, boundary_h1, intersection_form, is_negative_definite, wahl_tree
from .properties import DEFAULT_CASES, SUITES, run_suite
from .seifert import h1_order_from_seifert, normalize, plumbing_to_seifert, seifert_to_plumbing
from .swcalc import (
    SWContext,
    chamber_sweep,
    class_condition_report,
    dimension_after_blowdown,
    formal_dimension,
    small_perturbation_sw,
    wall_between,
)

logger = logging.getLogger(__name__)

Provenance = Literal["STATED", "DERIVED", "TRIVIAL"]
# tags accepted in manifest files, mapped onto Provenance
PROVENANCE_TAGS = {"STATED": "STATED", "PAPER": "STATED", "DERIVED": "DERIVED", "TRIVIAL": "TRIVIAL"}

GRAPHS: dict[str, PlumbingGraph] = {"P1": constructions.P1, "P2": constructions.P2, "P4": constructions.P4}
CENSUSES = {
    "I3": constructions.i3_certificate,
    "I5": constructions.i5_certificate,
    "I7": constructions.i7_certificate,
}


@dataclass(frozen=True)
class ManifestCheck:
    name: str
    anchor: str  # where the claim is stated
    provenance: Provenance
    operation: str
    inputs: dict = field(default_factory=dict)
    expected: Any = True


@dataclass(frozen=True)
class CheckResult:
    check: ManifestCheck
    actual: Any
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.actual == self.check.expected

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        shown = self.error if self.error is not None else self.actual
        return f"[{self.check.provenance}] {self.check.name} ({self.check.anchor}): {status}: {shown}"

    def to_json(self) -> dict:
        return {
            "name": self.check.name,
            "anchor": self.check.anchor,
            "provenance": self.check.provenance,
            "expected": self.check.expected,
            "actual": self.actual,
            "error": self.error,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class ReproManifest:
    checks: tuple[ManifestCheck, ...]
    base: Path = Path(".")  # graph paths are relative to this directory

    def __post_init__(self):
        for check in self.checks:
            if not check.anchor:
                raise InputError(f"check {check.name} has no anchor")
            if check.operation not in OPERATIONS:
                raise InputError(f"check {check.name} uses unknown operation {check.operation!r}")

    def run(self) -> list[CheckResult]:
        results = []
        for check in self.checks:
            try:
                actual = OPERATIONS[check.operation](check.inputs, self.base)
                results.append(CheckResult(check, actual))
            except (WahlBlowdownError, KeyError, TypeError) as e:
                results.append(CheckResult(check, None, f"{type(e).__name__}: {e}"))
            logger.debug(results[-1].line())
        return results


def _graph(inputs: dict, base: Path) -> PlumbingGraph:
    name = inputs["graph"]
    return GRAPHS[name] if name in GRAPHS else read_graph(base / name)


def _snf(inputs, base):
    g = _graph(inputs, base)
    return {"order": boundary_h1(g).h1_order, "snf": smith_normal_form(intersection_form(g))}


def _wahl_order(inputs, base):
    # Bareiss determinant against an independent sympy determinant
    Q = intersection_form(wahl_tree(inputs["r"]))
    ours = abs(determinant(Q))
    theirs = abs(int(Matrix(Q.to_list()).det()))
    return ours if ours == theirs else [ours, theirs]


def _negative_definite(inputs, base):
    return is_negative_definite(_graph(inputs, base))


def _blowdown(inputs, base):
    plan, _ = constructions.PLANS[inputs["plan"]]
    result = rational_blowdown(plan)
    return {"e": result.e, "sigma": result.sigma, "name": freedman_classify(result)}


def _class_conditions(inputs, base):
    case = constructions.sw_cases()[inputs["case"]]
    report = class_condition_report(case.a, case.K, case.configuration.lattice.H(), case.configuration)
    return [report.a_sq, report.h_a, report.k_a, list(report.restrictions)]


def _formal_dimension(inputs, base):
    return formal_dimension(inputs["K_sq"], inputs["sigma"], inputs["e"])


def _case_dimension(inputs, base):
    case = constructions.sw_cases()[inputs["case"]]
    return SWContext(case.e, case.sigma, case.K, case.K.lattice.H()).dimension()


def _wall(inputs, base):
    case = constructions.sw_cases()[inputs["case"]]
    return wall_between(case.K, case.K.lattice.H(), case.a)


def _sw_magnitude(inputs, base):
    case = constructions.sw_cases()[inputs["case"]]
    ctx = SWContext(case.e, case.sigma, case.K, case.K.lattice.H())
    return abs(small_perturbation_sw(ctx, case.a, psc_chamber_vanishes=True))


def _dimension_unchanged(inputs, base):
    case = constructions.sw_cases()[inputs["case"]]
    k_values = [pair(case.K, s) for s in case.geometric.classes]
    restricted = restricted_square(k_values, intersection_form(case.geometric.graph))
    plan, _ = constructions.PLANS[case.plan]
    before = formal_dimension(case.K.square(), case.sigma, case.e)
    after = dimension_after_blowdown(case.K.square(), restricted, plan)
    return [before, after]


def _characteristic_extension(inputs, base):
    case = constructions.sw_cases()[inputs["case"]]
    return characteristic_extension_check(case.K, case.geometric, case.reference)


def _chamber_sweep(inputs, base):
    return chamber_sweep(inputs.get("b_max", 9), inputs.get("bound", 7)).ok


def _evaluate(inputs, base):
    return evaluate(MonodromyWord.parse(inputs["word"])).rows()


def _relation(inputs, base):
    return verify_relation(MonodromyWord.parse(inputs["lhs"]), MonodromyWord.parse(inputs["rhs"]))


def _a_powers(inputs, base):
    return all(
        evaluate(MonodromyWord((("a", k),))) == SL2Matrix(1, k, 0, 1)
        for k in range(1, inputs.get("max_k", 20) + 1)
    )


def _euler_count(inputs, base):
    return euler_count(CENSUSES[inputs["census"]]())


def _certificate(inputs, base):
    return verify_certificate(CENSUSES[inputs["census"]]())


def _search(inputs, base):
    problem = inputs["problem"]
    if problem == "P1-negative-diagonal":
        found = find_configuration(constructions.P1, BlowupLattice.negative_diagonal(4), bound=1)
    elif problem == "P1-completion":
        one = constructions.construction_one()
        found = find_configuration(
            constructions.P1, one.lattice, fixed={1: one.classes[1], 2: one.classes[2]}, bound=3
        )
    else:
        raise KeyError(problem)
    return found is not None and verify_configuration(found).ok


def _smoothing(inputs, base):
    fibration = constructions.i3_fibration()
    fishtail, lattice = blow_up(fibration.fiber, 2)
    return smooth_intersection(fishtail, fibration.section.extend(lattice)).square()


def _configuration(inputs, base):
    builders = {
        "one": constructions.construction_one,
        "two": constructions.construction_two,
        "two-orthogonal": constructions.construction_two_orthogonal,
        "three": constructions.construction_three,
    }
    return verify_configuration(builders[inputs["construction"]]()).ok


def _seifert_h1(inputs, base):
    return h1_order_from_seifert(constructions.SEIFERT[inputs["seifert"]])


def _seifert_round_trip(inputs, base):
    tree = wahl_tree(inputs["r"])
    data = plumbing_to_seifert(tree)
    return data == normalize(data) and plumbing_to_seifert(seifert_to_plumbing(data)) == data


def _property(inputs, base):
    return run_suite(inputs["suite"], inputs.get("cases", DEFAULT_CASES), inputs.get("seed", 0)).failures


OPERATIONS: dict[str, Callable[[dict, Path], Any]] = {
    "snf": _snf,
    "wahl_order": _wahl_order,
    "negative_definite": _negative_definite,
    "blowdown": _blowdown,
    "class_conditions": _class_conditions,
    "formal_dimension": _formal_dimension,
    "case_dimension": _case_dimension,
    "wall_between": _wall,
    "sw_magnitude": _sw_magnitude,
    "dimension_unchanged": _dimension_unchanged,
    "characteristic_extension": _characteristic_extension,
    "chamber_sweep": _chamber_sweep,
    "evaluate": _evaluate,
    "relation": _relation,
    "a_powers": _a_powers,
    "euler_count": _euler_count,
    "certificate": _certificate,
    "search": _search,
    "smoothing_square": _smoothing,
    "configuration": _configuration,
    "seifert_h1": _seifert_h1,
    "seifert_round_trip": _seifert_round_trip,
    "property": _property,
}

IDENTITY = [[1, 0], [0, 1]]


def default_manifest() -> ReproManifest:
    checks = [
        ManifestCheck(
            "P1 boundary", "boundary of P1 has |H1| = 81", "STATED", "snf",
            {"graph": "P1"}, {"order": 81, "snf": [1, 1, 3, 27]},
        ),
    ]
    for r in (2, 4, 6, 8, 10):
        checks.append(
            ManifestCheck(f"Wahl tree r={r}", "|H1| of the family is (4r+1)^2", "DERIVED", "wahl_order", {"r": r}, (4 * r + 1) ** 2)
        )
    for name in GRAPHS:
        checks.append(
            ManifestCheck(f"{name} negative definite", "blow-down needs a negative definite piece", "DERIVED", "negative_definite", {"graph": name})
        )
    fingerprints = {"X1'": (12, -8), "X2'": (11, -7), "X3'": (10, -6), 'X3"': (10, -6), "X4'": (9, -5)}
    for name, (e, sigma) in fingerprints.items():
        _, k = constructions.PLANS[name]
        checks.append(
            ManifestCheck(
                f"{name} blow-down", f"{name} is homeomorphic to CP2#{k}CP2bar", "STATED", "blowdown",
                {"plan": name}, {"e": e, "sigma": sigma, "name": f"CP2#{k}CP2bar"},
            )
        )
    checks += [
        ManifestCheck("a1 conditions", "a1.a1 >= 0, H.a1 > 0, K1.a1 < 0, a1|P1 = 0", "DERIVED", "class_conditions", {"case": "one"}, [1, 6, -1, [0, 0, 0, 0]]),
        ManifestCheck("a2 conditions", "a2.a2 >= 0, h.a2 > 0, K2.a2 < 0, a2|P2 = 0", "DERIVED", "class_conditions", {"case": "two"}, [2, 7, -2, [0] * 6]),
        ManifestCheck("d(K1)", "d(K1) = 0", "STATED", "case_dimension", {"case": "one"}, 0),
        ManifestCheck("d(K2)", "d(K2) = 0", "DERIVED", "case_dimension", {"case": "two"}, 0),
        ManifestCheck("CP2 dimension", "d = (K^2 - 3 sigma - 2 e) / 4", "DERIVED", "formal_dimension", {"K_sq": 9, "sigma": 1, "e": 3}, 0),
        ManifestCheck("wall H|a1", "a wall separates PD(H) and PD(a1)", "STATED", "wall_between", {"case": "one"}),
        ManifestCheck("wall h|a2", "a wall separates PD(h) and PD(a2)", "DERIVED", "wall_between", {"case": "two"}),
        ManifestCheck("|SW(X1, a1)|", "SW(X1', a1)(K1') = ±1", "STATED", "sw_magnitude", {"case": "one"}, 1),
        ManifestCheck("|SW(X2, a2)|", "SW(X2', a2)(K2') = ±1", "DERIVED", "sw_magnitude", {"case": "two"}, 1),
        ManifestCheck("d unchanged X1'", "the blow-down keeps d", "STATED", "dimension_unchanged", {"case": "one"}, [0, 0]),
        ManifestCheck("d unchanged X2'", "the blow-down keeps d", "DERIVED", "dimension_unchanged", {"case": "two"}, [0, 0]),
        ManifestCheck("K1 extends", "K1 evaluates on P1 like the canonical class of 4 CP2-bar", "STATED", "characteristic_extension", {"case": "one"}),
        ManifestCheck("K2 extends", "K2 evaluates on P2 like the canonical class of 6 CP2-bar", "DERIVED", "characteristic_extension", {"case": "two"}),
        ManifestCheck("unique chamber", "one chamber when b2- <= 9", "STATED", "chamber_sweep", {"b_max": 9, "bound": 7}),
        ManifestCheck("(a^3 b)^3", "(a^3 b)^3 = I", "STATED", "evaluate", {"word": "(a^3 b)^3"}, IDENTITY),
        ManifestCheck("(ab)^6", "(ab)^6 = I", "DERIVED", "evaluate", {"word": "(a b)^6"}, IDENTITY),
        ManifestCheck("b = (ab)a(ab)^-1", "b is the monodromy of a fishtail", "STATED", "relation", {"lhs": "b", "rhs": "(a b) a (a b)^-1"}),
        ManifestCheck("I5 relation", "a^5 (a^-2 b a^2) a b a a a b = I", "STATED", "relation", {"lhs": "a^5 (a^-2 b a^2) a b a a a b", "rhs": ""}),
        ManifestCheck("a^k", "I_k monodromy is [[1,k],[0,1]]", "STATED", "a_powers", {"max_k": 20}),
    ]
    for census in CENSUSES:
        checks.append(ManifestCheck(f"{census} Euler count", f"{census} plus fishtails fill E(1)", "STATED", "euler_count", {"census": census}, 12))
        checks.append(ManifestCheck(f"{census} certificate", f"{census} fibration extends over the sphere", "DERIVED", "certificate", {"census": census}))
    checks += [
        ManifestCheck("P1 in 4 CP2-bar", "P1 embeds in 4 CP2-bar", "STATED", "search", {"problem": "P1-negative-diagonal"}),
        ManifestCheck("P1 completion in CP2#13", "P1 embeds in CP2#13CP2bar", "STATED", "search", {"problem": "P1-completion"}),
        ManifestCheck("-3 leg by smoothing", "((F - 2E10) + E3)^2 = -3", "DERIVED", "smoothing_square", {}, -3),
    ]
    for construction in ("one", "two", "two-orthogonal", "three"):
        checks.append(
            ManifestCheck(f"construction {construction}", "spheres realize the plumbing", "DERIVED", "configuration", {"construction": construction})
        )
    checks.append(ManifestCheck("M(0;(1,1),(3,2)^3)", "Seifert data of the P1 boundary", "DERIVED", "seifert_h1", {"seifert": "P1"}, 81))
    checks.append(ManifestCheck("P2 Seifert", "Seifert data of the P2 boundary", "DERIVED", "seifert_h1", {"seifert": "P2"}, 289))
    for r in (2, 4, 6):
        checks.append(ManifestCheck(f"Seifert round trip r={r}", "plumbing and Seifert data agree", "DERIVED", "seifert_round_trip", {"r": r}))
    for suite in SUITES:
        checks.append(ManifestCheck(f"property {suite}", f"{suite} over random cases", "TRIVIAL", "property", {"suite": suite}, 0))
    return ReproManifest(tuple(checks))


def manifest_from_json(data: Any, base: Path, where: str = "manifest") -> ReproManifest:
    if not isinstance(data, dict) or not isinstance(data.get("checks"), list):
        raise InputError(f"{where}: expected an object with a 'checks' list")
    checks = []
    for i, entry in enumerate(data["checks"]):
        at = f"{where}.checks[{i}]"
        if not isinstance(entry, dict):
            raise InputError(f"{at}: expected an object")
        for key in ("name", "anchor", "provenance", "operation"):
            if not isinstance(entry.get(key), str):
                raise InputError(f"{at}.{key}: expected a string")
        if entry["provenance"] not in PROVENANCE_TAGS:
            raise InputError(f"{at}.provenance: expected one of {', '.join(PROVENANCE_TAGS)}")
        inputs = entry.get("inputs", {})
        if not isinstance(inputs, dict):
            raise InputError(f"{at}.inputs: expected an object")
        checks.append(
            ManifestCheck(
                entry["name"], entry["anchor"], PROVENANCE_TAGS[entry["provenance"]], entry["operation"],
                inputs, entry.get("expected", True),
            )
        )
    return ReproManifest(tuple(checks), base)


def read_manifest(path: Path) -> ReproManifest:
    return manifest_from_json(read_json(path), path.parent, str(path))
