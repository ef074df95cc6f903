import json
from pathlib import Path
from typing import Any

from .configuration import SphereConfiguration
from .cutpaste import BlowdownPlan, ClosedManifoldModel
from .errors import InputError, WahlBlowdownError
from .lattice import BlowupLattice, HomologyClass
from .monodromy import Fiber, FibrationCensus, MonodromyWord
from .plumbing import (
    CompactPieceInvariants,
    PlumbingGraph,
    boundary_h1,
    plumbed_invariants,
    rational_ball_invariants,
)
from .seifert import SeifertData


def read_json(path: Path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise InputError(f"{path}: cannot read file ({e.strerror})") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    except UnicodeDecodeError as e:
        raise InputError(f"{path}: not UTF-8 text (byte {e.start})") from None


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _field(data: Any, key: str, where: str) -> Any:
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object, got {type(data).__name__}")
    if key not in data:
        raise InputError(f"{where}: missing field '{key}'")
    return data[key]


def _int(value: Any, where: str) -> int:
    # exact integers only: bools and floats are rejected
    if type(value) is not int:
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _bool(value: Any, where: str) -> bool:
    if type(value) is not bool:
        raise InputError(f"{where}: expected true or false, got {value!r}")
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list, got {value!r}")
    return value


def _int_list(value: Any, where: str) -> list[int]:
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(_list(value, where))]


def _building(where: str, build):
    # domain errors raised while building objects from valid json are input errors too
    try:
        return build()
    except InputError:
        raise
    except WahlBlowdownError as e:
        raise InputError(f"{where}: {e}") from None


def graph_from_json(data: Any, where: str = "graph") -> PlumbingGraph:
    vertices = []
    for i, v in enumerate(_list(_field(data, "vertices", where), f"{where}.vertices")):
        at = f"{where}.vertices[{i}]"
        vertices.append((_int(_field(v, "id", at), f"{at}.id"), _int(_field(v, "weight", at), f"{at}.weight")))
    edges = []
    for i, e in enumerate(_list(_field(data, "edges", where), f"{where}.edges")):
        pair = _int_list(e, f"{where}.edges[{i}]")
        if len(pair) != 2:
            raise InputError(f"{where}.edges[{i}]: an edge has exactly two endpoints")
        edges.append((pair[0], pair[1]))
    return _building(where, lambda: PlumbingGraph.from_ids(vertices, edges))


def read_graph(path: Path) -> PlumbingGraph:
    return graph_from_json(read_json(path), str(path))


def lattice_from_json(data: Any, where: str = "lattice") -> BlowupLattice:
    positive = _int(_field(data, "positive", where), f"{where}.positive")
    negative = _int(_field(data, "negative", where), f"{where}.negative")
    return _building(where, lambda: BlowupLattice(positive, negative))


def class_from_json(data: Any, lattice: BlowupLattice, where: str) -> HomologyClass:
    coefficients = _int_list(data, where)
    return _building(where, lambda: lattice.class_of(coefficients))


def _graph_reference(data: Any, base: Path, where: str) -> PlumbingGraph:
    # a path relative to the referencing file, or an inline graph object
    if isinstance(data, str):
        return read_graph(base / data)
    return graph_from_json(data, where)


def configuration_from_json(data: Any, base: Path = Path("."), where: str = "configuration") -> SphereConfiguration:
    lattice = lattice_from_json(_field(data, "lattice", where), f"{where}.lattice")
    graph = _graph_reference(_field(data, "graph", where), base, f"{where}.graph")
    classes = tuple(
        class_from_json(c, lattice, f"{where}.classes[{i}]")
        for i, c in enumerate(_list(_field(data, "classes", where), f"{where}.classes"))
    )
    return _building(where, lambda: SphereConfiguration(classes, graph, lattice))


def read_configuration(path: Path) -> SphereConfiguration:
    return configuration_from_json(read_json(path), path.parent, str(path))


def seifert_from_json(data: Any, where: str = "seifert") -> SeifertData:
    e0 = _int(_field(data, "e0", where), f"{where}.e0")
    pairs = []
    for i, p in enumerate(_list(_field(data, "pairs", where), f"{where}.pairs")):
        values = _int_list(p, f"{where}.pairs[{i}]")
        if len(values) != 2:
            raise InputError(f"{where}.pairs[{i}]: expected [alpha, beta]")
        pairs.append((values[0], values[1]))
    return _building(where, lambda: SeifertData(e0, tuple(pairs)))


def read_seifert(path: Path) -> SeifertData:
    return seifert_from_json(read_json(path), str(path))


def manifold_from_json(data: Any, where: str = "ambient") -> ClosedManifoldModel:
    e = _int(_field(data, "e", where), f"{where}.e")
    sigma = _int(_field(data, "sigma", where), f"{where}.sigma")
    parity = data.get("parity", "odd")
    if parity not in ("odd", "even"):
        raise InputError(f"{where}.parity: expected 'odd' or 'even', got {parity!r}")
    notes = data.get("notes", [])
    if not isinstance(notes, list) or not all(isinstance(n, str) for n in notes):
        raise InputError(f"{where}.notes: expected a list of strings")
    b1 = _int(data.get("b1", 0), f"{where}.b1")
    simply_connected = _bool(data.get("simply_connected", True), f"{where}.simply_connected")
    return _building(
        where, lambda: ClosedManifoldModel(e, sigma, b1, simply_connected, parity, tuple(notes))
    )


def _piece_from_json(data: Any, where: str) -> CompactPieceInvariants:
    values = {k: _int(_field(data, k, where), f"{where}.{k}") for k in ("e", "sigma", "b1", "b2")}
    try:
        return CompactPieceInvariants(**values)
    except AssertionError as e:
        raise InputError(f"{where}: {e}") from None


def plan_from_json(data: Any, base: Path = Path("."), where: str = "plan") -> BlowdownPlan:
    """Plan with an ambient manifold and the graph of the piece to replace.

    Piece and boundary invariants are computed from the graph; the ball
    defaults to a rational ball.
    """
    ambient = manifold_from_json(_field(data, "ambient", where), f"{where}.ambient")
    graph = _graph_reference(_field(data, "graph", where), base, f"{where}.graph")
    ball = (
        _piece_from_json(data["ball"], f"{where}.ball")
        if "ball" in data
        else rational_ball_invariants()
    )
    lspace_flag = _bool(data.get("lspace_flag", True), f"{where}.lspace_flag")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise InputError(f"{where}.name: expected a string")
    piece = _building(where, lambda: plumbed_invariants(graph))
    boundary = _building(where, lambda: boundary_h1(graph))
    return BlowdownPlan(ambient, piece, ball, boundary, lspace_flag, name)


def read_plan(path: Path) -> BlowdownPlan:
    return plan_from_json(read_json(path), path.parent, str(path))


def census_from_json(data: Any, where: str = "census") -> FibrationCensus:
    fibers = []
    for i, f in enumerate(_list(_field(data, "fibers", where), f"{where}.fibers")):
        at = f"{where}.fibers[{i}]"
        kind = _field(f, "kind", at)
        if kind not in ("I", "fishtail"):
            raise InputError(f"{at}.kind: expected 'I' or 'fishtail', got {kind!r}")
        k = _int(f.get("k", 1), f"{at}.k")
        conjugator = f.get("conjugator")
        if conjugator is not None:
            if not isinstance(conjugator, str):
                raise InputError(f"{at}.conjugator: expected a word or null")
            conjugator = _building(at, lambda text=conjugator: MonodromyWord.parse(text))
        fibers.append(_building(at, lambda: Fiber(kind, k, conjugator)))
    return FibrationCensus(tuple(fibers))


def census_to_json(c: FibrationCensus) -> dict:
    return {
        "fibers": [
            {
                "kind": f.kind,
                "k": f.k,
                "conjugator": None if f.conjugator is None else ("" if not f.conjugator.syllables else str(f.conjugator)),
            }
            for f in c.fibers
        ]
    }


def read_census(path: Path) -> FibrationCensus:
    return census_from_json(read_json(path), str(path))
