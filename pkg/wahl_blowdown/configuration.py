import logging
from dataclasses import dataclass, field
from typing import Iterator, Literal

from .errors import DimensionError, DomainError, PreconditionError, SearchBudgetExceeded
from .lattice import BlowupLattice, HomologyClass, pair
from .plumbing import PlumbingGraph

logger = logging.getLogger(__name__)

DEFAULT_BOUND = 3
DEFAULT_MAX_NODES = 2_000_000


@dataclass(frozen=True)
class SphereConfiguration:
    classes: tuple[HomologyClass, ...]  # aligned with the graph's vertex order
    graph: PlumbingGraph = field(compare=False)
    lattice: BlowupLattice

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if len(self.classes) != self.graph.num_vertices():
            raise DimensionError(
                f"{len(self.classes)} classes for a graph with {self.graph.num_vertices()} vertices"
            )
        for i, x in enumerate(self.classes):
            if x.lattice != self.lattice:
                raise DimensionError(
                    f"class {i} lives on {x.lattice.name()}, configuration on {self.lattice.name()}"
                )

    def to_json(self) -> dict:
        return {"lattice": self.lattice.to_json(), "classes": [x.to_list() for x in self.classes]}


@dataclass(frozen=True)
class Violation:
    kind: Literal["square", "adjacent", "disjoint", "orthogonal"]
    i: int
    j: int | None
    expected: str
    actual: int

    def __str__(self):
        where = f"vertex {self.i}" if self.j is None else f"vertices {self.i},{self.j}"
        return f"{self.kind}: {where}: expected {self.expected}, got {self.actual}"


@dataclass
class ConfigurationReport:
    violations: list[Violation]
    edge_signs: dict[tuple[int, int], int]  # sign of the pairing on each edge

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [str(v) for v in self.violations]


def check_assignment(
    graph: PlumbingGraph,
    assignment: dict[int, HomologyClass],
    orthogonal_to: tuple[HomologyClass, ...] = (),
) -> ConfigurationReport:
    weights = graph.weights
    violations = []
    edge_signs = {}
    vertices = sorted(assignment)
    for v in vertices:
        if not 0 <= v < graph.num_vertices():
            raise DimensionError(f"vertex {v} is not in the graph")
        square = assignment[v].square()
        if square != weights[v]:
            violations.append(Violation("square", v, None, str(weights[v]), square))
        for a in orthogonal_to:
            value = pair(a, assignment[v])
            if value != 0:
                violations.append(Violation("orthogonal", v, None, f"0 against {a}", value))
    for k, i in enumerate(vertices):
        for j in vertices[k + 1 :]:
            value = pair(assignment[i], assignment[j])
            if graph.has_edge(i, j):
                edge_signs[(i, j)] = value
                if abs(value) != 1:
                    violations.append(Violation("adjacent", i, j, "+-1", value))
            elif value != 0:
                violations.append(Violation("disjoint", i, j, "0", value))
    return ConfigurationReport(violations, edge_signs)


def verify_configuration(c: SphereConfiguration) -> ConfigurationReport:
    return check_assignment(c.graph, dict(enumerate(c.classes)))


def _value_order(bound: int) -> list[int]:
    order = [0]
    for v in range(1, bound + 1):
        order.extend((-v, v))
    return order


class _ConfigurationSearch:
    # vertex-major DFS; coordinates in basis order, values in _value_order
    def __init__(
        self,
        graph: PlumbingGraph,
        lattice: BlowupLattice,
        fixed: dict[int, HomologyClass],
        orthogonal_to: tuple[HomologyClass, ...],
        bound: int,
        max_nodes: int,
    ):
        self.graph = graph
        self.lattice = lattice
        self.fixed = fixed
        self.orthogonal_to = orthogonal_to
        self.bound = bound
        self.max_nodes = max_nodes
        self.order = _value_order(bound)
        self.free = [v for v in range(graph.num_vertices()) if v not in fixed]
        self.nodes = 0

    def run(self) -> dict[int, HomologyClass] | None:
        return self._assign(0, dict(self.fixed))

    def _assign(self, k: int, assigned: dict[int, HomologyClass]) -> dict[int, HomologyClass] | None:
        if k == len(self.free):
            return dict(assigned)
        v = self.free[k]
        constraints = []
        for u, x in assigned.items():
            targets = (-1, 1) if self.graph.has_edge(u, v) else (0,)
            constraints.append((x.coefficients, targets))
        for a in self.orthogonal_to:
            constraints.append((a.coefficients, (0,)))
        for coefficients in self._vectors(self.graph.weights[v], constraints):
            assigned[v] = HomologyClass(coefficients, self.lattice)
            logger.debug("vertex %d <- %s", v, assigned[v])
            result = self._assign(k + 1, assigned)
            if result is not None:
                return result
            del assigned[v]
        return None

    def _vectors(self, weight: int, constraints) -> Iterator[tuple[int, ...]]:
        n = self.lattice.rank
        signs = self.lattice.signs
        start = self.lattice.positive_rank
        # suffix[c][j]: sum of squares of constraint c over the negative coordinates j..n-1
        suffix = []
        for y, _ in constraints:
            tail = [0] * (n + 1)
            for j in range(n - 1, -1, -1):
                tail[j] = tail[j + 1] + (y[j] * y[j] if signs[j] < 0 else 0)
            suffix.append(tail)
        coefficients: list[int] = []
        bound_sq = self.bound * self.bound

        def extend(j: int, partial: list[int], r: int | None) -> Iterator[tuple[int, ...]]:
            self.nodes += 1
            if self.nodes > self.max_nodes:
                raise SearchBudgetExceeded(self.max_nodes)
            if j == n:
                if r == 0 and all(p in t for p, (_, t) in zip(partial, constraints)):
                    yield tuple(coefficients)
                return
            if j >= start:
                if r < 0 or r > bound_sq * (n - j):
                    return
                for c, (p, (_, targets)) in enumerate(zip(partial, constraints)):
                    # Cauchy-Schwarz on the remaining negative coordinates
                    if not any((t - p) * (t - p) <= suffix[c][j] * r for t in targets):
                        return
            for value in self.order:
                if j >= start and value * value > r:
                    continue
                new_partial = [
                    p + signs[j] * value * y[j] for p, (y, _) in zip(partial, constraints)
                ]
                new_r = r - value * value if j >= start else value * value - weight
                coefficients.append(value)
                yield from extend(j + 1, new_partial, new_r)
                coefficients.pop()

        initial = None if start > 0 else -weight
        yield from extend(0, [0] * len(constraints), initial)


def find_configuration(
    g: PlumbingGraph,
    lat: BlowupLattice,
    fixed: dict[int, HomologyClass] | None = None,
    bound: int = DEFAULT_BOUND,
    orthogonal_to: tuple[HomologyClass, ...] = (),
    max_nodes: int = DEFAULT_MAX_NODES,
) -> SphereConfiguration | None:
    """Lexicographically least realization of g in lat with |coefficients| <= bound.

    Coefficient values are ordered 0, -1, 1, -2, 2, ...; vertices are filled
    in vertex order, fixed vertices keep their classes. Returns None when no
    realization exists and raises SearchBudgetExceeded when max_nodes search
    nodes were not enough to decide.
    """
    if bound < 1:
        raise DomainError(f"search bound must be >= 1, got {bound}")
    fixed = dict(fixed or {})
    for v, x in fixed.items():
        if x.lattice != lat:
            raise DimensionError(f"fixed class of vertex {v} is not on {lat.name()}")
    report = check_assignment(g, fixed, tuple(orthogonal_to))
    if not report.ok:
        raise PreconditionError("fixed classes are inconsistent: " + "; ".join(report.lines()))
    search = _ConfigurationSearch(g, lat, fixed, tuple(orthogonal_to), bound, max_nodes)
    assignment = search.run()
    logger.info("configuration search visited %d nodes", search.nodes)
    if assignment is None:
        return None
    return SphereConfiguration(tuple(assignment[v] for v in range(g.num_vertices())), g, lat)


def blow_up_at(
    classes: list[HomologyClass], multiplicities: list[int]
) -> tuple[list[HomologyClass], BlowupLattice]:
    if len(classes) != len(multiplicities):
        raise DimensionError("one multiplicity per class is needed")
    if not classes:
        raise DomainError("blow_up_at needs at least one class")
    lattice = classes[0].lattice
    if any(m < 0 for m in multiplicities):
        raise DomainError(f"multiplicities must be >= 0, got {multiplicities}")
    new_lattice = lattice.blown_up()
    exceptional = new_lattice.E(new_lattice.negative_rank)
    result = []
    for x, m in zip(classes, multiplicities):
        if x.lattice != lattice:
            raise DimensionError("all classes must live on the same lattice")
        result.append(x.extend(new_lattice) - m * exceptional)
    return result, new_lattice


def blow_up(x: HomologyClass, m: int) -> tuple[HomologyClass, BlowupLattice]:
    (blown,), lattice = blow_up_at([x], [m])
    return blown, lattice


def smooth_intersection(x: HomologyClass, y: HomologyClass) -> HomologyClass:
    intersections = pair(x, y)
    if intersections < 1:
        raise PreconditionError(
            f"smoothing needs positive intersections, got {x} . {y} = {intersections}"
        )
    return x + y


@dataclass(frozen=True)
class MarkedClass:
    # class with unresolved ordinary double points
    cls: HomologyClass
    double_points: int

    def resolve(self) -> tuple[HomologyClass, BlowupLattice]:
        current, lattice = self.cls, self.cls.lattice
        for _ in range(self.double_points):
            current, lattice = blow_up(current, 2)
        return current, lattice


def pseudo_section(s: HomologyClass, double_points: int) -> MarkedClass:
    if double_points < 0:
        raise DomainError(f"double point count must be >= 0, got {double_points}")
    return MarkedClass(s, double_points)


@dataclass(frozen=True)
class FiberModel:
    kind: Literal["I", "fishtail"]
    k: int  # number of components for I_k, 1 for a fishtail
    components: tuple[tuple[int, HomologyClass], ...]  # (multiplicity, class)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.k < 1:
            raise DomainError(f"I_k needs k >= 1, got {self.k}")
        if self.kind == "fishtail" and self.k != 1:
            raise DomainError("a fishtail fiber is an I_1 fiber")


def fiber_decomposition_check(f: FiberModel, F: HomologyClass) -> bool:
    if not f.components:
        return False
    total = F.lattice.zero()
    for multiplicity, component in f.components:
        total = total + multiplicity * component
    if total != F:
        return False
    if f.kind == "fishtail" or f.k == 1:
        return len(f.components) == 1
    classes = [c for _, c in f.components]
    if len(classes) != f.k or any(c.square() != -2 for c in classes):
        return False
    if f.k == 2:
        return pair(classes[0], classes[1]) == 2
    for i in range(f.k):
        for j in range(i + 1, f.k):
            consecutive = j == i + 1 or (i == 0 and j == f.k - 1)
            if pair(classes[i], classes[j]) != (1 if consecutive else 0):
                return False
    return True
