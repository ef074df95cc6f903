from dataclasses import dataclass

import rustworkx as rx

from .errors import DomainError, StructureError, UnsupportedGraphError
from .lattice import SymmetricForm, determinant, signature_stats, smith_normal_form


@dataclass(frozen=True)
class VertexData:
    id: int  # external id, as used in graph files
    weight: int  # Euler number of the disk bundle


class PlumbingGraph:
    # vertex order is insertion order; never modified after construction

    def __init__(self, weights: list[int], edges: list[tuple[int, int]], ids: list[int] | None = None):
        ids = list(range(len(weights))) if ids is None else list(ids)
        if len(ids) != len(weights):
            raise StructureError("every vertex needs exactly one id")
        if len(set(ids)) != len(ids):
            raise StructureError(f"duplicate vertex ids: {ids}")
        self.g = rx.PyGraph(multigraph=False)
        for vertex_id, weight in zip(ids, weights):
            if type(weight) is not int:
                raise DomainError(f"vertex {vertex_id} has non-integer weight {weight!r}")
            self.g.add_node(VertexData(vertex_id, weight))
        seen = set()
        for i, j in edges:
            if i == j:
                raise StructureError(f"self-loop at vertex {i}")
            if not (0 <= i < len(weights) and 0 <= j < len(weights)):
                raise StructureError(f"edge ({i}, {j}) references a missing vertex")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise StructureError(f"more than one edge between {i} and {j}")
            seen.add(key)
            self.g.add_edge(i, j, None)

    @classmethod
    def from_ids(cls, vertices: list[tuple[int, int]], edges: list[tuple[int, int]]) -> "PlumbingGraph":
        # vertices as (id, weight), edges referencing ids
        index = {}
        for position, (vertex_id, _) in enumerate(vertices):
            if vertex_id in index:
                raise StructureError(f"duplicate vertex id {vertex_id}")
            index[vertex_id] = position
        try:
            local_edges = [(index[i], index[j]) for i, j in edges]
        except KeyError as missing:
            raise StructureError(f"edge references unknown vertex id {missing}") from None
        return cls([w for _, w in vertices], local_edges, [i for i, _ in vertices])

    @classmethod
    def star(cls, center: int, arms: list[list[int]]) -> "PlumbingGraph":
        # center first, then each arm listed center-outward
        weights = [center]
        edges = []
        for arm in arms:
            previous = 0
            for weight in arm:
                weights.append(weight)
                edges.append((previous, len(weights) - 1))
                previous = len(weights) - 1
        return cls(weights, edges)

    @property
    def weights(self) -> list[int]:
        return [self.g[v].weight for v in self.g.node_indices()]

    @property
    def ids(self) -> list[int]:
        return [self.g[v].id for v in self.g.node_indices()]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.g.edge_list())

    def num_vertices(self) -> int:
        return self.g.num_nodes()

    def has_edge(self, i: int, j: int) -> bool:
        return self.g.has_edge(i, j)

    def degree(self, v: int) -> int:
        return self.g.degree(v)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.g.neighbors(v))

    def is_connected(self) -> bool:
        return self.g.num_nodes() > 0 and rx.is_connected(self.g)

    def is_tree(self) -> bool:
        return self.is_connected() and self.g.num_edges() == self.g.num_nodes() - 1

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": self.g[v].id, "weight": self.g[v].weight} for v in self.g.node_indices()],
            "edges": [[self.g[i].id, self.g[j].id] for i, j in self.edges],
        }

    def __repr__(self):
        return f"PlumbingGraph(weights={self.weights}, edges={self.edges})"


@dataclass(frozen=True)
class BoundaryInvariants:
    h1_order: int  # 0 encodes infinite H1
    h1_divisors: tuple[int, ...]


@dataclass(frozen=True)
class CompactPieceInvariants:
    e: int
    sigma: int
    b1: int
    b2: int

    def __post_init__(self):
        assert abs(self.sigma) <= self.b2, f"|sigma| = {abs(self.sigma)} exceeds b2 = {self.b2}"

    def is_negative_definite(self) -> bool:
        return self.sigma == -self.b2


def rational_ball_invariants() -> CompactPieceInvariants:
    return CompactPieceInvariants(e=1, sigma=0, b1=0, b2=0)


def same_tree(g1: PlumbingGraph, g2: PlumbingGraph) -> bool:
    # weighted isomorphism, ignoring vertex order and ids
    return rx.is_isomorphic(g1.g, g2.g, node_matcher=lambda a, b: a.weight == b.weight)


def _require_connected(g: PlumbingGraph):
    if not g.is_connected():
        raise StructureError("plumbing graph must be connected")


def intersection_form(g: PlumbingGraph) -> SymmetricForm:
    _require_connected(g)
    n = g.num_vertices()
    weights = g.weights
    return SymmetricForm(
        tuple(
            tuple(weights[i] if i == j else int(g.has_edge(i, j)) for j in range(n))
            for i in range(n)
        )
    )


def boundary_h1(g: PlumbingGraph) -> BoundaryInvariants:
    Q = intersection_form(g)
    divisors = tuple(d for d in smith_normal_form(Q) if d != 1)
    return BoundaryInvariants(h1_order=abs(determinant(Q)), h1_divisors=divisors)


def is_negative_definite(g: PlumbingGraph) -> bool:
    stats = signature_stats(intersection_form(g))
    return stats.b_plus == 0 and stats.b_zero == 0


def plumbed_invariants(g: PlumbingGraph) -> CompactPieceInvariants:
    if not g.is_tree():
        raise UnsupportedGraphError("plumbed invariants are only computed for trees")
    n = g.num_vertices()
    stats = signature_stats(intersection_form(g))
    # one 0-handle plus one 2-handle per vertex
    return CompactPieceInvariants(e=n + 1, sigma=stats.b_plus - stats.b_minus, b1=0, b2=n)


def wahl_tree(r: int) -> PlumbingGraph:
    """Star-shaped tree with center -4 and arms [-(r+1)], [-3], [-2]*(r-2) + [-3].

    r=2, 4, 6 give the trees P1, P2, P4.
    """
    if type(r) is not int or r < 2 or r % 2 != 0:
        raise DomainError(f"wahl_tree needs an even integer r >= 2, got {r!r}")
    return PlumbingGraph.star(-4, [[-(r + 1)], [-3], [-2] * (r - 2) + [-3]])
