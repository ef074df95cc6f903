from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .errors import DomainError, UnsupportedGraphError
from .plumbing import PlumbingGraph


@dataclass(frozen=True)
class SeifertData:
    # M(e0; (a1, b1), ...)
    e0: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for alpha, beta in pairs:
            if alpha <= 0:
                raise DomainError(f"alpha must be positive in pair ({alpha}, {beta})")
            if gcd(alpha, beta) != 1:
                raise DomainError(f"pair ({alpha}, {beta}) is not coprime")

    def to_json(self) -> dict:
        return {"e0": self.e0, "pairs": [list(p) for p in self.pairs]}

    def __str__(self):
        inner = ",".join(f"({a},{b})" for a, b in self.pairs)
        return f"M({self.e0};{inner})"


def neg_cont_frac(p: int, q: int) -> list[int]:
    """Expansion p/q = a1 - 1/(a2 - 1/(... - 1/ak)) with every ai >= 2."""
    if not (p > q >= 1) or gcd(p, q) != 1:
        raise DomainError(f"need p > q >= 1 coprime, got ({p}, {q})")
    terms = []
    while q != 0:
        a = -(-p // q)  # ceiling
        terms.append(a)
        p, q = q, a * q - p
    return terms


def evaluate_cont_frac(terms: list[int]) -> Fraction:
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        value = a - 1 / value
    return value


def normalize(d: SeifertData) -> SeifertData:
    # (1,1) carries the integral part; remaining pairs have 0 < beta < alpha
    integral = d.e0
    reduced = []
    for alpha, beta in d.pairs:
        integral += beta // alpha
        if alpha > 1:
            reduced.append((alpha, beta % alpha))
    return SeifertData(integral - 1, tuple([(1, 1)] + sorted(reduced)))


def euler_number(d: SeifertData) -> Fraction:
    return -(d.e0 + sum(Fraction(beta, alpha) for alpha, beta in d.pairs))


def h1_order_from_seifert(d: SeifertData) -> int:
    e = euler_number(d)
    if e == 0:
        raise DomainError(f"{d} has Euler number 0, so H1 is infinite")
    order = prod(alpha for alpha, _ in d.pairs) * e
    assert order.denominator == 1, f"non-integral H1 order {order} for {d}"
    return abs(order.numerator)


def seifert_to_plumbing(d: SeifertData) -> PlumbingGraph:
    """Star-shaped plumbing: center -(e0 + #arms + 1), one arm per pair with alpha > 1.

    An arm (alpha, beta) carries the weights -neg_cont_frac(alpha, alpha - beta),
    listed center-outward. The data is normalized first.
    """
    d = normalize(d)
    arms = [[-a for a in neg_cont_frac(alpha, alpha - beta)] for alpha, beta in d.pairs if alpha > 1]
    return PlumbingGraph.star(-(d.e0 + len(arms) + 1), arms)


def _star_center(g: PlumbingGraph) -> int:
    if not g.is_tree():
        raise UnsupportedGraphError("only star-shaped trees correspond to Seifert data")
    branch_points = [v for v in range(g.num_vertices()) if g.degree(v) > 2]
    if len(branch_points) > 1:
        raise UnsupportedGraphError(f"graph has {len(branch_points)} branch vertices, not star-shaped")
    return branch_points[0] if branch_points else 0


def plumbing_to_seifert(g: PlumbingGraph) -> SeifertData:
    center = _star_center(g)
    weights = g.weights
    pairs = []
    for first in g.neighbors(center):
        arm = []
        previous, current = center, first
        while True:
            arm.append(-weights[current])
            following = [v for v in g.neighbors(current) if v != previous]
            if not following:
                break
            previous, current = current, following[0]
        if any(a < 2 for a in arm):
            raise UnsupportedGraphError(f"arm weights {[-a for a in arm]} are not all <= -2")
        value = evaluate_cont_frac(arm)
        alpha = value.numerator
        pairs.append((alpha, alpha - value.denominator))
    e0 = -weights[center] - 1 - len(pairs)
    return SeifertData(e0, tuple([(1, 1)] + sorted(pairs)))
