import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from .configuration import SphereConfiguration
from .errors import (
    ClassificationError,
    DimensionError,
    HypothesisError,
    InconsistencyError,
    PreconditionError,
    StructureError,
)
from .lattice import HomologyClass, Parity, SymmetricForm, is_characteristic, pair, solve_rational
from .plumbing import BoundaryInvariants, CompactPieceInvariants

logger = logging.getLogger(__name__)

SIMPLY_CONNECTED_NOTE = "simply connected: recorded assumption (Van Kampen argument on the complement), not computed"
LSPACE_NOTE = "boundary is a monopole L-space: recorded assumption for Wahl-type boundaries, not computed"


@dataclass(frozen=True)
class ClosedManifoldModel:
    """Closed oriented 4-manifold known through e, sigma, b1 and the parity of its form.

    simply_connected is never derived; it is an assumption and the reason for
    it is kept in notes.
    """

    e: int
    sigma: int
    b1: int = 0
    simply_connected: bool = True
    parity: Parity = "odd"
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "notes", tuple(self.notes))
        if self.simply_connected and self.b1 != 0:
            raise InconsistencyError(f"simply connected manifold with b1 = {self.b1}")
        if self.b2 < abs(self.sigma):
            raise InconsistencyError(
                f"b2 = {self.b2} is smaller than |sigma| = {abs(self.sigma)} (e = {self.e}, b1 = {self.b1})"
            )
        if (self.b2 + self.sigma) % 2 != 0:
            raise InconsistencyError(f"b2 = {self.b2} and sigma = {self.sigma} differ in parity")

    @property
    def b2(self) -> int:
        # e = 2 - 2 b1 + b2 for a closed connected 4-manifold with b3 = b1
        return self.e - 2 + 2 * self.b1

    @property
    def b_plus(self) -> int:
        return (self.b2 + self.sigma) // 2

    @property
    def b_minus(self) -> int:
        return (self.b2 - self.sigma) // 2

    @classmethod
    def blowup_of_cp2(cls, n: int, notes: tuple[str, ...] = ()) -> "ClosedManifoldModel":
        # CP2 # n CP2-bar
        return cls(e=3 + n, sigma=1 - n, notes=notes)

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "sigma": self.sigma,
            "b1": self.b1,
            "simply_connected": self.simply_connected,
            "parity": self.parity,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class BlowdownPlan:
    ambient: ClosedManifoldModel
    piece: CompactPieceInvariants
    ball: CompactPieceInvariants
    boundary: BoundaryInvariants
    lspace_flag: bool = True
    name: str = ""
    notes: tuple[str, ...] = (LSPACE_NOTE,)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ambient": self.ambient.to_json(),
            "piece": vars(self.piece),
            "ball": vars(self.ball),
            "boundary": {"h1_order": self.boundary.h1_order, "h1_divisors": list(self.boundary.h1_divisors)},
            "lspace_flag": self.lspace_flag,
            "notes": list(self.notes),
        }


def rational_blowdown(plan: BlowdownPlan) -> ClosedManifoldModel:
    # e adds over the boundary (e = 0 there), sigma by Novikov additivity
    if plan.ball.b2 != 0 or plan.ball.b1 != 0:
        raise PreconditionError(
            f"ball must have b1 = b2 = 0, got b1 = {plan.ball.b1}, b2 = {plan.ball.b2}"
        )
    ambient = plan.ambient
    e = ambient.e - plan.piece.e + plan.ball.e
    sigma = ambient.sigma - plan.piece.sigma + plan.ball.sigma
    notes = ambient.notes + tuple(n for n in plan.notes if n not in ambient.notes)
    if ambient.simply_connected and SIMPLY_CONNECTED_NOTE not in notes:
        notes = notes + (SIMPLY_CONNECTED_NOTE,)
    result = ClosedManifoldModel(
        e=e,
        sigma=sigma,
        b1=ambient.b1,
        simply_connected=ambient.simply_connected,
        parity=ambient.parity,
        notes=notes,
    )
    logger.debug("blowdown %s: (%d, %d) -> (%d, %d)", plan.name, ambient.e, ambient.sigma, e, sigma)
    return result


def blowdown_all(ambient: ClosedManifoldModel, plans: list[BlowdownPlan]) -> ClosedManifoldModel:
    # the ambient of each plan is replaced by the result of the previous step
    current = ambient
    for plan in plans:
        current = rational_blowdown(replace(plan, ambient=current))
    return current


def freedman_classify(m: ClosedManifoldModel) -> str:
    if not m.simply_connected:
        raise ClassificationError("classification only applies to simply connected manifolds")
    if m.parity != "odd" or m.b_plus != 1:
        return "unrecognized"
    k = m.e - 3
    if k < 0 or m.sigma != 1 - k:
        return "unrecognized"
    return f"CP2#{k}CP2bar"


def sw_transfer(value: int, plan: BlowdownPlan, d: int, restrictions_agree: bool) -> int:
    if not plan.lspace_flag:
        raise HypothesisError("lspace", "L-space hypothesis unmet")
    if not plan.piece.is_negative_definite():
        raise HypothesisError("piece_negative_definite", "plumbing piece is not negative definite")
    if plan.piece.b1 != 0:
        raise HypothesisError("piece_b1", f"plumbing piece has b1 = {plan.piece.b1}, 0 required")
    if not plan.ball.is_negative_definite():
        raise HypothesisError("ball_negative_definite", "replacement piece is not negative definite")
    if plan.ball.b1 != 0:
        raise HypothesisError("ball_b1", f"replacement piece has b1 = {plan.ball.b1}, 0 required")
    if d < 0:
        raise HypothesisError("dimension", "d ≥ 0 required")
    if not restrictions_agree:
        raise HypothesisError("restrictions", "spin-c structures do not agree on the complement")
    return value


def characteristic_extension_check(
    K: HomologyClass, cfg: SphereConfiguration, ref_cfg: SphereConfiguration
) -> bool:
    # the reference class is 1 on every basis class of ref_cfg.lattice
    if cfg.graph.weights != ref_cfg.graph.weights or cfg.graph.edges != ref_cfg.graph.edges:
        raise StructureError("configurations realize different graphs")
    if K.lattice != cfg.lattice:
        raise DimensionError(f"K lives on {K.lattice.name()}, configuration on {cfg.lattice.name()}")
    if not is_characteristic(K):
        return False
    reference = ref_cfg.lattice.class_of([1] * ref_cfg.lattice.rank)
    return all(
        pair(K, x) == pair(reference, y) for x, y in zip(cfg.classes, ref_cfg.classes)
    )


def restricted_square(k_values: list[int], Q: SymmetricForm) -> Fraction:
    # square of the rational class on the piece whose pairings with the spheres are k_values
    y = solve_rational(Q, k_values)
    return sum((Fraction(k) * v for k, v in zip(k_values, y)), Fraction(0))
