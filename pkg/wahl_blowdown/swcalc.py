import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial, prod

from .configuration import SphereConfiguration
from .cutpaste import BlowdownPlan, rational_blowdown
from .errors import DomainError, InconsistencyError, PreconditionError
from .lattice import HomologyClass, is_characteristic, pair

logger = logging.getLogger(__name__)

SIGN_NOTE = "sign is conventional: one crossing from the H side to the a side"


def formal_dimension(K_sq: int, sigma: int, e: int) -> int:
    numerator = K_sq - (3 * sigma + 2 * e)
    if numerator % 4 != 0:
        raise InconsistencyError(
            f"K^2 - (3 sigma + 2 e) = {numerator} is not divisible by 4, K is not characteristic here"
        )
    return numerator // 4


def wall_cross(minus: int, d: int) -> int:
    if d < 0 or d % 2 != 0:
        raise PreconditionError(f"wall crossing needs an even d >= 0, got {d}")
    return minus - (-1) ** (d // 2)


@dataclass(frozen=True)
class ChamberedValue:
    minus: int
    plus: int
    d: int

    def __post_init__(self):
        if self.plus != wall_cross(self.minus, self.d):
            raise InconsistencyError(
                f"plus = {self.plus} does not follow from minus = {self.minus} at d = {self.d}"
            )

    @classmethod
    def crossing(cls, minus: int, d: int) -> "ChamberedValue":
        return cls(minus, wall_cross(minus, d), d)


@dataclass(frozen=True)
class SWContext:
    e: int
    sigma: int
    K: HomologyClass
    H: HomologyClass

    def __post_init__(self):
        if not is_characteristic(self.K):
            raise PreconditionError(f"{self.K} is not characteristic")
        if self.H.square() <= 0:
            raise PreconditionError(f"H.H = {self.H.square()} must be positive")

    def dimension(self) -> int:
        return formal_dimension(self.K.square(), self.sigma, self.e)


def wall_between(K: HomologyClass, H: HomologyClass, a: HomologyClass) -> bool:
    if H.square() <= 0:
        raise PreconditionError(f"H.H > 0 fails: H.H = {H.square()}")
    if a.square() < 0:
        raise PreconditionError(f"a.a >= 0 fails: a.a = {a.square()}")
    if pair(H, a) <= 0:
        raise PreconditionError(f"H.a > 0 fails: H.a = {pair(H, a)}")
    k_h, k_a = pair(K, H), pair(K, a)
    return (k_h > 0 and k_a < 0) or (k_h < 0 and k_a > 0)


def small_perturbation_sw(ctx: SWContext, a: HomologyClass, psc_chamber_vanishes: bool) -> int:
    d = ctx.dimension()
    if d < 0 or d % 2 != 0:
        return 0
    if not psc_chamber_vanishes:
        raise PreconditionError("value in the H chamber is unknown, refusing to cross")
    if not wall_between(ctx.K, ctx.H, a):
        raise PreconditionError(f"no wall between H and {a} for K = {ctx.K}")
    value = ChamberedValue.crossing(0, d).plus
    logger.debug("crossed one wall at d = %d: %d (%s)", d, value, SIGN_NOTE)
    return value


def unique_chamber(b_minus: int) -> bool:
    # d(K) >= 0 forces K^2 >= 9 - b_minus >= 0, so K.w keeps its sign on the positive cone
    if b_minus < 0:
        raise DomainError(f"b_minus must be >= 0, got {b_minus}")
    return b_minus <= 9


def dimension_after_blowdown(K_sq: int, restricted_sq: Fraction, plan: BlowdownPlan) -> int:
    # the ball has no H2, so the induced class squares to K^2 minus the restricted square
    new_sq = Fraction(K_sq) - restricted_sq
    if new_sq.denominator != 1:
        raise InconsistencyError(f"induced square {new_sq} is not an integer")
    blown_down = rational_blowdown(plan)
    return formal_dimension(new_sq.numerator, blown_down.sigma, blown_down.e)


@dataclass(frozen=True)
class Condition:
    name: str
    value: object
    passed: bool

    def __str__(self):
        return f"{self.name}: {self.value}: {'PASS' if self.passed else 'FAIL'}"


@dataclass(frozen=True)
class ClassConditionReport:
    a_sq: int
    h_a: int
    k_a: int
    restrictions: tuple[int, ...]

    @property
    def conditions(self) -> list[Condition]:
        return [
            Condition("a.a >= 0", self.a_sq, self.a_sq >= 0),
            Condition("H.a > 0", self.h_a, self.h_a > 0),
            Condition("K.a < 0", self.k_a, self.k_a < 0),
            Condition("a|P = 0", list(self.restrictions), all(r == 0 for r in self.restrictions)),
        ]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)

    def lines(self) -> list[str]:
        return [str(c) for c in self.conditions]

    def to_json(self) -> dict:
        return {
            "a.a": self.a_sq,
            "H.a": self.h_a,
            "K.a": self.k_a,
            "a.S": list(self.restrictions),
            "pass": self.ok,
        }


def class_condition_report(
    a: HomologyClass, K: HomologyClass, H: HomologyClass, cfg: SphereConfiguration
) -> ClassConditionReport:
    return ClassConditionReport(
        a_sq=a.square(),
        h_a=pair(H, a),
        k_a=pair(K, a),
        restrictions=tuple(pair(a, s) for s in cfg.classes),
    )


@dataclass(frozen=True)
class SweepResult:
    b_max: int
    coefficient_bound: int
    orbits: int  # representatives up to signs and permutations of the E coefficients
    vectors: int  # characteristic vectors covered by those representatives
    admissible: int  # vectors with d >= 0
    violations: tuple[tuple[int, ...], ...]  # representatives with d >= 0 and K^2 < 0

    @property
    def ok(self) -> bool:
        return not self.violations


def chamber_sweep(b_max: int = 9, coefficient_bound: int = 7) -> SweepResult:
    """Checks K^2 >= 0 for every characteristic K on CP2 # b CP2-bar with d(K) >= 0.

    Covers b = 0..b_max and all coefficients of absolute value at most
    coefficient_bound. The check is over orbits: K^2 and d(K) only depend on
    the H coefficient and the multiset of |E coefficients|.
    """
    if b_max < 0 or coefficient_bound < 1:
        raise DomainError(f"need b_max >= 0 and coefficient_bound >= 1, got {b_max}, {coefficient_bound}")
    odd = [k for k in range(1, coefficient_bound + 1) if k % 2 == 1]
    orbits = vectors = admissible = 0
    violations = []
    for b in range(b_max + 1):
        sigma, e = 1 - b, 3 + b
        for k0 in range(-coefficient_bound, coefficient_bound + 1):
            if k0 % 2 == 0:
                continue
            for tail in combinations_with_replacement(odd, b):
                orbits += 1
                arrangements = factorial(b) // prod(factorial(c) for c in Counter(tail).values())
                count = arrangements * 2**b
                vectors += count
                K_sq = k0 * k0 - sum(k * k for k in tail)
                if formal_dimension(K_sq, sigma, e) < 0:
                    continue
                admissible += count
                if K_sq < 0:
                    violations.append((k0,) + tail)
    logger.info("chamber sweep: %d orbits, %d vectors, %d with d >= 0", orbits, vectors, admissible)
    return SweepResult(b_max, coefficient_bound, orbits, vectors, admissible, tuple(violations))
