"""Seeded randomized property suites, shared by the test suite and the repro manifest."""

import logging
import random
from dataclasses import dataclass
from typing import Callable

from .configuration import blow_up_at, smooth_intersection
from .lattice import (
    BlowupLattice,
    HomologyClass,
    SymmetricForm,
    determinant,
    pair,
    signature_stats,
    smith_normal_form,
)
from .monodromy import MonodromyWord, evaluate
from .swcalc import wall_cross

logger = logging.getLogger(__name__)

DEFAULT_CASES = 1000


@dataclass(frozen=True)
class PropertyResult:
    name: str
    cases: int
    failures: int
    first_failure: str | None

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _random_lattice(rng: random.Random, max_rank: int = 15) -> BlowupLattice:
    positive = rng.randint(0, 1)
    return BlowupLattice(positive, rng.randint(1 - positive, max_rank - positive))


def _random_class(rng: random.Random, lattice: BlowupLattice, bound: int = 5) -> HomologyClass:
    return lattice.class_of(rng.randint(-bound, bound) for _ in range(lattice.rank))


def _random_form(rng: random.Random, size: int, bound: int = 6) -> SymmetricForm:
    m = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            m[i][j] = m[j][i] = rng.randint(-bound, bound)
    return SymmetricForm(tuple(tuple(row) for row in m))


def _bilinearity(rng: random.Random) -> str | None:
    lattice = _random_lattice(rng)
    x, y, z = (_random_class(rng, lattice) for _ in range(3))
    s, t = rng.randint(-7, 7), rng.randint(-7, 7)
    if pair(s * x + t * y, z) != s * pair(x, z) + t * pair(y, z):
        return f"linearity fails for {x}, {y}, {z}, s={s}, t={t}"
    if pair(x, y) != pair(y, x):
        return f"symmetry fails for {x}, {y}"
    return None


def _characteristic_congruence(rng: random.Random) -> str | None:
    lattice = BlowupLattice.rational_surface(rng.randint(0, 15))
    K = lattice.class_of(2 * rng.randint(-4, 3) + 1 for _ in range(lattice.rank))
    x = _random_class(rng, lattice)
    if (pair(K, x) - x.square()) % 2 != 0:
        return f"K.x and x.x differ mod 2 for K = {K}, x = {x}"
    sigma = 1 - lattice.negative_rank
    if (K.square() - sigma) % 8 != 0:
        return f"K^2 = {K.square()} is not sigma = {sigma} mod 8"
    return None


def _snf_divisibility(rng: random.Random) -> str | None:
    Q = _random_form(rng, rng.randint(1, 5))
    divisors = smith_normal_form(Q)
    nonzero = [d for d in divisors if d != 0]
    for a, b in zip(nonzero, nonzero[1:]):
        if b % a != 0:
            return f"divisors {divisors} of {Q.to_list()} do not form a chain"
    det = determinant(Q)
    if det != 0:
        product = 1
        for d in nonzero:
            product *= d
        if product != abs(det) or len(nonzero) != Q.size:
            return f"divisors {divisors} do not multiply to |det| = {abs(det)}"
    elif len(nonzero) == Q.size:
        return f"singular form {Q.to_list()} has no zero divisor"
    return None


def _signature_congruence(rng: random.Random) -> str | None:
    size = rng.randint(1, 5)
    Q = _random_form(rng, size, bound=4)
    # P^T Q P for a random unimodular P built from elementary row operations
    P = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(rng.randint(0, 6)):
        if size < 2:
            break
        i, j = rng.sample(range(size), 2)
        c = rng.randint(-2, 2)
        for k in range(size):
            P[i][k] += c * P[j][k]
    m = Q.entries
    congruent = SymmetricForm(
        tuple(
            tuple(
                sum(P[a][i] * m[a][b] * P[b][j] for a in range(size) for b in range(size))
                for j in range(size)
            )
            for i in range(size)
        )
    )
    before, after = signature_stats(Q), signature_stats(congruent)
    if before.as_tuple()[:3] != after.as_tuple()[:3] or determinant(Q) != determinant(congruent):
        return f"inertia or determinant changed under congruence of {Q.to_list()}"
    return None


def _blow_up_pairings(rng: random.Random) -> str | None:
    lattice = _random_lattice(rng, max_rank=12)
    x, y = _random_class(rng, lattice), _random_class(rng, lattice)
    m, n = rng.randint(0, 3), rng.randint(0, 3)
    (bx, by), blown = blow_up_at([x, y], [m, n])
    if blown.rank != lattice.rank + 1:
        return f"lattice rank {blown.rank} after blowing up rank {lattice.rank}"
    if pair(x.extend(blown), y.extend(blown)) != pair(x, y):
        return f"extension changed {x}.{y}"
    if pair(bx, by) != pair(x, y) - m * n or bx.square() != x.square() - m * m:
        return f"blow-up with multiplicities {m}, {n} breaks pairings of {x}, {y}"
    if pair(x, y) > 0:
        s = smooth_intersection(x, y)
        if s.square() != x.square() + y.square() + 2 * pair(x, y):
            return f"smoothing square law fails for {x}, {y}"
    return None


def _wall_cross_involution(rng: random.Random) -> str | None:
    minus = rng.randint(-100, 100)
    d = 2 * rng.randint(0, 20)
    plus = wall_cross(minus, d)
    if minus != plus + (-1) ** (d // 2):
        return f"crossing back from {plus} at d = {d} does not give {minus}"
    return None


def _random_word(rng: random.Random) -> MonodromyWord:
    syllables = []
    for _ in range(rng.randint(0, 10)):
        exponent = rng.choice([-3, -2, -1, 1, 2, 3])
        syllables.append((rng.choice("ab"), exponent))
    return MonodromyWord(tuple(syllables))


def _sl2_closure(rng: random.Random) -> str | None:
    w, x = _random_word(rng), _random_word(rng)
    m = evaluate(w)
    if m.m00 * m.m11 - m.m01 * m.m10 != 1:
        return f"{w} evaluates to determinant != 1"
    if not evaluate(w * w.inverse()).is_identity():
        return f"{w} times its inverse is not the identity"
    if evaluate(w.conjugate(x)).trace() != evaluate(x).trace():
        return f"conjugating {x} by {w} changes the trace"
    return None


SUITES: dict[str, Callable[[random.Random], str | None]] = {
    "bilinearity": _bilinearity,
    "characteristic-congruence": _characteristic_congruence,
    "snf-divisibility": _snf_divisibility,
    "signature-congruence": _signature_congruence,
    "blow-up-pairings": _blow_up_pairings,
    "wall-cross-involution": _wall_cross_involution,
    "sl2-closure": _sl2_closure,
}


def run_suite(name: str, cases: int = DEFAULT_CASES, seed: int = 0) -> PropertyResult:
    check = SUITES[name]
    rng = random.Random(f"{name}:{seed}")
    failures = 0
    first = None
    for _ in range(cases):
        message = check(rng)
        if message is not None:
            failures += 1
            first = first or message
    if failures:
        logger.warning("%s: %d of %d cases failed, first: %s", name, failures, cases, first)
    return PropertyResult(name, cases, failures, first)
