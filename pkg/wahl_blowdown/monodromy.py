import logging
import re
from dataclasses import dataclass, replace
from itertools import product
from typing import Literal

from .errors import DomainError, InputError, PreconditionError, SearchBudgetExceeded

logger = logging.getLogger(__name__)

DEFAULT_MAX_ASSIGNMENTS = 1_000_000

Letter = Literal["a", "b"]


@dataclass(frozen=True)
class SL2Matrix:
    m00: int
    m01: int
    m10: int
    m11: int

    def __post_init__(self):
        if self.m00 * self.m11 - self.m01 * self.m10 != 1:
            raise DomainError(f"{self.rows()} does not have determinant 1")

    @classmethod
    def identity(cls) -> "SL2Matrix":
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.m11, -self.m01, -self.m10, self.m00)

    def power(self, n: int) -> "SL2Matrix":
        base = self if n >= 0 else self.inverse()
        result = SL2Matrix.identity()
        n = abs(n)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def trace(self) -> int:
        return self.m00 + self.m11

    def is_identity(self) -> bool:
        return self == SL2Matrix.identity()

    def rows(self) -> list[list[int]]:
        return [[self.m00, self.m01], [self.m10, self.m11]]


# monodromy of a fishtail fiber, and its conjugate b = (ab) a (ab)^-1
A = SL2Matrix(1, 1, 0, 1)
B = SL2Matrix(1, 0, -1, 1)
GENERATORS: dict[str, SL2Matrix] = {"a": A, "b": B}


@dataclass(frozen=True)
class MonodromyWord:
    """Word in a, b with nonzero integer exponents, adjacent letters distinct."""

    syllables: tuple[tuple[Letter, int], ...] = ()

    def __post_init__(self):
        merged: list[list] = []
        for letter, exponent in self.syllables:
            if letter not in GENERATORS:
                raise DomainError(f"unknown letter {letter!r}")
            if merged and merged[-1][0] == letter:
                merged[-1][1] += exponent
            else:
                merged.append([letter, exponent])
            if merged[-1][1] == 0:
                merged.pop()
        object.__setattr__(self, "syllables", tuple((l, e) for l, e in merged))

    @classmethod
    def parse(cls, text: str) -> "MonodromyWord":
        return _Parser(text).parse()

    @classmethod
    def of(cls, letters: str) -> "MonodromyWord":
        # one exponent +-1 per character: a, A = a^-1, b, B = b^-1
        return cls(tuple((c.lower(), 1 if c.islower() else -1) for c in letters))

    def __mul__(self, other: "MonodromyWord") -> "MonodromyWord":
        return MonodromyWord(self.syllables + other.syllables)

    def inverse(self) -> "MonodromyWord":
        return MonodromyWord(tuple((l, -e) for l, e in reversed(self.syllables)))

    def power(self, n: int) -> "MonodromyWord":
        base = self if n >= 0 else self.inverse()
        return MonodromyWord(base.syllables * abs(n))

    def conjugate(self, x: "MonodromyWord") -> "MonodromyWord":
        # self x self^-1
        return self * x * self.inverse()

    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(l if e == 1 else f"{l}^{e}" for l, e in self.syllables)


class _Parser:
    # word := item* ; item := atom ('^' int)? ; atom := a | A | b | B | '(' word ')'
    _token = re.compile(r"\s*(?:(?P<letter>[aAbB])|(?P<open>\()|(?P<close>\))|(?P<power>\^\s*-?\d+))")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> MonodromyWord:
        word = self._word()
        if self.text[self.pos :].strip():
            raise InputError(f"unexpected {self.text[self.pos:].strip()[0]!r} at position {self.pos} in {self.text!r}")
        return word

    def _peek(self):
        return self._token.match(self.text, self.pos)

    def _word(self) -> MonodromyWord:
        word = MonodromyWord()
        while True:
            match = self._peek()
            if match is None or match.group("close"):
                return word
            if match.group("power"):
                raise InputError(f"exponent without a base at position {self.pos} in {self.text!r}")
            self.pos = match.end()
            if match.group("letter"):
                atom = MonodromyWord.of(match.group("letter"))
            else:
                atom = self._word()
                closing = self._peek()
                if closing is None or not closing.group("close"):
                    raise InputError(f"missing ')' at position {self.pos} in {self.text!r}")
                self.pos = closing.end()
            exponent = self._peek()
            if exponent is not None and exponent.group("power"):
                self.pos = exponent.end()
                atom = atom.power(int(exponent.group("power")[1:].strip()))
            word = word * atom


def evaluate(w: MonodromyWord) -> SL2Matrix:
    # left-to-right product in the printed order
    result = SL2Matrix.identity()
    for letter, exponent in w.syllables:
        result = result @ GENERATORS[letter].power(exponent)
    return result


def verify_relation(lhs: MonodromyWord, rhs: MonodromyWord) -> bool:
    return evaluate(lhs) == evaluate(rhs)


@dataclass(frozen=True)
class Fiber:
    kind: Literal["I", "fishtail"]
    k: int = 1
    conjugator: MonodromyWord | None = None  # None: not supplied

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"I_k fibers need k >= 1, got {self.k}")
        if self.kind == "fishtail" and self.k != 1:
            raise DomainError("a fishtail fiber has k = 1")

    def monodromy_word(self) -> MonodromyWord:
        if self.kind == "fishtail" and self.conjugator is None:
            raise PreconditionError("fishtail fiber without a conjugator")
        power = MonodromyWord((("a", self.k),))
        return power if self.conjugator is None else self.conjugator.conjugate(power)

    def __str__(self):
        name = "fishtail" if self.kind == "fishtail" else f"I{self.k}"
        return name if self.conjugator is None else f"{name}[{self.conjugator}]"


@dataclass(frozen=True)
class FibrationCensus:
    fibers: tuple[Fiber, ...]

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(self.fibers))

    @classmethod
    def of(cls, k: int, fishtails: int) -> "FibrationCensus":
        # one I_k fiber and some fishtails, no certificate
        return cls((Fiber("I", k),) + tuple(Fiber("fishtail") for _ in range(fishtails)))

    def product_word(self) -> MonodromyWord:
        word = MonodromyWord()
        for fiber in self.fibers:
            word = word * fiber.monodromy_word()
        return word


def euler_count(c: FibrationCensus) -> int:
    return sum(fiber.k for fiber in c.fibers)


def verify_certificate(c: FibrationCensus) -> bool:
    missing = [i for i, f in enumerate(c.fibers) if f.kind == "fishtail" and f.conjugator is None]
    if missing:
        raise PreconditionError(f"fishtail fibers {missing} have no conjugator")
    return evaluate(c.product_word()).is_identity() and euler_count(c) == 12


def _reduced_words(max_length: int) -> list[MonodromyWord]:
    inverse = {"a": "A", "A": "a", "b": "B", "B": "b"}
    words = [""]
    frontier = [""]
    for _ in range(max_length):
        frontier = [w + c for w in frontier for c in "aAbB" if not w or inverse[w[-1]] != c]
        words.extend(frontier)
    return [MonodromyWord.of(w) for w in words]


def complete_certificate(
    c: FibrationCensus, max_length: int = 2, max_nodes: int = DEFAULT_MAX_ASSIGNMENTS
) -> FibrationCensus | None:
    """Fills missing fishtail conjugators with words of length <= max_length.

    Candidates are tried shortest first; the first assignment whose ordered
    product is the identity is returned, None if there is none. Raises
    SearchBudgetExceeded after max_nodes assignments.
    """
    if not 0 <= max_length <= 4:
        raise DomainError(f"conjugator length bound must be in [0, 4], got {max_length}")
    missing = [i for i, f in enumerate(c.fibers) if f.kind == "fishtail" and f.conjugator is None]
    if euler_count(c) != 12:
        logger.info("euler count %d, no certificate possible", euler_count(c))
        return None
    if not missing:
        return c if evaluate(c.product_word()).is_identity() else None
    candidates = _reduced_words(max_length)
    fishtail = MonodromyWord((("a", 1),))
    matrices = [evaluate(w.conjugate(fishtail)) for w in candidates]
    # the product splits into fixed segments around the missing fibers
    segments = []
    start = 0
    for i in missing + [len(c.fibers)]:
        segment = SL2Matrix.identity()
        for fiber in c.fibers[start:i]:
            segment = segment @ evaluate(fiber.monodromy_word())
        segments.append(segment)
        start = i + 1
    tried = 0
    for choice in product(range(len(candidates)), repeat=len(missing)):
        tried += 1
        if tried > max_nodes:
            raise SearchBudgetExceeded(max_nodes)
        total = segments[0]
        for position, index in enumerate(choice):
            total = total @ matrices[index] @ segments[position + 1]
        if total.is_identity():
            fibers = list(c.fibers)
            for i, index in zip(missing, choice):
                fibers[i] = replace(fibers[i], conjugator=candidates[index])
            logger.info("certificate completed after %d assignments", tried)
            return FibrationCensus(tuple(fibers))
    logger.info("no certificate among %d assignments", tried)
    return None
