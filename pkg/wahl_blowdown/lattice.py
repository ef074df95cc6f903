from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Literal

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as _sympy_snf

from .errors import DimensionError, DomainError

Parity = Literal["even", "odd"]


@dataclass(frozen=True)
class BlowupLattice:
    """The diagonal lattice <1>^p + n<-1> with basis (H, E1, ..., En).

    positive_rank is 0 (n<-1>, the lattice of #n CP2-bar) or 1 (CP2 # n CP2-bar).
    Blow-ups append a new E at the end of the basis.
    """

    positive_rank: int
    negative_rank: int

    def __post_init__(self):
        if self.positive_rank not in (0, 1):
            raise DomainError(f"positive rank must be 0 or 1, got {self.positive_rank}")
        if self.negative_rank < 0:
            raise DomainError(f"negative rank must be >= 0, got {self.negative_rank}")

    @classmethod
    def rational_surface(cls, n: int) -> "BlowupLattice":
        # CP2 # n CP2-bar
        return cls(1, n)

    @classmethod
    def negative_diagonal(cls, n: int) -> "BlowupLattice":
        return cls(0, n)

    @property
    def rank(self) -> int:
        return self.positive_rank + self.negative_rank

    @property
    def signs(self) -> tuple[int, ...]:
        return (1,) * self.positive_rank + (-1,) * self.negative_rank

    @property
    def labels(self) -> tuple[str, ...]:
        return ("H",) * self.positive_rank + tuple(
            f"E{i}" for i in range(1, self.negative_rank + 1)
        )

    def name(self) -> str:
        if self.positive_rank == 1:
            return f"CP2#{self.negative_rank}CP2bar"
        return f"#{self.negative_rank}CP2bar"

    def class_of(self, coefficients: Iterable[int]) -> "HomologyClass":
        return HomologyClass(tuple(coefficients), self)

    def zero(self) -> "HomologyClass":
        return HomologyClass((0,) * self.rank, self)

    def basis_class(self, label: str) -> "HomologyClass":
        index = self.labels.index(label)
        coefficients = [0] * self.rank
        coefficients[index] = 1
        return HomologyClass(tuple(coefficients), self)

    def H(self) -> "HomologyClass":
        return self.basis_class("H")

    def E(self, i: int) -> "HomologyClass":
        return self.basis_class(f"E{i}")

    def class_from_evaluations(self, values: Iterable[int]) -> "HomologyClass":
        # class K with K.b_i = values[i] for every basis element b_i
        values = tuple(values)
        if len(values) != self.rank:
            raise DimensionError(
                f"expected {self.rank} evaluations, got {len(values)}"
            )
        return HomologyClass(tuple(s * v for s, v in zip(self.signs, values)), self)

    def blown_up(self, times: int = 1) -> "BlowupLattice":
        return BlowupLattice(self.positive_rank, self.negative_rank + times)

    def to_json(self) -> dict:
        return {"positive": self.positive_rank, "negative": self.negative_rank}


@dataclass(frozen=True)
class HomologyClass:
    coefficients: tuple[int, ...]
    lattice: BlowupLattice = field(compare=True)

    def __post_init__(self):
        coefficients = tuple(self.coefficients)
        if any(type(c) is not int for c in coefficients):
            raise DomainError(f"class coefficients must be integers: {coefficients}")
        object.__setattr__(self, "coefficients", coefficients)
        if len(coefficients) != self.lattice.rank:
            raise DimensionError(
                f"class has {len(coefficients)} coefficients, lattice {self.lattice.name()} has rank {self.lattice.rank}"
            )

    def _check_same_lattice(self, other: "HomologyClass"):
        if self.lattice != other.lattice:
            raise DimensionError(
                f"classes live on different lattices: {self.lattice.name()} and {other.lattice.name()}"
            )

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        self._check_same_lattice(other)
        return HomologyClass(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients)),
            self.lattice,
        )

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self + (-other)

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(tuple(-a for a in self.coefficients), self.lattice)

    def __rmul__(self, scalar: int) -> "HomologyClass":
        return HomologyClass(tuple(scalar * a for a in self.coefficients), self.lattice)

    def __getitem__(self, label: str) -> int:
        return self.coefficients[self.lattice.labels.index(label)]

    def pair(self, other: "HomologyClass") -> int:
        return pair(self, other)

    def square(self) -> int:
        return pair(self, self)

    def extend(self, lattice: BlowupLattice) -> "HomologyClass":
        # same class seen in a blow-up of its lattice
        if (
            lattice.positive_rank != self.lattice.positive_rank
            or lattice.negative_rank < self.lattice.negative_rank
        ):
            raise DimensionError(
                f"{lattice.name()} is not a blow-up of {self.lattice.name()}"
            )
        padding = (0,) * (lattice.rank - self.lattice.rank)
        return HomologyClass(self.coefficients + padding, lattice)

    def to_list(self) -> list[int]:
        return list(self.coefficients)

    def __str__(self) -> str:
        terms = []
        for c, label in zip(self.coefficients, self.lattice.labels):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            size = "" if abs(c) == 1 else str(abs(c))
            terms.append(f"{sign} {size}{label}")
        if not terms:
            return "0"
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def pair(x: HomologyClass, y: HomologyClass) -> int:
    if x.lattice != y.lattice:
        raise DimensionError(
            f"cannot pair classes on {x.lattice.name()} and {y.lattice.name()}"
        )
    return sum(s * a * b for s, a, b in zip(x.lattice.signs, x.coefficients, y.coefficients))


def is_characteristic(K: HomologyClass) -> bool:
    # on a diagonal unimodular lattice K.b = +-k_i and b.b = +-1, so every k_i must be odd
    return all(c % 2 == 1 for c in K.coefficients)


@dataclass(frozen=True)
class SymmetricForm:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        for i, row in enumerate(entries):
            if len(row) != n:
                raise DimensionError(f"row {i} has length {len(row)}, expected {n}")
            for j, value in enumerate(row):
                if type(value) is not int:
                    raise DomainError(f"entry ({i},{j}) is not an integer: {value!r}")
        for i in range(n):
            for j in range(i + 1, n):
                if entries[i][j] != entries[j][i]:
                    raise DomainError(f"form is not symmetric at ({i},{j})")

    @classmethod
    def diagonal(cls, values: Iterable[int]) -> "SymmetricForm":
        values = list(values)
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def gram(cls, classes: list[HomologyClass]) -> "SymmetricForm":
        return cls(tuple(tuple(pair(x, y) for y in classes) for x in classes))

    @property
    def size(self) -> int:
        return len(self.entries)

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class SignatureStats:
    b_plus: int
    b_minus: int
    b_zero: int
    parity: Parity

    def as_tuple(self) -> tuple[int, int, int, Parity]:
        return (self.b_plus, self.b_minus, self.b_zero, self.parity)


def _sign(value: int) -> int:
    return (value > 0) - (value < 0)


def signature_stats(Q: SymmetricForm) -> SignatureStats:
    """Inertia of Q by fraction-free congruence diagonalization.

    Each elimination step replaces the trailing block by |p| times its Schur
    complement, which is congruent over Q up to a positive factor.
    """
    m = [list(row) for row in Q.entries]
    n = len(m)
    b_plus = b_minus = b_zero = 0
    for k in range(n):
        if m[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if swap is not None:
                m[k], m[swap] = m[swap], m[k]
                for row in m:
                    row[k], row[swap] = row[swap], row[k]
            else:
                partner = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if partner is not None:
                    # e_k -> e_k + e_partner gives diagonal entry 2 m[k][partner]
                    for i in range(n):
                        m[k][i] += m[partner][i]
                    for i in range(n):
                        m[i][k] += m[i][partner]
        p = m[k][k]
        if p == 0:
            b_zero += 1
            continue
        if p > 0:
            b_plus += 1
        else:
            b_minus += 1
        s = _sign(p)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = abs(p) * m[i][j] - s * m[i][k] * m[k][j]
        for i in range(k + 1, n):
            m[i][k] = m[k][i] = 0
        content = 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                content = gcd(content, m[i][j])
        if content > 1:
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] //= content
    parity: Parity = "even" if all(Q.entries[i][i] % 2 == 0 for i in range(n)) else "odd"
    return SignatureStats(b_plus, b_minus, b_zero, parity)


def determinant(Q: SymmetricForm) -> int:
    # Bareiss fraction-free elimination
    m = [list(row) for row in Q.entries]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(Q: SymmetricForm) -> list[int]:
    # d1 | d2 | ... | dn, zeros last
    if Q.size == 0:
        return []
    if all(v == 0 for row in Q.entries for v in row):
        return [0] * Q.size
    snf = _sympy_snf(Matrix(Q.to_list()), domain=ZZ)
    nonzero = sorted(abs(int(snf[i, i])) for i in range(Q.size) if snf[i, i] != 0)
    # a diagonal form becomes a divisor chain by replacing (d_i, d_j) with (gcd, lcm)
    for i in range(len(nonzero)):
        for j in range(i + 1, len(nonzero)):
            g = gcd(nonzero[i], nonzero[j])
            nonzero[i], nonzero[j] = g, nonzero[i] * nonzero[j] // g
    return nonzero + [0] * (Q.size - len(nonzero))


def solve_rational(Q: SymmetricForm, rhs: Iterable[int]) -> list[Fraction]:
    rhs = list(rhs)
    if len(rhs) != Q.size:
        raise DimensionError(f"right hand side has length {len(rhs)}, form has size {Q.size}")
    if determinant(Q) == 0:
        raise DomainError("form is degenerate, cannot solve")
    solution = Matrix(Q.to_list()).LUsolve(Matrix(rhs))
    return [Fraction(int(v.p), int(v.q)) for v in solution]
