"""Structure constants of a semifield candidate and their verification.

For a basis ``a_1 = 1, a_2, ..., a_n`` of an n-dimensional algebra over
F_2, the cube holds the structure constants: ``cube.word(i, j)`` is the
packed vector ``a_i * a_j``.  The standard basis view stores the matrices
``A_i`` of left multiplication by ``a_i``, so column ``j`` of ``A_i`` is
``a_i * a_j``.  Both views share the same words, which keeps conversion
trivial.

All indices in this module are 0-based: index ``i`` names ``a_{i+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence, Union

from .gf2core import (
    DimensionError,
    GF2Matrix,
    GF2Vector,
    MAX_DIM,
    combine_columns,
    rank_words,
)


@dataclass(frozen=True)
class Cube:
    """Packed 3-cube: ``words[i1 * n + i2]`` is the row ``A_{i1 i2 .}``."""

    n: int
    words: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_DIM:
            raise ValueError(f"dimension must be in 0..{MAX_DIM}, got {self.n}")
        words = tuple(self.words)
        object.__setattr__(self, "words", words)
        if len(words) != self.n * self.n:
            raise DimensionError("cube word count", len(words), self.n * self.n)
        for w in words:
            if w < 0 or w >> self.n:
                raise ValueError(f"cube word {w:#x} does not fit in dimension {self.n}")

    @classmethod
    def zero(cls, n: int) -> Cube:
        return cls(n, (0,) * (n * n))

    def _check(self, *idx: int) -> None:
        for i in idx:
            if not 0 <= i < self.n:
                raise IndexError(f"cube index {i} out of range for dimension {self.n}")

    def word(self, i1: int, i2: int) -> int:
        self._check(i1, i2)
        return self.words[i1 * self.n + i2]

    def entry(self, i1: int, i2: int, i3: int) -> int:
        self._check(i1, i2, i3)
        return self.words[i1 * self.n + i2] >> i3 & 1

    def is_symmetric(self) -> bool:
        n = self.n
        return all(self.words[i * n + j] == self.words[j * n + i] for i in range(n) for j in range(i))


@dataclass(frozen=True)
class StandardBasis:
    """Ordered matrices ``A_1, ..., A_n``; not necessarily verified."""

    n: int
    mats: tuple[GF2Matrix, ...]

    def __post_init__(self):
        mats = tuple(self.mats)
        object.__setattr__(self, "mats", mats)
        if len(mats) != self.n:
            raise DimensionError("standard basis matrix count", len(mats), self.n)
        for m in mats:
            if m.n != self.n:
                raise DimensionError("standard basis matrix", m.n, self.n)

    @classmethod
    def from_matrices(cls, mats: Sequence[GF2Matrix]) -> StandardBasis:
        return cls(len(mats), tuple(mats))

    def __getitem__(self, i: int) -> GF2Matrix:
        return self.mats[i]

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[GF2Matrix]:
        return iter(self.mats)


class Condition(str, Enum):
    IDENTITY_MATRIX = "IdentityMatrix"
    SINGULAR_COMBINATION = "SingularCombination"
    UNIT_COLUMN = "UnitColumn"


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    failed_condition: Optional[Condition] = None
    # lambda vector for a singular combination, 0-based matrix index otherwise
    witness: Union[GF2Vector, int, None] = None
    combinations_checked: int = 0

    def __post_init__(self):
        if self.passed != (self.failed_condition is None):
            raise ValueError("passed must hold exactly when no condition failed")

    def __bool__(self) -> bool:
        return self.passed


def cube_from_basis(b: StandardBasis) -> Cube:
    return Cube(b.n, tuple(w for m in b.mats for w in m.columns))


def basis_from_cube(c: Cube) -> StandardBasis:
    n = c.n
    return StandardBasis(n, tuple(GF2Matrix(n, c.words[i * n:(i + 1) * n]) for i in range(n)))


def _check_vec(c: Cube, v: GF2Vector, what: str) -> None:
    if v.n != c.n:
        raise DimensionError(what, c.n, v.n)


def left_mul_words(c: Cube, x: int) -> list[int]:
    """Columns of the left multiplication by the packed element ``x``."""
    n = c.n
    cols = [0] * n
    i = 0
    while x:
        if x & 1:
            base = i * n
            for j in range(n):
                cols[j] ^= c.words[base + j]
        x >>= 1
        i += 1
    return cols


def right_mul_words(c: Cube, y: int) -> list[int]:
    n = c.n
    return [combine_columns(c.words[i * n:(i + 1) * n], y) for i in range(n)]


def mul_bits(c: Cube, x: int, y: int) -> int:
    """Product of packed elements without dimension checks."""
    return combine_columns(left_mul_words(c, x), y)


def multiply(c: Cube, x: GF2Vector, y: GF2Vector) -> GF2Vector:
    _check_vec(c, x, "multiply (left operand)")
    _check_vec(c, y, "multiply (right operand)")
    return GF2Vector(c.n, mul_bits(c, x.bits, y.bits))


def left_mul_matrix(c: Cube, x: GF2Vector) -> GF2Matrix:
    _check_vec(c, x, "left_mul_matrix")
    return GF2Matrix(c.n, tuple(left_mul_words(c, x.bits)))


def right_mul_matrix(c: Cube, y: GF2Vector) -> GF2Matrix:
    _check_vec(c, y, "right_mul_matrix")
    return GF2Matrix(c.n, tuple(right_mul_words(c, y.bits)))


def verify_standard_basis(b: StandardBasis) -> VerificationReport:
    """Check identity first matrix, unit first columns, then every nonzero combination.

    Combinations are visited in Gray-code order, one matrix XOR per step.
    The reported witness is the smallest failing lambda read as an integer,
    so the result does not depend on the visiting order.
    """
    n = b.n
    if n and b.mats[0] != GF2Matrix.identity(n):
        return VerificationReport(False, Condition.IDENTITY_MATRIX, 0)
    for i, m in enumerate(b.mats):
        if m.columns[0] != 1 << i:
            return VerificationReport(False, Condition.UNIT_COLUMN, i)

    mats = [m.columns for m in b.mats]
    current = [0] * n
    worst = None
    total = (1 << n) - 1
    for k in range(1, total + 1):
        flip = (k & -k).bit_length() - 1
        src = mats[flip]
        for j in range(n):
            current[j] ^= src[j]
        if rank_words(current) < n:
            lam = k ^ (k >> 1)
            if worst is None or lam < worst:
                worst = lam
    if worst is not None:
        return VerificationReport(False, Condition.SINGULAR_COMBINATION, GF2Vector(n, worst), total)
    return VerificationReport(True, combinations_checked=total)


def find_zero_divisor(c: Cube) -> Optional[tuple[GF2Vector, GF2Vector]]:
    """First pair of nonzero elements (ordered by x, then y) with product zero."""
    n = c.n
    size = 1 << n
    for x in range(1, size):
        cols = left_mul_words(c, x)
        # Gray-code sweep over y; track the smallest y hitting zero
        prod = 0
        hit = None
        for k in range(1, size):
            prod ^= cols[(k & -k).bit_length() - 1]
            if prod == 0:
                y = k ^ (k >> 1)
                if hit is None or y < hit:
                    hit = y
        if hit is not None:
            return GF2Vector(n, x), GF2Vector(n, hit)
    return None


def verify_no_zero_divisors(c: Cube) -> bool:
    return find_zero_divisor(c) is None


def opposite(c: Cube) -> Cube:
    n = c.n
    return Cube(n, tuple(c.words[j * n + i] for i in range(n) for j in range(n)))


def multiplication_rows(c: Cube) -> Iterator[list[int]]:
    """Rows of the full 2^n x 2^n product table, row ``x`` holding ``x * y`` for each ``y``."""
    size = 1 << c.n
    for x in range(size):
        cols = left_mul_words(c, x)
        row = [0] * size
        for y in range(1, size):
            low = y & -y
            row[y] = row[y ^ low] ^ cols[low.bit_length() - 1]
        yield row
