"""Bit-packed linear algebra over GF(2).

A vector of F_2^n is an ``n``-bit integer in which bit ``j`` holds the
coefficient of the basis element ``a_{j+1}``; bit 0 is therefore the
coordinate of the unity ``a_1 = 1``.  The same convention is used by every
module and by the text formats, where the leftmost character of a bit
string is bit 0.

Matrices are stored column-major: ``GF2Matrix.columns[j]`` is column
``j`` as a packed word.  Rows are available as a derived view.  Dimensions
up to ``MAX_DIM`` are supported, which is plenty for semifields of order
up to 2^16.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

MAX_DIM = 16


class DimensionError(ValueError):
    """Operands of incompatible dimension were combined."""

    def __init__(self, what: str, left: int, right: int):
        super().__init__(f"dimension mismatch in {what}: {left} != {right}")
        self.left = left
        self.right = right


def _check_dim(n: int) -> None:
    if not 0 <= n <= MAX_DIM:
        raise ValueError(f"dimension must be in 0..{MAX_DIM}, got {n}")


def bits_to_str(bits: int, n: int) -> str:
    """Render ``bits`` as ``n`` characters, leftmost = coordinate 1."""
    return "".join("1" if bits >> j & 1 else "0" for j in range(n))


def str_to_bits(text: str) -> int:
    """Inverse of :func:`bits_to_str`; the length of ``text`` is the dimension."""
    value = 0
    for j, ch in enumerate(text):
        if ch == "1":
            value |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r} at position {j + 1}")
    return value


@dataclass(frozen=True)
class GF2Vector:
    """An element of F_2^n in packed form."""

    n: int
    bits: int = 0

    def __post_init__(self):
        _check_dim(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} do not fit in dimension {self.n}")

    @classmethod
    def zero(cls, n: int) -> GF2Vector:
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, i: int) -> GF2Vector:
        """The basis vector with a single 1 at 0-based position ``i``."""
        if not 0 <= i < n:
            raise IndexError(f"unit index {i} out of range for dimension {n}")
        return cls(n, 1 << i)

    @classmethod
    def parse(cls, text: str) -> GF2Vector:
        return cls(len(text), str_to_bits(text))

    def __xor__(self, other: GF2Vector) -> GF2Vector:
        if self.n != other.n:
            raise DimensionError("vector addition", self.n, other.n)
        return GF2Vector(self.n, self.bits ^ other.bits)

    __add__ = __xor__

    def __bool__(self) -> bool:
        return self.bits != 0

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return self.bits >> i & 1

    def __iter__(self):
        return (self.bits >> i & 1 for i in range(self.n))

    def support(self) -> list[int]:
        return [i for i in range(self.n) if self.bits >> i & 1]

    def __str__(self) -> str:
        return bits_to_str(self.bits, self.n)


@dataclass(frozen=True)
class GF2Matrix:
    """Square matrix over GF(2), one packed word per column."""

    n: int
    columns: tuple[int, ...]

    def __post_init__(self):
        _check_dim(self.n)
        cols = tuple(self.columns)
        object.__setattr__(self, "columns", cols)
        if len(cols) != self.n:
            raise DimensionError("matrix column count", len(cols), self.n)
        for j, c in enumerate(cols):
            if c < 0 or c >> self.n:
                raise ValueError(f"column {j} = {c:#x} does not fit in dimension {self.n}")

    @classmethod
    def identity(cls, n: int) -> GF2Matrix:
        return cls(n, tuple(1 << j for j in range(n)))

    @classmethod
    def zero(cls, n: int) -> GF2Matrix:
        return cls(n, (0,) * n)

    @classmethod
    def from_columns(cls, cols: Sequence[GF2Vector | int], n: Optional[int] = None) -> GF2Matrix:
        if n is None:
            n = len(cols)
        words = []
        for c in cols:
            if isinstance(c, GF2Vector):
                if c.n != n:
                    raise DimensionError("matrix column", c.n, n)
                c = c.bits
            words.append(c)
        return cls(n, tuple(words))

    @classmethod
    def from_rows(cls, rows: Sequence[str | int]) -> GF2Matrix:
        """Build from rows given as bit strings (leftmost = column 1) or packed words."""
        n = len(rows)
        words = []
        for k, r in enumerate(rows):
            if isinstance(r, str):
                if len(r) != n:
                    raise DimensionError(f"row {k + 1} length", len(r), n)
                r = str_to_bits(r)
            words.append(r)
        return cls(n, transpose_words(words, n))

    def column(self, j: int) -> GF2Vector:
        return GF2Vector(self.n, self.columns[j])

    def rows(self) -> tuple[int, ...]:
        """Row view: word ``k`` has bit ``j`` equal to entry ``(k, j)``."""
        return transpose_words(self.columns, self.n)

    def entry(self, k: int, j: int) -> int:
        """Entry in row ``k``, column ``j`` (both 0-based)."""
        if not (0 <= k < self.n and 0 <= j < self.n):
            raise IndexError((k, j))
        return self.columns[j] >> k & 1

    def transpose(self) -> GF2Matrix:
        return GF2Matrix(self.n, self.rows())

    def is_zero(self) -> bool:
        return not any(self.columns)

    def __xor__(self, other: GF2Matrix) -> GF2Matrix:
        if self.n != other.n:
            raise DimensionError("matrix addition", self.n, other.n)
        return GF2Matrix(self.n, tuple(a ^ b for a, b in zip(self.columns, other.columns)))

    __add__ = __xor__

    def __matmul__(self, other):
        if isinstance(other, GF2Matrix):
            return mat_mul(self, other)
        return mat_vec(self, other)

    def row_strings(self) -> list[str]:
        return [bits_to_str(r, self.n) for r in self.rows()]

    def __str__(self) -> str:
        return "\n".join(self.row_strings())


def transpose_words(words: Sequence[int], n: int) -> tuple[int, ...]:
    out = [0] * n
    for j, w in enumerate(words):
        while w:
            low = w & -w
            out[low.bit_length() - 1] |= 1 << j
            w ^= low
    return tuple(out)


def combine_columns(columns: Sequence[int], v: int) -> int:
    """XOR of ``columns[j]`` over the set bits ``j`` of ``v``."""
    acc = 0
    j = 0
    while v:
        if v & 1:
            acc ^= columns[j]
        v >>= 1
        j += 1
    return acc


def mat_vec(m: GF2Matrix, v: GF2Vector) -> GF2Vector:
    if m.n != v.n:
        raise DimensionError("mat_vec", m.n, v.n)
    return GF2Vector(m.n, combine_columns(m.columns, v.bits))


def mat_mul(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    if a.n != b.n:
        raise DimensionError("mat_mul", a.n, b.n)
    return GF2Matrix(a.n, tuple(combine_columns(a.columns, c) for c in b.columns))


def rank_words(words: Iterable[int]) -> int:
    """Rank of the span of packed words."""
    pivots: dict[int, int] = {}
    for w in words:
        while w:
            top = w.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = w
                break
            w ^= p
    return len(pivots)


def independent(words: Sequence[int]) -> bool:
    return rank_words(words) == len(words)


def rank(m: GF2Matrix) -> int:
    return rank_words(m.columns)


def is_invertible(m: GF2Matrix) -> bool:
    return rank_words(m.columns) == m.n


def inverse(m: GF2Matrix) -> Optional[GF2Matrix]:
    """Gauss-Jordan inverse, or ``None`` when ``m`` is singular."""
    n = m.n
    # row k carries the matrix row in the low n bits and the identity row above it
    rows = [r | (1 << (n + k)) for k, r in enumerate(m.rows())]
    for col in range(n):
        bit = 1 << col
        pivot = next((k for k in range(col, n) if rows[k] & bit), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        for k in range(n):
            if k != col and rows[k] & bit:
                rows[k] ^= prow
    inv_rows = [r >> n for r in rows]
    return GF2Matrix(n, transpose_words(inv_rows, n))


def reduce_against(w: int, basis: dict[int, int]) -> int:
    """Reduce ``w`` by an echelon basis keyed by leading (highest) bit."""
    while w:
        top = w.bit_length() - 1
        p = basis.get(top)
        if p is None:
            return w
        w ^= p
    return 0


def echelon_basis(words: Iterable[int]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for w in words:
        w = reduce_against(w, basis)
        if w:
            basis[w.bit_length() - 1] = w
    return basis


def kernel_dim(columns: Sequence[int]) -> int:
    """Dimension of ``{x : sum of columns[j] over set bits j of x = 0}``."""
    return len(columns) - rank_words(columns)
