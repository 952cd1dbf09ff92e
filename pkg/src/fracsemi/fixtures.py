"""Built-in standard bases."""

from __future__ import annotations

from typing import Callable

from . import poly
from .gf2core import GF2Matrix, mat_mul
from .semifield import StandardBasis

# Order-128 semifield containing F_8; rows as printed, leftmost = column 1.
PAPER_ROWS = (
    ("1000000", "0100000", "0010000", "0001000", "0000100", "0000010", "0000001"),
    ("0010000", "1010000", "0100000", "0001111", "0001010", "0000011", "0000010"),
    ("0100000", "0110000", "1010000", "0000100", "0001100", "0001111", "0001010"),
    ("0001100", "0001110", "0000101", "1000001", "0010010", "0111011", "0001101"),
    ("0000100", "0000111", "0001010", "0010011", "1010001", "0000110", "0111011"),
    ("0001011", "0001100", "0000100", "0001010", "0111111", "1010110", "0011011"),
    ("0001101", "0000100", "0001000", "0110101", "0111010", "0011101", "1000110"),
)

F8_POLY = 0b1011  # x^3 + x + 1
F128_POLY = 0b10000011  # x^7 + x + 1


def paper_basis() -> StandardBasis:
    return StandardBasis.from_matrices([GF2Matrix.from_rows(rows) for rows in PAPER_ROWS])


def companion_powers(p: int, count: int | None = None) -> list[GF2Matrix]:
    """``C^0, C^1, ...`` for the companion matrix ``C`` of ``p``."""
    c = poly.companion(p)
    if count is None:
        count = c.n
    out = [GF2Matrix.identity(c.n)]
    while len(out) < count:
        out.append(mat_mul(out[-1], c))
    return out[:count]


def field_basis(p: int) -> StandardBasis:
    """Polynomial basis 1, x, ..., x^(m-1) of F_2[x]/(p): its left multiplications are C^i."""
    return StandardBasis.from_matrices(companion_powers(p))


FIXTURES: dict[str, Callable[[], StandardBasis]] = {
    "paper-example": paper_basis,
    "f8": lambda: field_basis(F8_POLY),
    "f128": lambda: field_basis(F128_POLY),
}


def load_fixture(name: str) -> StandardBasis:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None
