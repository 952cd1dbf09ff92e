"""Text format for standard bases.

::

    # optional comments
    n 7

    1000000
    0100000
    ...

    0010000
    ...

A header line ``n <dimension>`` is followed by ``n`` blocks of ``n`` rows
separated by blank lines.  Character ``j`` of row ``k`` in block ``i`` is
the entry ``(k, j)`` of ``A_i``; since column ``j`` of ``A_i`` is the
product ``a_i a_j``, rows can be compared with printed matrices directly.
"""

from __future__ import annotations

from pathlib import Path

from .gf2core import GF2Matrix, MAX_DIM
from .semifield import StandardBasis


class BasisFileError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def serialize(b: StandardBasis) -> str:
    parts = [f"n {b.n}\n"]
    for m in b.mats:
        parts.append("\n" + "".join(row + "\n" for row in m.row_strings()))
    return "".join(parts)


def parse(text: str) -> StandardBasis:
    lines = text.splitlines()
    header = None
    blocks: list[list[tuple[int, str]]] = []
    current: list[tuple[int, str]] = []
    for lineno, raw in enumerate(lines, 1):
        if raw.startswith("#"):
            continue
        line = raw.rstrip()
        if header is None:
            if not line:
                continue
            header = _parse_header(line, lineno)
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        current.append((lineno, line))
    if current:
        blocks.append(current)
    if header is None:
        raise BasisFileError("missing header 'n <dimension>'", len(lines) + 1)

    n = header
    if len(blocks) != n:
        where = blocks[n][0][0] if len(blocks) > n else len(lines) + 1
        raise BasisFileError(f"expected {n} matrix blocks, found {len(blocks)}", where)
    mats = []
    for bi, block in enumerate(blocks, 1):
        if len(block) != n:
            where = block[n][0] if len(block) > n else block[-1][0] + 1
            raise BasisFileError(f"block {bi} has {len(block)} rows, expected {n}", where)
        rows = []
        for lineno, line in block:
            for col, ch in enumerate(line, 1):
                if ch not in "01":
                    raise BasisFileError(f"expected '0' or '1', got {ch!r}", lineno, col)
            if len(line) != n:
                raise BasisFileError(f"row has {len(line)} entries, expected {n}", lineno,
                                     min(len(line), n) + 1)
            rows.append(line)
        mats.append(GF2Matrix.from_rows(rows))
    return StandardBasis(n, tuple(mats))


def _parse_header(line: str, lineno: int) -> int:
    fields = line.split()
    if len(fields) != 2 or fields[0] != "n":
        raise BasisFileError("expected header 'n <dimension>'", lineno)
    try:
        n = int(fields[1])
    except ValueError:
        raise BasisFileError(f"dimension {fields[1]!r} is not an integer", lineno, line.index(fields[1]) + 1) from None
    if not 0 <= n <= MAX_DIM:
        raise BasisFileError(f"dimension must be in 0..{MAX_DIM}", lineno, line.index(fields[1]) + 1)
    return n


def load(path) -> StandardBasis:
    return parse(Path(path).read_text())


def dump(b: StandardBasis, path) -> None:
    Path(path).write_text(serialize(b))
