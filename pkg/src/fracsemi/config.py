"""Search configuration files (TOML).

Example::

    n = 7

    [budget]
    max_solutions = 10
    max_nodes = 5_000_000
    wall_clock = 60.0          # seconds

    [subfield]
    m = 3
    polynomial = "x^3+x+1"

    [[pin]]                    # whole matrices taken from a fixture or basis file
    source = "paper-example"
    matrices = [4, 5, 6]

    [[pin]]                    # one matrix given row by row
    matrix = 2
    rows = ["0010000", "1010000", ...]

    [[pin]]                    # one column, top entry first
    matrix = 7
    column = 2
    bits = "0000010"

    [parallel]
    split_depth = 1
    workers = 4

Matrix and column numbers are 1-based, as in ``A_1 .. A_n``.  A
``source`` that is not a built-in fixture name is read as a basis file
relative to the config file.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import basisfile, poly
from .fixtures import FIXTURES, load_fixture
from .gf2core import GF2Matrix, GF2Vector
from .search import SearchBudget, SearchConstraints


class ConfigError(ValueError):
    pass


@dataclass
class SearchConfig:
    constraints: SearchConstraints
    budget: SearchBudget
    split_depth: int = 0
    workers: int = 1
    output: Optional[str] = None


_TOP = {"n", "budget", "subfield", "pin", "parallel", "output"}


def _take(table: dict, key: str, kind, where: str, default=None):
    if key not in table:
        return default
    value = table[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ConfigError(f"{where}.{key} must be {kind.__name__}, got {value!r}")
    return value


def _unknown(table: dict, allowed: set, where: str) -> None:
    extra = sorted(set(table) - allowed)
    if extra:
        raise ConfigError(f"unknown keys in {where}: {', '.join(extra)}")


def _index(value, n: int, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= n:
        raise ConfigError(f"{what} must be an integer in 1..{n}, got {value!r}")
    return value - 1


def _bits(text, n: int, what: str) -> int:
    if not isinstance(text, str) or len(text) != n or set(text) - {"0", "1"}:
        raise ConfigError(f"{what} must be a string of {n} characters 0/1, got {text!r}")
    return GF2Vector.parse(text).bits


def parse_config(text: str, base_dir: Path = Path(".")) -> SearchConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from None
    _unknown(doc, _TOP, "config")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ConfigError("config needs an integer 'n'")

    b = doc.get("budget", {})
    _unknown(b, {"max_solutions", "max_nodes", "wall_clock"}, "[budget]")
    budget = SearchBudget(
        max_solutions=_take(b, "max_solutions", int, "budget"),
        max_nodes=_take(b, "max_nodes", int, "budget"),
        wall_clock=_take(b, "wall_clock", float, "budget"),
    )

    subfield = None
    if "subfield" in doc:
        s = doc["subfield"]
        _unknown(s, {"m", "polynomial"}, "[subfield]")
        m = _take(s, "m", int, "subfield")
        ptext = _take(s, "polynomial", str, "subfield")
        if m is None or ptext is None:
            raise ConfigError("[subfield] needs both 'm' and 'polynomial'")
        try:
            subfield = (m, poly.parse(ptext))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    matrices: dict[int, GF2Matrix] = {}
    columns: dict[tuple[int, int], GF2Vector] = {}
    sources: dict[str, object] = {}

    def pin_matrix(i: int, mat: GF2Matrix, what: str) -> None:
        if i in matrices and matrices[i] != mat:
            raise ConfigError(f"A_{i + 1} pinned twice with different values ({what})")
        matrices[i] = mat

    for k, p in enumerate(doc.get("pin", []), 1):
        where = f"[[pin]] #{k}"
        if not isinstance(p, dict):
            raise ConfigError(f"{where} must be a table")
        _unknown(p, {"source", "matrices", "matrix", "column", "rows", "bits"}, where)
        if "source" in p:
            src = _take(p, "source", str, where)
            if src not in sources:
                sources[src] = _load_source(src, base_dir)
            basis = sources[src]
            if basis.n != n:
                raise ConfigError(f"{where}: source {src!r} has dimension {basis.n}, expected {n}")
            idx = p.get("matrices", list(range(1, n + 1)))
            if not isinstance(idx, list):
                raise ConfigError(f"{where}.matrices must be a list")
            for v in idx:
                i = _index(v, n, f"{where} matrix number")
                pin_matrix(i, basis.mats[i], where)
        elif "column" in p:
            i = _index(p.get("matrix"), n, f"{where}.matrix")
            j = _index(p["column"], n, f"{where}.column")
            columns[i, j] = GF2Vector(n, _bits(p.get("bits"), n, f"{where}.bits"))
        elif "rows" in p:
            i = _index(p.get("matrix"), n, f"{where}.matrix")
            rows = p["rows"]
            if not isinstance(rows, list) or len(rows) != n:
                raise ConfigError(f"{where}.rows must list {n} rows")
            for r, row in enumerate(rows, 1):
                _bits(row, n, f"{where} row {r}")
            pin_matrix(i, GF2Matrix.from_rows(rows), where)
        else:
            raise ConfigError(f"{where} needs 'source', 'rows' or 'column'")

    par = doc.get("parallel", {})
    _unknown(par, {"split_depth", "workers"}, "[parallel]")
    cons = SearchConstraints(n, matrices, columns, subfield)
    return SearchConfig(
        constraints=cons,
        budget=budget,
        split_depth=_take(par, "split_depth", int, "parallel", 0),
        workers=_take(par, "workers", int, "parallel", 1),
        output=_take(doc, "output", str, "config"),
    )


def _load_source(src: str, base_dir: Path):
    if src in FIXTURES:
        return load_fixture(src)
    path = base_dir / src
    try:
        return basisfile.load(path)
    except OSError as exc:
        raise ConfigError(f"cannot read pin source {src!r}: {exc}") from None
    except basisfile.BasisFileError as exc:
        raise ConfigError(f"pin source {src!r}: {exc}") from None


def load_config(path) -> SearchConfig:
    path = Path(path)
    return parse_config(path.read_text(), path.parent)
