"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 bad input (parse, I/O,
inconsistent constraints), 3 search budget spent without a solution.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import analysis, basisfile, poly
from .config import ConfigError, load_config
from .fixtures import FIXTURES, load_fixture
from .gf2core import GF2Vector, bits_to_str
from .search import InconsistentConstraints, SearchOutcome, search_sharded, search_standard_bases
from .semifield import (
    Cube,
    StandardBasis,
    VerificationReport,
    basis_from_cube,
    cube_from_basis,
    mul_bits,
    multiplication_rows,
    opposite,
    verify_no_zero_divisors,
    verify_standard_basis,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
TABLE_MAX_DIM = 10


class InputError(Exception):
    pass


def load_source(source: str) -> StandardBasis:
    """A built-in fixture name, unless a file of that name exists."""
    path = Path(source)
    if source in FIXTURES and not path.exists():
        return load_fixture(source)
    try:
        return basisfile.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror or exc}") from None
    except (basisfile.BasisFileError, ValueError) as exc:
        raise InputError(f"{source}: {exc}") from None


def verification_doc(rep: VerificationReport, n: int) -> dict:
    witness = None
    if isinstance(rep.witness, GF2Vector):
        witness = {"lambda": str(rep.witness)}
    elif rep.witness is not None:
        witness = {"matrix": rep.witness + 1}
    return {
        "passed": rep.passed,
        "failed_condition": rep.failed_condition.value if rep.failed_condition else None,
        "witness": witness,
        "combinations_checked": rep.combinations_checked,
    }


def analysis_doc(b: StandardBasis, source: str, subs: list[int]) -> dict:
    n = b.n
    c = cube_from_basis(b)
    s = lambda v: bits_to_str(v, n)  # noqa: E731
    doc = {
        "command": "analyze",
        "source": source,
        "n": n,
        "verification": verification_doc(verify_standard_basis(b), n),
        "zero_divisor_free": verify_no_zero_divisors(c),
    }

    pair = analysis.find_noncommuting_pair(c)
    comm = {"value": pair is None, "witness": None}
    if pair:
        x, y = pair[0].bits, pair[1].bits
        comm["witness"] = {"x": s(x), "y": s(y), "xy": s(mul_bits(c, x, y)), "yx": s(mul_bits(c, y, x))}
    doc["commutative"] = comm

    triple = analysis.find_nonassociative_triple(c)
    assoc = {"value": triple is None, "witness": None}
    if triple:
        x, y, z = (t.bits for t in triple)
        assoc["witness"] = {
            "x": s(x), "y": s(y), "z": s(z),
            "(xy)z": s(mul_bits(c, mul_bits(c, x, y), z)),
            "x(yz)": s(mul_bits(c, x, mul_bits(c, y, z))),
        }
    doc["associative"] = assoc
    doc["nuclei"] = analysis.nuclei(c)._asdict()

    scans = []
    found_all = []
    for m in subs:
        scan = analysis.scan_subsemifields(c, m)
        entries = []
        for rep in scan.reports:
            entry = {
                "basis": [s(v) for v in rep.subspace.canonical],
                "closed": rep.closed,
                "associative": rep.associative,
                "commutative": rep.commutative,
                "field": None,
                "dimension": _fraction(analysis.fractional_dimension(n, m)),
                "integral": n % m == 0,
            }
            if rep.field_id:
                deg, p = rep.field_id
                entry["field"] = {"order": 1 << deg, "degree": deg, "minimal_polynomial": poly.to_str(p)}
            entries.append(entry)
            found_all.append((m, rep.subspace, entry))
        scans.append({"m": m, "candidates": scan.candidates, "found": entries})
    doc["subsemifields"] = scans

    maximal = []
    for m, sub, entry in found_all:
        if m >= n:
            continue
        bigger = any(m2 > m and m2 < n and all(v in other for v in sub.canonical) for m2, other, _ in found_all)
        if not bigger:
            maximal.append({"m": m, "basis": entry["basis"], "dimension": entry["dimension"],
                            "integral": entry["integral"]})
    doc["maximal_proper_subsemifields"] = maximal
    return doc


def _fraction(f) -> str:
    return f"{f.numerator}/{f.denominator}"


def write_table(c: Cube, path: Path) -> None:
    """Row x lists x*y for y = 0 .. 2^n - 1 as hex words (bit 0 = coordinate 1)."""
    width = max(1, (c.n + 3) // 4)
    with open(path, "w") as fh:
        for row in multiplication_rows(c):
            fh.write(" ".join(f"{v:0{width}x}" for v in row) + "\n")


def _print(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def cmd_verify(args) -> int:
    b = load_source(args.source)
    rep = verify_standard_basis(b)
    doc = {"command": "verify", "source": args.source, "n": b.n}
    doc.update(verification_doc(rep, b.n))
    if args.table:
        if not rep.passed:
            doc["table"] = None
        elif b.n > TABLE_MAX_DIM:
            raise InputError(f"multiplication table limited to n <= {TABLE_MAX_DIM}")
        else:
            write_table(cube_from_basis(b), Path(args.table))
            doc["table"] = str(args.table)
    _print(doc)
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_analyze(args) -> int:
    b = load_source(args.source)
    subs = sorted(set(args.sub or []))
    for m in subs:
        if not 1 <= m <= b.n:
            raise InputError(f"--sub {m} out of range 1..{b.n}")
    rep = verify_standard_basis(b)
    if not rep.passed:
        _print({"command": "analyze", "source": args.source, "n": b.n,
                "verification": verification_doc(rep, b.n)})
        return EXIT_FAILED
    _print(analysis_doc(b, args.source, subs))
    return EXIT_OK


def cmd_opposite(args) -> int:
    b = load_source(args.source)
    out = basis_from_cube(opposite(cube_from_basis(b)))
    try:
        basisfile.dump(out, args.out)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    return EXIT_OK


def cmd_mult(args) -> int:
    b = load_source(args.source)
    operands = []
    for name, text in (("x", args.x), ("y", args.y)):
        if len(text) != b.n or set(text) - {"0", "1"}:
            raise InputError(f"operand {name} must be {b.n} characters of 0/1, got {text!r}")
        operands.append(GF2Vector.parse(text).bits)
    print(bits_to_str(mul_bits(cube_from_basis(b), *operands), b.n))
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        cfg = load_config(args.config)
    except OSError as exc:
        raise InputError(f"cannot read {args.config}: {exc.strerror or exc}") from None
    except InconsistentConstraints as exc:
        for line in exc.conflicts:
            print(f"conflict: {line}", file=sys.stderr)
        raise InputError(str(exc)) from None
    except ConfigError as exc:
        raise InputError(f"{args.config}: {exc}") from None

    depth = cfg.split_depth if args.split_depth is None else args.split_depth
    workers = cfg.workers if args.workers is None else args.workers
    if args.out:
        out_dir = Path(args.out)
    elif cfg.output:
        out_dir = Path(args.config).parent / cfg.output
    else:
        out_dir = Path("solutions")

    events = _print_event if args.progress else None

    try:
        if depth or workers > 1:
            outcome = search_sharded(cfg.constraints, cfg.budget, depth=depth or 1, workers=workers)
        else:
            outcome = search_standard_bases(cfg.constraints, cfg.budget, on_event=events,
                                            progress_every=args.progress_every)
    except ValueError as exc:
        raise InputError(str(exc)) from None

    files = write_solutions(outcome, out_dir)
    doc = {"command": "search", "config": str(args.config), "output": str(out_dir)}
    doc.update(outcome.summary())
    doc["files"] = files
    _print(doc)
    if not outcome.bases and not outcome.exhausted:
        return EXIT_BUDGET
    return EXIT_OK


def _print_event(ev: dict) -> None:
    print(json.dumps(ev), file=sys.stderr, flush=True)


def write_solutions(outcome: SearchOutcome, out_dir: Path) -> list[str]:
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        files = []
        for k, b in enumerate(outcome.bases, 1):
            name = f"solution-{k:04d}.txt"
            basisfile.dump(b, out_dir / name)
            files.append(name)
        manifest = dict(outcome.summary(), files=files)
        (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    except OSError as exc:
        raise InputError(f"cannot write to {out_dir}: {exc.strerror or exc}") from None
    return files


def cmd_show(args) -> int:
    sys.stdout.write(basisfile.serialize(load_source(args.source)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracsemi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    src_help = f"basis file, or a built-in fixture ({', '.join(FIXTURES)})"

    sp = sub.add_parser("verify", help="check the standard-basis conditions")
    sp.add_argument("source", help=src_help)
    sp.add_argument("--table", metavar="PATH", help="also write the 2^n x 2^n product table as hex rows")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("analyze", help="commutativity, associativity, nuclei and subsemifields")
    sp.add_argument("source", help=src_help)
    sp.add_argument("--sub", type=int, action="append", metavar="M",
                    help="look for subsemifields of dimension M (repeatable)")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("opposite", help="write the basis of the opposite semifield")
    sp.add_argument("source", help=src_help)
    sp.add_argument("out", help="output basis file")
    sp.set_defaults(func=cmd_opposite)

    sp = sub.add_parser("mult", help="multiply two elements given as bit strings")
    sp.add_argument("source", help=src_help)
    sp.add_argument("x")
    sp.add_argument("y")
    sp.set_defaults(func=cmd_mult)

    sp = sub.add_parser("search", help="backtracking search for standard bases")
    sp.add_argument("config", help="TOML search configuration")
    sp.add_argument("--out", help="output directory (default: config 'output' or ./solutions)")
    sp.add_argument("--split-depth", type=int, help="shard the tree at this depth")
    sp.add_argument("--workers", type=int, help="worker processes for shards")
    sp.add_argument("--progress", action="store_true", help="JSON-lines events on stderr")
    sp.add_argument("--progress-every", type=int, default=100_000, metavar="NODES")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("show", help="print a basis in file format")
    sp.add_argument("source", help=src_help)
    sp.set_defaults(func=cmd_show)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
