"""Depth-first search for standard bases under pinned entries.

The unknowns are the columns of ``A_2, ..., A_n`` other than the first
(the identity matrix and the unit first columns are always pinned).  They
are assigned matrix by matrix, column by column.  After each assignment
every combination ``sum lambda_i A_i`` that uses the touched matrix is
updated incrementally, and the branch is cut as soon as the fully known
columns of some combination are linearly dependent: such a combination
can never become invertible.  Complete assignments are re-verified from
scratch before being reported.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Mapping, Optional

from . import poly
from .gf2core import GF2Matrix, GF2Vector, MAX_DIM, mat_mul, rank_words
from .semifield import StandardBasis, verify_standard_basis

Event = Callable[[dict], None]


class InconsistentConstraints(ValueError):
    """Pinned data contradicts itself or the standard-basis shape."""

    def __init__(self, conflicts: list[str]):
        super().__init__("inconsistent constraints: " + "; ".join(conflicts))
        self.conflicts = conflicts


def _name(i: int, j: Optional[int] = None) -> str:
    return f"A_{i + 1}" if j is None else f"A_{i + 1} column {j + 1}"


@dataclass(frozen=True)
class SearchConstraints:
    """What is pinned before the search starts.

    Indices are 0-based (matrix ``i`` is ``A_{i+1}``).  ``subfield_block``
    is ``(m, p)`` with ``p`` an irreducible polynomial of degree ``m``; it
    pins the upper-left m x m block of ``A_{i+1}`` to ``C(p)^i`` for
    ``i < m`` and zeroes the off-diagonal blocks of those matrices.
    """

    n: int
    fixed_matrices: Mapping[int, GF2Matrix] = field(default_factory=dict)
    fixed_columns: Mapping[tuple[int, int], GF2Vector] = field(default_factory=dict)
    subfield_block: Optional[tuple[int, int]] = None

    def __post_init__(self):
        object.__setattr__(self, "_pins", self._build_pins())

    def _build_pins(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        n = self.n
        if not 1 <= n <= MAX_DIM:
            raise InconsistentConstraints([f"dimension must be in 1..{MAX_DIM}, got {n}"])
        full = (1 << n) - 1
        mask = [[0] * n for _ in range(n)]
        value = [[0] * n for _ in range(n)]
        source = [[[None] * n for _ in range(n)] for _ in range(n)]
        conflicts: list[str] = []

        def pin(i: int, j: int, m: int, v: int, who: str) -> None:
            clash = mask[i][j] & m & (value[i][j] ^ v)
            for k in range(n):
                if clash >> k & 1:
                    conflicts.append(
                        f"{_name(i, j)} row {k + 1}: {source[i][j][k]} gives "
                        f"{value[i][j] >> k & 1}, {who} gives {v >> k & 1}"
                    )
            fresh = m & ~mask[i][j]
            for k in range(n):
                if fresh >> k & 1:
                    source[i][j][k] = who
            value[i][j] = (value[i][j] & ~fresh) | (v & fresh)
            mask[i][j] |= m

        for j in range(n):
            pin(0, j, full, 1 << j, "identity first matrix")
        for i in range(1, n):
            pin(i, 0, full, 1 << i, "unit first column")

        for i, mat in sorted(self.fixed_matrices.items()):
            if not 0 <= i < n:
                conflicts.append(f"fixed matrix index {i + 1} out of range 1..{n}")
                continue
            if mat.n != n:
                conflicts.append(f"fixed {_name(i)} has dimension {mat.n}, expected {n}")
                continue
            for j in range(n):
                pin(i, j, full, mat.columns[j], f"fixed {_name(i)}")

        for (i, j), vec in sorted(self.fixed_columns.items()):
            if not (0 <= i < n and 0 <= j < n):
                conflicts.append(f"fixed column ({i + 1}, {j + 1}) out of range 1..{n}")
                continue
            if vec.n != n:
                conflicts.append(f"fixed {_name(i, j)} has dimension {vec.n}, expected {n}")
                continue
            pin(i, j, full, vec.bits, f"fixed {_name(i, j)}")

        if self.subfield_block is not None:
            m, p = self.subfield_block
            if not 1 <= m <= n:
                conflicts.append(f"subfield block size {m} out of range 1..{n}")
            elif poly.degree(p) != m:
                conflicts.append(f"subfield polynomial {poly.to_str(p)} does not have degree {m}")
            elif not poly.is_irreducible(p):
                conflicts.append(f"subfield polynomial {poly.to_str(p)} is reducible")
            else:
                low = (1 << m) - 1
                c = poly.companion(p)
                power = GF2Matrix.identity(m)
                for i in range(m):
                    for j in range(n):
                        if j < m:
                            pin(i, j, full, power.columns[j], "subfield block")
                        else:
                            pin(i, j, low, 0, "subfield block")
                    power = mat_mul(power, c)

        if conflicts:
            raise InconsistentConstraints(conflicts)
        return tuple(tuple(zip(mask[i], value[i])) for i in range(n))

    def pin(self, i: int, j: int) -> tuple[int, int]:
        """``(mask, value)`` of the bits of column ``j`` of ``A_{i+1}`` fixed in advance."""
        return self._pins[i][j]

    def free_columns(self) -> list[tuple[int, int]]:
        full = (1 << self.n) - 1
        return [(i, j) for i in range(self.n) for j in range(self.n) if self._pins[i][j][0] != full]

    def candidates(self, i: int, j: int) -> Iterator[int]:
        """Admissible values of a column, in increasing order of the free bits."""
        m, v = self._pins[i][j]
        free = ((1 << self.n) - 1) & ~m
        s = 0
        while True:
            yield v | s
            if s == free:
                return
            s = (s - free) & free

    def with_columns(self, extra: Mapping[tuple[int, int], int]) -> SearchConstraints:
        cols = dict(self.fixed_columns)
        for key, bits in extra.items():
            cols[key] = GF2Vector(self.n, bits)
        return replace(self, fixed_columns=cols)


@dataclass(frozen=True)
class SearchBudget:
    max_solutions: Optional[int] = None
    max_nodes: Optional[int] = None
    wall_clock: Optional[float] = None  # seconds

    @property
    def unlimited(self) -> bool:
        return self.max_solutions is None and self.max_nodes is None and self.wall_clock is None


@dataclass
class SearchOutcome:
    bases: list[StandardBasis] = field(default_factory=list)
    nodes_visited: int = 0
    prunes: int = 0
    exhausted: bool = False
    elapsed: float = 0.0
    rejected_leaves: int = 0

    def summary(self) -> dict:
        return {
            "solutions": len(self.bases),
            "nodes": self.nodes_visited,
            "prunes": self.prunes,
            "exhausted": self.exhausted,
            "elapsed": round(self.elapsed, 6),
        }


class _Stop(Exception):
    pass


class _DFS:
    def __init__(self, cons: SearchConstraints, budget: SearchBudget,
                 on_event: Optional[Event], progress_every: int):
        n = self.n = cons.n
        self.cons = cons
        self.budget = budget
        self.on_event = on_event
        self.progress_every = progress_every
        self.order = cons.free_columns()
        full = (1 << n) - 1
        self.val: list[list[Optional[int]]] = [
            [v if m == full else None for m, v in (cons.pin(i, j) for j in range(n))] for i in range(n)
        ]
        self.with_bit = [[lam for lam in range(1, 1 << n) if lam >> k & 1] for k in range(n)]
        self.combos: list[list[Optional[int]]] = [[None] * n for _ in range(1 << n)]
        for lam in range(1, 1 << n):
            low = (lam & -lam).bit_length() - 1
            rest = lam ^ (1 << low)
            for j in range(n):
                a = self.val[low][j]
                b = 0 if rest == 0 else self.combos[rest][j]
                self.combos[lam][j] = None if a is None or b is None else a ^ b
        self.out = SearchOutcome()
        self.start = 0.0

    def _ok(self, lam: int) -> bool:
        known = [w for w in self.combos[lam] if w is not None]
        return rank_words(known) == len(known)

    def _assign(self, k: int, j: int, v: int) -> bool:
        """Set column j of A_k and update combinations; roll back and return False on dependence."""
        combos = self.combos
        touched = []
        ok = True
        for lam in self.with_bit[k]:
            rest = lam ^ (1 << k)
            if rest:
                r = combos[rest][j]
                if r is None:
                    continue
                w = r ^ v
            else:
                w = v
            combos[lam][j] = w
            touched.append(lam)
            if w == 0 or not self._ok(lam):
                ok = False
                break
        if not ok:
            for lam in touched:
                combos[lam][j] = None
            return False
        self.val[k][j] = v
        return True

    def _unassign(self, k: int, j: int) -> None:
        self.val[k][j] = None
        for lam in self.with_bit[k]:
            self.combos[lam][j] = None

    def _emit(self, kind: str, **extra) -> None:
        if self.on_event is not None:
            ev = {"event": kind, "nodes": self.out.nodes_visited, "prunes": self.out.prunes,
                  "solutions": len(self.out.bases)}
            ev.update(extra)
            self.on_event(ev)

    def _tick(self) -> None:
        out, b = self.out, self.budget
        out.nodes_visited += 1
        if b.max_nodes is not None and out.nodes_visited > b.max_nodes:
            raise _Stop
        if b.wall_clock is not None and time.monotonic() - self.start > b.wall_clock:
            raise _Stop
        if self.progress_every and out.nodes_visited % self.progress_every == 0:
            self._emit("progress")

    def _leaf(self) -> None:
        n = self.n
        mats = [GF2Matrix(n, tuple(self.val[i])) for i in range(n)]
        basis = StandardBasis(n, tuple(mats))
        if not verify_standard_basis(basis).passed:
            self.out.rejected_leaves += 1
            return
        self.out.bases.append(basis)
        self._emit("solution", basis=[m.row_strings() for m in mats])
        if self.budget.max_solutions is not None and len(self.out.bases) >= self.budget.max_solutions:
            raise _Stop

    def _descend(self, depth: int) -> None:
        if depth == len(self.order):
            self._leaf()
            return
        k, j = self.order[depth]
        for v in self.cons.candidates(k, j):
            self._tick()
            if not self._assign(k, j, v):
                self.out.prunes += 1
                continue
            self._descend(depth + 1)
            self._unassign(k, j)

    def run(self) -> SearchOutcome:
        self.start = time.monotonic()
        try:
            self._tick()
            if all(self._ok(lam) for lam in range(1, 1 << self.n)):
                self._descend(0)
            else:
                self.out.prunes += 1
            self.out.exhausted = True
        except _Stop:
            self.out.exhausted = False
        self.out.elapsed = time.monotonic() - self.start
        self._emit("done", exhausted=self.out.exhausted)
        return self.out


def search_standard_bases(
    cons: SearchConstraints,
    budget: SearchBudget = SearchBudget(),
    on_event: Optional[Event] = None,
    progress_every: int = 0,
) -> SearchOutcome:
    """Run the pruned DFS; results come in traversal order.

    ``on_event`` receives dicts with an ``event`` key (``progress``,
    ``solution``, ``done``) plus running node, prune and solution counts.
    """
    return _DFS(cons, budget, on_event, progress_every).run()


def split_search_space(cons: SearchConstraints, depth: int) -> list[SearchConstraints]:
    """Pin the first ``depth`` free columns to every admissible value, in DFS order.

    Running the shards in order and concatenating their bases reproduces
    the sequential result.
    """
    order = cons.free_columns()
    if not 0 <= depth <= len(order):
        raise ValueError(f"split depth {depth} out of range 0..{len(order)}")
    shards = []

    def rec(level: int, chosen: dict) -> None:
        if level == depth:
            shards.append(cons.with_columns(chosen) if chosen else cons)
            return
        i, j = order[level]
        for v in cons.candidates(i, j):
            chosen[i, j] = v
            rec(level + 1, chosen)
            del chosen[i, j]

    rec(0, {})
    return shards


def _run_shard(args) -> SearchOutcome:
    cons, budget = args
    return search_standard_bases(cons, budget)


def merge_outcomes(outcomes: list[SearchOutcome], elapsed: float,
                   max_solutions: Optional[int] = None) -> SearchOutcome:
    merged = SearchOutcome(exhausted=all(o.exhausted for o in outcomes), elapsed=elapsed)
    for o in outcomes:
        merged.bases.extend(o.bases)
        merged.nodes_visited += o.nodes_visited
        merged.prunes += o.prunes
        merged.rejected_leaves += o.rejected_leaves
    if max_solutions is not None and len(merged.bases) > max_solutions:
        del merged.bases[max_solutions:]
        merged.exhausted = False
    return merged


def search_sharded(
    cons: SearchConstraints,
    budget: SearchBudget = SearchBudget(),
    depth: int = 1,
    workers: int = 1,
) -> SearchOutcome:
    """Split at ``depth`` and run the shards, in worker processes when ``workers > 1``.

    Budgets apply per shard; ``max_solutions`` also caps the merged list.
    The merged basis list is in shard order, which equals sequential order
    whenever no shard hits its budget.
    """
    start = time.monotonic()
    shards = split_search_space(cons, depth)
    jobs = [(s, budget) for s in shards]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_shard, jobs))
    else:
        outcomes = [_run_shard(job) for job in jobs]
    return merge_outcomes(outcomes, time.monotonic() - start, budget.max_solutions)

