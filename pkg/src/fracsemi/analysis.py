"""Structural analysis of semifields: subsemifields, fields, nuclei."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

from .gf2core import DimensionError, GF2Vector, rank_words
from .semifield import Cube, mul_bits


def rref(words, n: int) -> tuple[int, ...]:
    """Reduced echelon form with pivots taken from coordinate 1 upward.

    Rows are returned sorted by pivot; each pivot bit appears in exactly one
    row.  Zero rows are dropped.
    """
    pending = [w for w in words if w]
    out: list[int] = []
    for bit in range(n):
        mask = 1 << bit
        idx = next((k for k, w in enumerate(pending) if w & mask), None)
        if idx is None:
            continue
        piv = pending.pop(idx)
        pending = [w ^ piv if w & mask else w for w in pending]
        pending = [w for w in pending if w]
        out = [w ^ piv if w & mask else w for w in out]
        out.append(piv)
    return tuple(out)


class Subspace:
    """A subspace of F_2^n given by independent basis vectors.

    Equality and hashing use the canonical reduced echelon form.
    """

    __slots__ = ("n", "basis_vectors", "canonical")

    def __init__(self, n: int, basis_vectors):
        vecs = tuple(v.bits if isinstance(v, GF2Vector) else v for v in basis_vectors)
        for v in vecs:
            if v < 0 or v >> n:
                raise ValueError(f"vector {v:#x} does not fit in dimension {n}")
        if rank_words(vecs) != len(vecs):
            raise ValueError("basis vectors are linearly dependent")
        self.n = n
        self.basis_vectors = vecs
        self.canonical = rref(vecs, n)

    @classmethod
    def span(cls, n: int, vectors) -> Subspace:
        """Subspace spanned by arbitrary (possibly dependent) vectors."""
        words = [v.bits if isinstance(v, GF2Vector) else v for v in vectors]
        return cls(n, rref(words, n))

    @property
    def dim(self) -> int:
        return len(self.canonical)

    def reduce(self, v: int) -> int:
        for row in self.canonical:
            if v & (row & -row):
                v ^= row
        return v

    def __contains__(self, v) -> bool:
        if isinstance(v, GF2Vector):
            if v.n != self.n:
                return False
            v = v.bits
        return self.reduce(v) == 0

    def elements(self) -> Iterator[int]:
        """Every element, ordered by its coordinates in the canonical basis."""
        rows = self.canonical
        for k in range(1 << len(rows)):
            acc = 0
            for r, row in enumerate(rows):
                if k >> r & 1:
                    acc ^= row
            yield acc

    def vectors(self) -> list[GF2Vector]:
        return [GF2Vector(self.n, v) for v in self.canonical]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash((self.n, self.canonical))

    def __repr__(self) -> str:
        from .gf2core import bits_to_str

        return f"Subspace(n={self.n}, [{', '.join(bits_to_str(v, self.n) for v in self.canonical)}])"


def whole_space(n: int) -> Subspace:
    return Subspace(n, [1 << i for i in range(n)])


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of F_2^n."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def enumerate_subspaces_containing_one(n: int, m: int) -> Iterator[Subspace]:
    """All m-dimensional subspaces of F_2^n containing e_1, each once.

    Canonical forms are generated directly: e_1 is the first row, the other
    m-1 rows have pivots chosen among coordinates 2..n and free entries at
    later non-pivot coordinates.
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    for pivots in itertools.combinations(range(1, n), m - 1):
        pset = set(pivots)
        slots = [(r, q) for r, p in enumerate(pivots) for q in range(p + 1, n) if q not in pset]
        for fill in range(1 << len(slots)):
            rows = [1 << p for p in pivots]
            for s, (r, q) in enumerate(slots):
                if fill >> s & 1:
                    rows[r] |= 1 << q
            yield Subspace(n, [1] + rows)


def _check_space(c: Cube, s: Optional[Subspace]) -> tuple[int, ...]:
    if s is None:
        return tuple(1 << i for i in range(c.n))
    if s.n != c.n:
        raise DimensionError("subspace", s.n, c.n)
    return s.canonical


def check_closure(c: Cube, s: Subspace) -> bool:
    basis = _check_space(c, s)
    return all(s.reduce(mul_bits(c, x, y)) == 0 for x in basis for y in basis)


def find_noncommuting_pair(c: Cube, s: Optional[Subspace] = None) -> Optional[tuple[GF2Vector, GF2Vector]]:
    """First basis pair ``(x, y)``, x before y, with ``xy != yx``."""
    basis = _check_space(c, s)
    for a, b in itertools.combinations(basis, 2):
        if mul_bits(c, a, b) != mul_bits(c, b, a):
            return GF2Vector(c.n, a), GF2Vector(c.n, b)
    return None


def is_commutative(c: Cube, s: Optional[Subspace] = None) -> bool:
    return find_noncommuting_pair(c, s) is None


def find_nonassociative_triple(
    c: Cube, s: Optional[Subspace] = None
) -> Optional[tuple[GF2Vector, GF2Vector, GF2Vector]]:
    """First basis triple in lexicographic order with ``(xy)z != x(yz)``."""
    basis = _check_space(c, s)
    prods = {(a, b): mul_bits(c, a, b) for a in basis for b in basis}
    for a, b, d in itertools.product(basis, repeat=3):
        if mul_bits(c, prods[a, b], d) != mul_bits(c, a, prods[b, d]):
            return GF2Vector(c.n, a), GF2Vector(c.n, b), GF2Vector(c.n, d)
    return None


def is_associative(c: Cube, s: Optional[Subspace] = None) -> bool:
    return find_nonassociative_triple(c, s) is None


def multiplicative_order(c: Cube, g: int, limit: int) -> Optional[int]:
    """Smallest k <= limit with g^k = 1 (powers taken left to right)."""
    p = g
    for k in range(1, limit + 1):
        if p == 1:
            return k
        p = mul_bits(c, p, g)
        if p == 0:
            return None
    return None


def minimal_polynomial(c: Cube, g: int) -> int:
    """Least-degree polynomial over F_2 annihilating ``g``; powers taken left to right."""
    basis: dict[int, tuple[int, int]] = {}
    power = 1
    d = 0
    while True:
        w, tag = power, 1 << d
        while w:
            top = w.bit_length() - 1
            if top not in basis:
                break
            bw, bt = basis[top]
            w ^= bw
            tag ^= bt
        if w == 0:
            return tag
        basis[w.bit_length() - 1] = (w, tag)
        power = mul_bits(c, power, g)
        d += 1


def identify_field(c: Cube, s: Subspace) -> Optional[tuple[int, int]]:
    """``(m, minimal polynomial)`` when the restriction to ``s`` is a field.

    The generator is the first canonical basis vector of multiplicative order
    2^m - 1, falling back to the remaining elements of ``s`` in order.
    """
    if not check_closure(c, s) or not is_commutative(c, s) or not is_associative(c, s):
        return None
    m = s.dim
    target = (1 << m) - 1
    seen = set()
    for g in itertools.chain(s.canonical, s.elements()):
        if g == 0 or g in seen:
            continue
        seen.add(g)
        if multiplicative_order(c, g, target) == target:
            return m, minimal_polynomial(c, g)
    return None


@dataclass(frozen=True)
class SubalgebraReport:
    subspace: Subspace
    closed: bool
    associative: bool
    commutative: bool
    field_id: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.field_id is not None and not (self.closed and self.associative and self.commutative):
            raise ValueError("a field must be closed, associative and commutative")

    @property
    def is_field(self) -> bool:
        return self.field_id is not None


def subalgebra_report(c: Cube, s: Subspace) -> SubalgebraReport:
    closed = check_closure(c, s)
    if not closed:
        return SubalgebraReport(s, False, False, False)
    assoc = is_associative(c, s)
    comm = is_commutative(c, s)
    fid = identify_field(c, s) if assoc and comm else None
    return SubalgebraReport(s, True, assoc, comm, fid)


@dataclass
class SubsemifieldScan:
    m: int
    candidates: int = 0
    reports: list[SubalgebraReport] = field(default_factory=list)


def scan_subsemifields(c: Cube, m: int) -> SubsemifieldScan:
    scan = SubsemifieldScan(m)
    for s in enumerate_subspaces_containing_one(c.n, m):
        scan.candidates += 1
        if check_closure(c, s):
            scan.reports.append(subalgebra_report(c, s))
    return scan


def find_subsemifields(c: Cube, m: int) -> list[SubalgebraReport]:
    return scan_subsemifields(c, m).reports


def fractional_dimension(n: int, m: int) -> Fraction:
    """Dimension of an order-2^n semifield over a subsemifield of order 2^m."""
    return Fraction(n, m)


class Nuclei(NamedTuple):
    left: int
    middle: int
    right: int
    center: int


def nuclei(c: Cube) -> Nuclei:
    """Dimensions of the left, middle and right nuclei and of the center.

    Each defining identity is linear in the unknown element, so membership
    over basis pairs is a homogeneous linear system; dimensions are kernel
    dimensions of the stacked systems.
    """
    n = c.n
    basis = [1 << i for i in range(n)]
    pairs = [(a, b) for a in basis for b in basis]

    def stacked(defect) -> list[int]:
        cols = []
        for x in basis:
            w = 0
            for k, (a, b) in enumerate(pairs):
                w |= defect(x, a, b) << (n * k)
            cols.append(w)
        return cols

    mul = lambda u, v: mul_bits(c, u, v)  # noqa: E731
    left = stacked(lambda x, a, b: mul(mul(x, a), b) ^ mul(x, mul(a, b)))
    middle = stacked(lambda x, a, b: mul(mul(a, x), b) ^ mul(a, mul(x, b)))
    right = stacked(lambda x, a, b: mul(mul(a, b), x) ^ mul(a, mul(b, x)))
    comm = stacked(lambda x, a, b: mul(x, a) ^ mul(a, x) if b == 1 else 0)

    shift = n * len(pairs)
    center = [l | m << shift | r << 2 * shift | z << 3 * shift for l, m, r, z in zip(left, middle, right, comm)]
    return Nuclei(*(n - rank_words(cols) for cols in (left, middle, right, center)))
