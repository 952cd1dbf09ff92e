"""Polynomials over GF(2) packed into ints (bit k = coefficient of x^k)."""

from __future__ import annotations

import re

from .gf2core import GF2Matrix, MAX_DIM


def degree(p: int) -> int:
    return p.bit_length() - 1


def mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def divmod_(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = degree(b)
    while a and degree(a) >= db:
        shift = degree(a) - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(p)//2."""
    d = degree(p)
    if d < 1:
        return False
    for f in range(2, 1 << (d // 2 + 1)):
        if divmod_(p, f)[1] == 0:
            return False
    return True


def to_str(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for k in range(degree(p), -1, -1):
        if p >> k & 1:
            terms.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:1|x|x\^(\d+))$")


def parse(text: str) -> int:
    """Parse ``"x^3+x+1"`` style text, or a coefficient string such as ``"1011"``.

    Coefficient strings list x^0 first, matching the vector convention.
    """
    s = text.replace(" ", "")
    if s and set(s) <= {"0", "1"} and len(s) > 1:
        return sum(1 << k for k, ch in enumerate(s) if ch == "1")
    p = 0
    for term in s.split("+"):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse polynomial term {term!r} in {text!r}")
        k = 0 if term == "1" else 1 if term == "x" else int(m.group(1))
        p ^= 1 << k
    return p


def companion(p: int) -> GF2Matrix:
    """Matrix of multiplication by x on F_2[x]/(p) in the basis 1, x, ..., x^(m-1)."""
    m = degree(p)
    if not 1 <= m <= MAX_DIM:
        raise ValueError(f"companion matrix needs degree in 1..{MAX_DIM}, got {m}")
    cols = [1 << (j + 1) for j in range(m - 1)]
    cols.append(p ^ (1 << m))
    return GF2Matrix(m, tuple(cols))
