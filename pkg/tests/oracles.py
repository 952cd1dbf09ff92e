"""Slow reference implementations used as test oracles.

Everything here works on plain lists of 0/1 entries and shares no code
with the packed implementation under test.
"""

import itertools


def matrix_rows(m):
    """Packed GF2Matrix -> list of rows of 0/1 ints."""
    return [[m.columns[j] >> k & 1 for j in range(m.n)] for k in range(m.n)]


def naive_rank(rows):
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                a[i] = [(x + y) % 2 for x, y in zip(a[i], a[r])]
        r += 1
    return r


def naive_matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % 2 for j in range(n)] for i in range(n)]


def add_rows(a, b):
    return [[(x + y) % 2 for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def basis_entries(basis):
    """T[i][j][k] = coefficient of a_k in a_i a_j, read off the matrix entries."""
    mats = [matrix_rows(m) for m in basis.mats]
    n = basis.n
    return [[[mats[i][k][j] for k in range(n)] for j in range(n)] for i in range(n)]


def coords(v, n):
    return [v >> i & 1 for i in range(n)]


def pack(cs):
    return sum(b << i for i, b in enumerate(cs))


def naive_product(T, x, y):
    """Bilinear product straight from the structure-constant sum."""
    n = len(T)
    xs, ys = coords(x, n), coords(y, n)
    out = [0] * n
    for i in range(n):
        for j in range(n):
            if xs[i] and ys[j]:
                for k in range(n):
                    out[k] ^= T[i][j][k]
    return pack(out)


def naive_table(T):
    size = 1 << len(T)
    return [[naive_product(T, x, y) for y in range(size)] for x in range(size)]


def first_singular_lambda(basis):
    """Smallest lambda (as an integer) whose combination has rank < n, or None."""
    n = basis.n
    mats = [matrix_rows(m) for m in basis.mats]
    for lam in range(1, 1 << n):
        acc = [[0] * n for _ in range(n)]
        for i in range(n):
            if lam >> i & 1:
                acc = add_rows(acc, mats[i])
        if naive_rank(acc) < n:
            return lam
    return None


def has_zero_divisors(T):
    size = 1 << len(T)
    return any(naive_product(T, x, y) == 0 for x in range(1, size) for y in range(1, size))


def gaussian_binomial(n, k):
    num = den = 1
    for i in range(k):
        num *= 2 ** (n - i) - 1
        den *= 2 ** (k - i) - 1
    return num // den


def all_subspaces_containing_one(n, m):
    """Every m-dim subspace containing e_1, as frozensets of elements, by spanning all tuples."""
    found = set()
    vecs = range(1, 1 << n)
    for extra in itertools.combinations(vecs, m - 1):
        span = {0}
        for v in (1,) + extra:
            span |= {s ^ v for s in span}
        if len(span) == 1 << m:
            found.add(frozenset(span))
    return found


def closed_subspaces(table, n, m):
    out = []
    for span in all_subspaces_containing_one(n, m):
        if all(table[x][y] in span for x in span for y in span):
            out.append(span)
    return out


def nuclei_dims(T):
    """Nucleus and center dimensions by sweeping all 2^n elements against basis pairs."""
    n = len(T)
    tab = naive_table(T)
    basis = [1 << i for i in range(n)]
    left, middle, right, center = [], [], [], []
    for x in range(1 << n):
        l = all(tab[tab[x][a]][b] == tab[x][tab[a][b]] for a in basis for b in basis)
        mi = all(tab[tab[a][x]][b] == tab[a][tab[x][b]] for a in basis for b in basis)
        r = all(tab[tab[a][b]][x] == tab[a][tab[b][x]] for a in basis for b in basis)
        c = l and mi and r and all(tab[x][a] == tab[a][x] for a in basis)
        for flag, bucket in ((l, left), (mi, middle), (r, right), (c, center)):
            if flag:
                bucket.append(x)
    return tuple(len(b).bit_length() - 1 for b in (left, middle, right, center))


def poly_product_set(max_deg):
    """All products of two polynomials of degree >= 1 with total degree <= max_deg."""
    def pmul(a, b):
        out = 0
        for i in range(b.bit_length()):
            if b >> i & 1:
                out ^= a << i
        return out

    polys = [p for p in range(2, 1 << max_deg)]
    return {pmul(a, b) for a in polys for b in polys
            if (a.bit_length() - 1) + (b.bit_length() - 1) <= max_deg}


def brute_force_bases(n, pinned):
    """Standard bases by enumerating every free column value, no pruning.

    ``pinned`` maps (i, j) -> packed column for columns fixed beyond the
    identity and unit first columns.  Returns column tuples in lexicographic
    order of the free columns (matrix-major, then column).
    """
    free = [(i, j) for i in range(1, n) for j in range(1, n) if (i, j) not in pinned]
    out = []
    for values in itertools.product(range(1 << n), repeat=len(free)):
        cols = [[0] * n for _ in range(n)]
        for j in range(n):
            cols[0][j] = 1 << j
        for i in range(1, n):
            cols[i][0] = 1 << i
        for (i, j), v in pinned.items():
            cols[i][j] = v
        for (i, j), v in zip(free, values):
            cols[i][j] = v
        ok = True
        for lam in range(1, 1 << n):
            combo = [0] * n
            for i in range(n):
                if lam >> i & 1:
                    combo = [a ^ b for a, b in zip(combo, cols[i])]
            rows = [[combo[j] >> k & 1 for j in range(n)] for k in range(n)]
            if naive_rank(rows) < n:
                ok = False
                break
        if ok:
            out.append(tuple(tuple(c) for c in cols))
    return out
