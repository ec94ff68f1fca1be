"""Dense linear algebra over the prime field F_p.

Vectors are lists of ints in ``0..p-1``; matrices are lists of rows.  A
subspace is carried as the nonzero rows of its reduced row echelon form, which
makes the representation canonical.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator, Sequence

from sympy import nextprime

Vector = list[int]
Matrix = list[list[int]]


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    m = [[x % p for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        if inv != 1:
            m[r] = [x * inv % p for x in m[r]]
        row_r = m[r]
        for i in range(len(m)):
            f = m[i][c]
            if i != r and f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def span(rows: Sequence[Sequence[int]], p: int) -> Matrix:
    return rref(rows, p)[0]


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[1])


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int], p: int) -> Vector:
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> Matrix:
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    inner = len(b)
    if inner == 0:
        return [[0] * 0 for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) % p for col in cols] for row in a]


def image(a: Sequence[Sequence[int]], basis: Sequence[Sequence[int]], p: int) -> Matrix:
    """Span of ``a`` applied to the rows of ``basis``."""
    if not a:
        return []
    return span([mat_vec(a, b, p) for b in basis], p)


def kernel(a: Sequence[Sequence[int]], ncols: int, p: int) -> Matrix:
    """Basis of ``{v : a v = 0}`` in ``F_p^ncols``."""
    red, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, c in zip(red, pivots):
            v[c] = (-row[f]) % p
        basis.append(v)
    return basis


def annihilator(basis: Sequence[Sequence[int]], n: int, p: int) -> Matrix:
    """Row vectors ``h`` with ``h . w = 0`` for all ``w`` in the span."""
    return kernel(basis, n, p)


def preimage(a: Sequence[Sequence[int]], target: Sequence[Sequence[int]], ncols: int, p: int) -> Matrix:
    """``{v in F_p^ncols : a v in span(target)}``."""
    m = len(a)
    if m == 0:
        return identity(ncols)
    h = annihilator(target, m, p)
    if not h:
        return identity(ncols)
    return span(kernel(mat_mul(h, a, p), ncols, p), p)


def intersect(u: Sequence[Sequence[int]], w: Sequence[Sequence[int]], n: int, p: int) -> Matrix:
    return span(kernel(annihilator(u, n, p) + annihilator(w, n, p), n, p), p)


def add(u: Sequence[Sequence[int]], w: Sequence[Sequence[int]], p: int) -> Matrix:
    return span(list(u) + list(w), p)


def contains(u: Sequence[Sequence[int]], w: Sequence[Sequence[int]], p: int) -> bool:
    """True iff ``span(w)`` is inside ``span(u)``; ``u`` must be in RREF."""
    if not w:
        return True
    return rank(list(u) + list(w), p) == len(u)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def complement(basis: Sequence[Sequence[int]], n: int, p: int) -> Matrix:
    """Standard basis vectors completing ``span(basis)`` to ``F_p^n``."""
    pivots = set(rref(basis, p)[1])
    return [[int(i == j) for i in range(n)] for j in range(n) if j not in pivots]


def reduce_mod(sub_rref: Sequence[Sequence[int]], pivots: Sequence[int], v: Sequence[int], p: int) -> Vector:
    """Reduce ``v`` modulo a subspace given in RREF; pivot entries become 0."""
    v = [x % p for x in v]
    for row, c in zip(sub_rref, pivots):
        f = v[c]
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return v


def subspaces(m: int, r: int, p: int) -> Iterator[Matrix]:
    """Every ``r``-dimensional subspace of ``F_p^m`` as an RREF matrix."""
    if r < 0 or r > m:
        return
    if r == 0:
        yield []
        return
    for pivots in combinations(range(m), r):
        slots = [(i, c) for i in range(r) for c in range(pivots[i] + 1, m) if c not in pivots]
        for values in product(range(p), repeat=len(slots)):
            rows = [[0] * m for _ in range(r)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, c), x in zip(slots, values):
                rows[i][c] = x
            yield rows


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_q^n``."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def primes(start: int = 2) -> Iterator[int]:
    """Primes ``>= start`` in increasing order."""
    n = int(nextprime(start - 1))
    while True:
        yield n
        n = int(nextprime(n))
