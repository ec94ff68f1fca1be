"""Seed mutation in the coefficient-free cluster algebra of an acyclic quiver.

All cluster variables are kept as Laurent polynomials in the initial cluster.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .laurent import LaurentPoly, NotDivisibleError
from .quiver import Quiver

IntMatrix = tuple[tuple[int, ...], ...]


class LaurentPhenomenonError(AssertionError):
    """An exchange relation did not divide exactly."""


@dataclass(frozen=True)
class Seed:
    matrix: IntMatrix
    variables: tuple[LaurentPoly, ...]

    def __post_init__(self) -> None:
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("exchange matrix must be square")
        if any(self.matrix[i][j] != -self.matrix[j][i] for i in range(n) for j in range(n)):
            raise ValueError("exchange matrix must be skew-symmetric")
        if len(self.variables) != n or any(v.is_zero() for v in self.variables):
            raise ValueError("a seed needs one nonzero variable per vertex")

    @property
    def rank(self) -> int:
        return len(self.matrix)


def exchange_matrix(q: Quiver) -> IntMatrix:
    """``b_ij`` = #arrows i -> j minus #arrows j -> i."""
    a = q.arrow_matrix
    n = q.vertex_count
    return tuple(tuple(a[i][j] - a[j][i] for j in range(n)) for i in range(n))


def initial_seed(q: Quiver) -> Seed:
    n = q.vertex_count
    return Seed(exchange_matrix(q), tuple(LaurentPoly.var(n, i) for i in range(n)))


def mutate_matrix(b: IntMatrix, k: int) -> IntMatrix:
    n = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + (abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])) // 2)
        out.append(tuple(row))
    return tuple(out)


def mutate(seed: Seed, k: int) -> Seed:
    """Mutation at the 0-based vertex ``k``."""
    n = seed.rank
    if not 0 <= k < n:
        raise ValueError(f"no vertex {k + 1} to mutate at")
    b, x = seed.matrix, seed.variables
    nvars = x[0].nvars
    plus = LaurentPoly.one(nvars)
    minus = LaurentPoly.one(nvars)
    for i in range(n):
        if b[i][k] > 0:
            plus = plus * x[i] ** b[i][k]
        elif b[i][k] < 0:
            minus = minus * x[i] ** (-b[i][k])
    try:
        new = (plus + minus).exact_div(x[k])
    except NotDivisibleError as exc:
        raise LaurentPhenomenonError(f"exchange at vertex {k + 1} is not Laurent") from exc
    variables = x[:k] + (new,) + x[k + 1:]
    return Seed(mutate_matrix(b, k), variables)


def mutate_sequence(seed: Seed, ks: Iterable[int]) -> Seed:
    for k in ks:
        seed = mutate(seed, k)
    return seed


def explore(q: Quiver, depth: int) -> list[tuple[Seed, tuple[int, ...]]]:
    """Breadth-first exploration of seeds reachable by at most ``depth`` mutations.

    Seeds are deduplicated by exact equality of (matrix, variable tuple), so
    permuted copies of a seed are revisited.  Returns (seed, mutation path).
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    start = initial_seed(q)
    seen = {start: ()}
    lock = threading.Lock()
    order = [(start, ())]
    frontier = deque([(start, (), 0)])
    while frontier:
        seed, path, d = frontier.popleft()
        if d == depth:
            continue
        for k in range(seed.rank):
            if path and path[-1] == k:
                continue
            nxt = mutate(seed, k)
            with lock:
                if nxt in seen:
                    continue
                seen[nxt] = path + (k,)
            order.append((nxt, path + (k,)))
            frontier.append((nxt, path + (k,), d + 1))
    return order


def enumerate_cluster_variables(q: Quiver, depth: int) -> list[LaurentPoly]:
    """Distinct cluster variables met within ``depth`` mutations, in discovery order."""
    out: dict[LaurentPoly, None] = {}
    for seed, _ in explore(q, depth):
        for v in seed.variables:
            out.setdefault(v, None)
    return list(out)


def _positive_den(v: LaurentPoly) -> tuple[int, ...]:
    return v.denominator_vector()


def cluster_monomials(q: Quiver, depth: int, degree_bound: int,
                      den_bound: Sequence[int] | None = None) -> dict[LaurentPoly, tuple[int, ...]]:
    """Cluster monomials of total degree at most ``degree_bound``, keyed to their dens.

    With ``den_bound`` only monomials with ``|den_i| <= den_bound[i]`` are
    built; dens are predicted additively (cluster variables have positive
    coefficients, so minimal exponents add) and confirmed on the product.
    """
    n = q.vertex_count
    out: dict[LaurentPoly, tuple[int, ...]] = {}
    for seed, _ in explore(q, depth):
        dens = [_positive_den(v) for v in seed.variables]
        for exps in product(range(degree_bound + 1), repeat=n):
            if sum(exps) > degree_bound:
                continue
            den = tuple(sum(a * d[i] for a, d in zip(exps, dens)) for i in range(n))
            if den_bound is not None and any(abs(x) > b for x, b in zip(den, den_bound)):
                continue
            mono = LaurentPoly.one(n)
            for a, v in zip(exps, seed.variables):
                if a:
                    mono = mono * v ** a
            if mono in out:
                continue
            actual = mono.denominator_vector()
            if actual != den:
                raise AssertionError("denominator vectors of a cluster monomial did not add")
            out[mono] = den
    return out


def inverse_substitution(seed_path: Sequence[int], q: Quiver) -> tuple[Seed, tuple[LaurentPoly, ...]]:
    """The seed reached by ``seed_path`` and the initial ``u_i`` in its variables.

    Mutating back along the reversed path from a seed with formal variables
    ``y`` yields each ``u_i`` as a Laurent polynomial in ``y``.
    """
    target = mutate_sequence(initial_seed(q), seed_path)
    n = q.vertex_count
    formal = Seed(target.matrix, tuple(LaurentPoly.var(n, i) for i in range(n)))
    back = mutate_sequence(formal, reversed(tuple(seed_path)))
    if back.matrix != exchange_matrix(q):
        raise AssertionError("mutating back did not return to the initial matrix")
    return target, back.variables


def expand_in_cluster(element: LaurentPoly, seed_path: Sequence[int], q: Quiver) -> LaurentPoly:
    """Rewrite ``element`` (in the initial cluster) in the cluster reached by ``seed_path``."""
    _, u_in_y = inverse_substitution(seed_path, q)
    den = element.denominator_vector()
    top = element.numerator().substitute(u_in_y)
    n = q.vertex_count
    divisor = LaurentPoly.one(n)
    for i, d in enumerate(den):
        if d > 0:
            divisor = divisor * u_in_y[i] ** d
        elif d < 0:
            top = top * u_in_y[i] ** (-d)
    try:
        return top.exact_div(divisor)
    except NotDivisibleError as exc:
        raise LaurentPhenomenonError("element is not Laurent in the target cluster") from exc
