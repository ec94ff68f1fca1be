"""Quivers, the Euler form and affine root data.

Vertices are 1-based in every user-facing format and 0-based internally.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterable, Sequence


class QuiverError(ValueError):
    """Raised for malformed, cyclic or disconnected quivers."""


class NotAffineError(ValueError):
    """Raised when an operation needs an affine quiver and gets something else."""


@dataclass(frozen=True)
class Quiver:
    """An acyclic connected quiver.

    ``arrows`` holds ``(source, target)`` pairs with 0-based vertex ids; repeated
    pairs encode multiple arrows.  The arrow index is its position in the tuple.
    """

    vertex_count: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        n = self.vertex_count
        if n < 1:
            raise QuiverError("a quiver needs at least one vertex")
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        for s, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise QuiverError(f"arrow {s + 1}->{t + 1} references a missing vertex")
            if s == t:
                raise QuiverError(f"loop at vertex {s + 1}")
        if self._topological_order() is None:
            raise QuiverError("quiver has an oriented cycle")
        if not self._connected():
            raise QuiverError("underlying graph is not connected")

    # -- structure ---------------------------------------------------------

    def _topological_order(self) -> list[int] | None:
        indeg = [0] * self.vertex_count
        for _, t in self.arrows:
            indeg[t] += 1
        ready = [v for v in range(self.vertex_count) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return order if len(order) == self.vertex_count else None

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        return tuple(self._topological_order())

    def neighbours(self, v: int) -> set[int]:
        out = set()
        for s, t in self.arrows:
            if s == v:
                out.add(t)
            elif t == v:
                out.add(s)
        return out

    def arrows_from(self, v: int) -> list[int]:
        return [a for a, (s, _) in enumerate(self.arrows) if s == v]

    def arrows_to(self, v: int) -> list[int]:
        return [a for a, (_, t) in enumerate(self.arrows) if t == v]

    @cached_property
    def arrow_matrix(self) -> tuple[tuple[int, ...], ...]:
        """``A[i][j]`` = number of arrows i -> j."""
        n = self.vertex_count
        a = [[0] * n for _ in range(n)]
        for s, t in self.arrows:
            a[s][t] += 1
        return tuple(tuple(row) for row in a)

    @cached_property
    def euler_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Gram matrix ``E = I - A`` of the Euler form, ``<e, f> = e^T E f``."""
        n = self.vertex_count
        a = self.arrow_matrix
        return tuple(tuple((1 if i == j else 0) - a[i][j] for j in range(n)) for i in range(n))

    def simple(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.vertex_count))

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "arrows": [[s + 1, t + 1] for s, t in self.arrows]}

    def __str__(self) -> str:
        arrows = ", ".join(f"{s + 1}->{t + 1}" for s, t in self.arrows)
        return f"Quiver({self.vertex_count}; {arrows})"


# -- construction ------------------------------------------------------------


def parse_quiver(text: str) -> Quiver:
    """Parse the text or JSON quiver format.

    Text form::

        vertices: 3
        arrows:
        1 2
        2 3
        1 3

    Pairs may also be comma separated on the ``arrows:`` line itself.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
            n = int(data["vertices"])
            pairs = [(int(s), int(t)) for s, t in data["arrows"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver JSON: {exc}") from exc
        return _from_one_based(n, pairs)

    m = re.match(r"vertices\s*:\s*(\d+)\s*(?:/|\n|;)?\s*arrows\s*:(.*)\Z", text, re.S)
    if m is None:
        raise QuiverError("expected 'vertices: <n>' followed by 'arrows:'")
    n = int(m.group(1))
    pairs = []
    for chunk in re.split(r"[,\n]", m.group(2)):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise QuiverError(f"malformed arrow line {chunk!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return _from_one_based(n, pairs)


def _from_one_based(n: int, pairs: Iterable[tuple[int, int]]) -> Quiver:
    arrows = []
    for s, t in pairs:
        if not (1 <= s <= n and 1 <= t <= n):
            raise QuiverError(f"arrow {s} {t} references a vertex outside 1..{n}")
        arrows.append((s - 1, t - 1))
    return Quiver(n, tuple(arrows))


def affine_a(r: int, s: int) -> Quiver:
    """Affine type A~_{r,s} with one source and one sink.

    Vertex 1 is the source and vertex r+s the sink.  The first path
    ``1 -> 2 -> ... -> r -> r+s`` has r arrows and is listed first; the second
    path runs through ``r+1, ..., r+s-1`` and has s arrows.
    """
    if r < 1 or s < 1:
        raise QuiverError("A~_{r,s} needs r, s >= 1")
    n = r + s
    sink = n - 1
    path_a = [0] + list(range(1, r)) + [sink]
    path_b = [0] + list(range(r, r + s - 1)) + [sink]
    arrows = list(zip(path_a, path_a[1:])) + list(zip(path_b, path_b[1:]))
    return Quiver(n, tuple(arrows))


def kronecker() -> Quiver:
    return affine_a(1, 1)


ALIASES = {"kronecker": kronecker, "a21": lambda: affine_a(2, 1), "a31": lambda: affine_a(3, 1)}


def quiver_from_alias(name: str) -> Quiver:
    """Resolve ``kronecker``, ``a21``, ``a31`` or ``a_{r,s}`` / ``a_r_s``."""
    key = name.strip().lower()
    if key in ALIASES:
        return ALIASES[key]()
    m = re.fullmatch(r"a_?\{?(\d+)[,_](\d+)\}?", key)
    if m:
        return affine_a(int(m.group(1)), int(m.group(2)))
    raise QuiverError(f"unknown quiver alias {name!r}")


# -- forms -------------------------------------------------------------------


def _check_len(q: Quiver, *vectors: Sequence[int]) -> None:
    for v in vectors:
        if len(v) != q.vertex_count:
            raise ValueError(f"vector {tuple(v)} has length {len(v)}, expected {q.vertex_count}")


def euler_form(q: Quiver, e: Sequence[int], f: Sequence[int]) -> int:
    """``<e, f> = sum_i e_i f_i - sum_{a: i->j} e_i f_j``."""
    _check_len(q, e, f)
    value = sum(x * y for x, y in zip(e, f))
    for s, t in q.arrows:
        value -= e[s] * f[t]
    return value


def tits_form(q: Quiver, d: Sequence[int]) -> int:
    return euler_form(q, d, d)


@dataclass(frozen=True)
class AffineData:
    affine_type: str
    delta: tuple[int, ...]


def _rational_kernel(matrix: list[list[int]]) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in row] for row in matrix]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][free]
        basis.append(v)
    return basis


def _is_positive_semidefinite(sym: list[list[int]]) -> bool:
    """Exact test via principal minors of every size (small matrices only)."""
    from itertools import combinations

    n = len(sym)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if _det([[Fraction(sym[i][j]) for j in idx] for i in idx]) < 0:
                return False
    return True


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def classify_affine(q: Quiver) -> AffineData:
    """Affine type label and minimal imaginary root of ``q``.

    ``delta`` is the primitive positive generator of the radical of the
    symmetrized Euler form.
    """
    return _classify_cached(q)


_AFFINE_CACHE: dict[Quiver, AffineData] = {}


def _classify_cached(q: Quiver) -> AffineData:
    hit = _AFFINE_CACHE.get(q)
    if hit is not None:
        return hit
    n = q.vertex_count
    e = q.euler_matrix
    sym = [[e[i][j] + e[j][i] for j in range(n)] for i in range(n)]
    if not _is_positive_semidefinite(sym):
        raise NotAffineError("symmetrized Euler form is indefinite (wild type)")
    kernel = _rational_kernel(sym)
    if not kernel:
        raise NotAffineError("symmetrized Euler form is positive definite (finite type)")
    if len(kernel) > 1:
        raise NotAffineError("radical has rank > 1")
    vec = kernel[0]
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if min(ints) <= 0:
        raise NotAffineError("radical generator is not positive")
    data = AffineData(_type_label(q, ints), tuple(ints))
    _AFFINE_CACHE[q] = data
    return data


def _type_label(q: Quiver, delta: list[int]) -> str:
    n = q.vertex_count
    top = max(delta)
    if top == 1:
        clockwise = _cycle_orientation_counts(q)
        r, s = sorted(clockwise, reverse=True)
        return f"A~{{{r},{s}}}"
    if top == 2:
        return f"D~{n - 1}"
    return {3: "E~6", 4: "E~7", 6: "E~8"}[top]


def _cycle_orientation_counts(q: Quiver) -> tuple[int, int]:
    """Arrows going each way around the underlying cycle of an A~ quiver."""
    cycle = cycle_walk(q)
    forward = sum(1 for _, sign in cycle if sign > 0)
    return forward, len(cycle) - forward


def cycle_walk(q: Quiver) -> list[tuple[int, int]]:
    """Traverse the underlying cycle of an A~ quiver starting at vertex 0.

    Returns ``(arrow, sign)`` steps: sign +1 when the arrow is walked along its
    orientation.  The walk leaves vertex 0 along its lowest-index arrow.
    """
    if len(q.arrows) != q.vertex_count:
        raise NotAffineError("not of type A~")
    steps = []
    v = 0
    used: set[int] = set()
    for _ in range(q.vertex_count):
        choices = [a for a, (s, t) in enumerate(q.arrows) if a not in used and v in (s, t)]
        if not choices:
            raise NotAffineError("underlying graph is not a cycle")
        a = min(choices)
        s, t = q.arrows[a]
        used.add(a)
        if s == v:
            steps.append((a, 1))
            v = t
        else:
            steps.append((a, -1))
            v = s
    if v != 0:
        raise NotAffineError("underlying graph is not a cycle")
    return steps


def defect(q: Quiver, d: Sequence[int]) -> int:
    """``<delta, d>``: negative on preprojectives, positive on preinjectives."""
    return euler_form(q, classify_affine(q).delta, d)


def coxeter_matrix(q: Quiver) -> list[list[Fraction]]:
    """Matrix of c with ``<g, c(b)> = -<b, g>``, i.e. ``c = -E^{-1} E^T``."""
    n = q.vertex_count
    e = [[Fraction(x) for x in row] for row in q.euler_matrix]
    inv = _inverse(e)
    et = [[e[j][i] for j in range(n)] for i in range(n)]
    return [[-sum(inv[i][k] * et[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        # E = I - A is unitriangular after topological sorting, so never singular.
        assert piv is not None, "singular Euler matrix"
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def coxeter_transform(q: Quiver, d: Sequence[int], power: int = 1) -> tuple[int, ...]:
    _check_len(q, d)
    c = coxeter_matrix(q)
    if power < 0:
        c = _inverse(c)
        power = -power
    vec = [Fraction(x) for x in d]
    for _ in range(power):
        vec = [sum(row[j] * vec[j] for j in range(len(vec))) for row in c]
    assert all(x.denominator == 1 for x in vec)
    return tuple(int(x) for x in vec)


def enumerate_roots(q: Quiver, bound: Sequence[int]) -> list[tuple[tuple[int, ...], str]]:
    """Positive roots ``0 < d <= bound`` tagged ``"real"`` or ``"imaginary"``.

    Box scan of the Tits form: real iff q(d) = 1, imaginary iff q(d) = 0.
    """
    _check_len(q, bound)
    classify_affine(q)
    found = []
    for d in product(*(range(b + 1) for b in bound)):
        if not any(d):
            continue
        value = tits_form(q, d)
        if value == 1:
            found.append((d, "real"))
        elif value == 0:
            found.append((d, "imaginary"))
    return found


def is_real_root(q: Quiver, d: Sequence[int]) -> bool:
    return all(x >= 0 for x in d) and any(d) and tits_form(q, d) == 1
