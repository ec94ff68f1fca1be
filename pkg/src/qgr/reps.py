"""Explicit quiver representations over prime fields and tube modules of type A~.

The A~ constructors assume the orientation with a single source ``x`` and a
single sink ``y`` joined by two paths.  Path ``A`` is the one through the
lowest-index arrow; with :func:`qgr.quiver.affine_a` it has ``r`` arrows and
path ``B`` has ``s``.  Each path of length at least two contributes an
exceptional tube whose rank is that length; the tube named after a path is
realized by string modules that use every arrow of the *other* path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence, Union

from . import fp
from .quiver import NotAffineError, Quiver, classify_affine, cycle_walk, euler_form, parse_quiver, tits_form

Matrix = tuple[tuple[int, ...], ...]
INF = "inf"


class RepError(ValueError):
    """Invalid representation data or an impossible module request."""


def _freeze(m: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


@dataclass(frozen=True)
class Rep:
    """A representation of ``quiver`` over ``F_p``.

    ``matrices[a]`` is the ``dims[t] x dims[s]`` matrix of arrow ``a: s -> t``.
    ``lift`` keeps the integer entries the module was defined with, so the
    same abstract module can be rebuilt over another prime by :meth:`over`.
    ``avoid`` lists integers that must stay nonzero modulo any prime used
    (band parameters), and :meth:`admits` tests that.
    """

    quiver: Quiver
    p: int
    dims: tuple[int, ...]
    matrices: tuple[Matrix, ...]
    lift: tuple[Matrix, ...] | None = field(default=None, compare=False)
    avoid: tuple[int, ...] = field(default=(), compare=False)
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        q = self.quiver
        dims = tuple(int(x) for x in self.dims)
        if len(dims) != q.vertex_count or min(dims) < 0:
            raise RepError(f"dimension vector {dims} does not fit the quiver")
        if len(self.matrices) != len(q.arrows):
            raise RepError(f"need {len(q.arrows)} matrices, got {len(self.matrices)}")
        raw = tuple(_freeze(m) for m in self.matrices)
        for a, ((s, t), m) in enumerate(zip(q.arrows, raw)):
            if len(m) != dims[t] or any(len(row) != dims[s] for row in m):
                raise RepError(f"arrow {a + 1} needs a {dims[t]}x{dims[s]} matrix")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrices", tuple(_freeze((x % self.p for x in row) for row in m) for m in raw))
        if self.lift is None:
            object.__setattr__(self, "lift", raw)
        object.__setattr__(self, "avoid", tuple(int(x) for x in self.avoid))

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def matrix(self, a: int) -> list[list[int]]:
        return [list(row) for row in self.matrices[a]]

    def admits(self, p: int) -> bool:
        return all(x % p for x in self.avoid)

    def over(self, p: int) -> Rep:
        """The module with the same integer data over ``F_p``."""
        if p == self.p:
            return self
        if not self.admits(p):
            raise RepError(f"{self.label or 'module'} is not defined over F_{p}")
        return Rep(self.quiver, p, self.dims, self.lift, self.lift, self.avoid, self.label)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def to_json_obj(self) -> dict:
        return {
            "quiver": self.quiver.to_dict(),
            "p": self.p,
            "dims": list(self.dims),
            "matrices": {str(a): [list(r) for r in m] for a, m in enumerate(self.matrices)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def rep_from_json(data: str | dict) -> Rep:
    """Parse ``{"quiver", "p", "dims", "matrices": {"<arrow>": rows}}``.

    Arrow keys are 0-based positions in the quiver's arrow list.  Missing
    arrows default to zero matrices.
    """
    obj = json.loads(data) if isinstance(data, str) else data
    qdata = obj["quiver"]
    q = parse_quiver(json.dumps(qdata) if isinstance(qdata, dict) else str(qdata))
    dims = tuple(int(x) for x in obj["dims"])
    mats = []
    given = {int(k): v for k, v in obj.get("matrices", {}).items()}
    for a, (s, t) in enumerate(q.arrows):
        m = given.get(a)
        mats.append(m if m is not None else [[0] * dims[s] for _ in range(dims[t])])
    return Rep(q, int(obj["p"]), dims, tuple(_freeze(m) for m in mats), label="json")


def zero_rep(q: Quiver, p: int) -> Rep:
    n = q.vertex_count
    return Rep(q, p, (0,) * n, tuple(() for _ in q.arrows))


def simple_rep(q: Quiver, i: int, p: int) -> Rep:
    dims = q.simple(i)
    return Rep(q, p, dims, tuple(_freeze([[0] * dims[s]] * dims[t]) for s, t in q.arrows), label=f"S{i + 1}")


def direct_sum(m: Rep, n: Rep) -> Rep:
    if m.quiver != n.quiver or m.p != n.p:
        raise RepError("direct sum needs the same quiver and field")

    def block(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], ca: int, cb: int) -> list[list[int]]:
        return [list(r) + [0] * cb for r in a] + [[0] * ca + list(r) for r in b]

    dims = tuple(x + y for x, y in zip(m.dims, n.dims))
    mats, lifts = [], []
    for a, (s, _) in enumerate(m.quiver.arrows):
        mats.append(block(m.matrices[a], n.matrices[a], m.dims[s], n.dims[s]))
        lifts.append(block(m.lift[a], n.lift[a], m.dims[s], n.dims[s]))
    return Rep(m.quiver, m.p, dims, tuple(mats), tuple(_freeze(x) for x in lifts), m.avoid + n.avoid)


# -- subrepresentations ----------------------------------------------------------

Subspaces = tuple[fp.Matrix, ...]


def is_subrep(m: Rep, sub: Sequence[Sequence[Sequence[int]]]) -> bool:
    """Whether per-vertex subspaces (row bases) are stable under every arrow."""
    p = m.p
    for a, (s, t) in enumerate(m.quiver.arrows):
        target = fp.span(sub[t], p)
        if not fp.contains(target, fp.image(m.matrix(a), sub[s], p), p):
            return False
    return True


def coordinate_subspaces(dims: Sequence[int], sub_dims: Sequence[int]) -> Subspaces:
    """The span of the first ``sub_dims[v]`` basis vectors at each vertex."""
    return tuple([[int(i == j) for i in range(d)] for j in range(k)] for d, k in zip(dims, sub_dims))


def _coordinates(basis: fp.Matrix, pivots: Sequence[int], v: Sequence[int]) -> list[int]:
    return [v[c] for c in pivots]


def sub_rep(m: Rep, sub: Sequence[Sequence[Sequence[int]]]) -> Rep:
    """The subrepresentation spanned by ``sub``, in the RREF bases of ``sub``."""
    if not is_subrep(m, sub):
        raise RepError("subspaces are not arrow-stable")
    p = m.p
    red = [fp.rref(b, p) for b in sub]
    mats = []
    for a, (s, t) in enumerate(m.quiver.arrows):
        basis_t, piv_t = red[t]
        cols = [_coordinates(basis_t, piv_t, fp.mat_vec(m.matrix(a), b, p)) for b in red[s][0]]
        mats.append([[cols[j][i] for j in range(len(cols))] for i in range(len(basis_t))])
    return Rep(m.quiver, p, tuple(len(r[0]) for r in red), tuple(_freeze(x) for x in mats))


def quotient_rep(m: Rep, sub: Sequence[Sequence[Sequence[int]]]) -> Rep:
    """``M / N`` in the basis of standard vectors at the non-pivot columns of N."""
    if not is_subrep(m, sub):
        raise RepError("subspaces are not arrow-stable")
    p = m.p
    red = [fp.rref(b, p) for b in sub]
    free = [[c for c in range(d) if c not in set(r[1])] for d, r in zip(m.dims, red)]
    mats = []
    for a, (s, t) in enumerate(m.quiver.arrows):
        basis_t, piv_t = red[t]
        cols = []
        for c in free[s]:
            e = [int(i == c) for i in range(m.dims[s])]
            w = fp.reduce_mod(basis_t, piv_t, fp.mat_vec(m.matrix(a), e, p), p)
            cols.append([w[r] for r in free[t]])
        mats.append([[cols[j][i] for j in range(len(cols))] for i in range(len(free[t]))])
    return Rep(m.quiver, p, tuple(len(f) for f in free), tuple(_freeze(x) for x in mats))


# -- Hom and Ext ---------------------------------------------------------------


def _hom_system(m: Rep, n: Rep) -> tuple[list[list[int]], list[tuple[int, int, int]]]:
    """Linear system whose kernel is Hom(M, N); unknowns are ``f_v[r][c]``."""
    if m.quiver != n.quiver or m.p != n.p:
        raise RepError("Hom needs the same quiver and field")
    q, p = m.quiver, m.p
    index = []
    offset = {}
    for v in range(q.vertex_count):
        offset[v] = len(index)
        index.extend((v, r, c) for r in range(n.dims[v]) for c in range(m.dims[v]))
    total = len(index)
    rows = []
    for a, (s, t) in enumerate(q.arrows):
        ma, na = m.matrices[a], n.matrices[a]
        # (f_t M(a) - N(a) f_s)[r][c] = sum_k f_t[r][k] M(a)[k][c] - sum_k N(a)[r][k] f_s[k][c]
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                eq = [0] * total
                for k in range(m.dims[t]):
                    if ma[k][c]:
                        eq[offset[t] + r * m.dims[t] + k] += ma[k][c]
                for k in range(n.dims[s]):
                    if na[r][k]:
                        eq[offset[s] + k * m.dims[s] + c] -= na[r][k]
                rows.append([x % p for x in eq])
    return rows, index


def hom_dim(m: Rep, n: Rep) -> int:
    rows, index = _hom_system(m, n)
    return len(index) - fp.rank(rows, m.p)


def hom_basis(m: Rep, n: Rep) -> list[tuple[fp.Matrix, ...]]:
    """Basis of Hom(M, N) as tuples of per-vertex matrices."""
    rows, index = _hom_system(m, n)
    out = []
    for vec in fp.kernel(rows, len(index), m.p):
        mats = [[[0] * m.dims[v] for _ in range(n.dims[v])] for v in range(m.quiver.vertex_count)]
        for x, (v, r, c) in zip(vec, index):
            mats[v][r][c] = x
        out.append(tuple(mats))
    return out


def hom_ext_dims(m: Rep, n: Rep) -> tuple[int, int]:
    """``(dim Hom(M,N), dim Ext^1(M,N))``; Ext from the Euler form (hereditary)."""
    h = hom_dim(m, n)
    return h, h - euler_form(m.quiver, m.dims, n.dims)


def is_rigid(m: Rep) -> bool:
    return hom_ext_dims(m, m)[1] == 0


def is_indecomposable(m: Rep, limit: int = 200_000) -> bool:
    """Brute force: End(M) is local iff each endomorphism is nilpotent or invertible.

    Enumerates all ``p^dim End`` endomorphisms; raises if that exceeds ``limit``.
    """
    if m.is_zero():
        return False
    basis = hom_basis(m, m)
    p = m.p
    if p ** len(basis) > limit:
        raise RepError("endomorphism ring too large to enumerate")
    n = m.quiver.vertex_count
    for coeffs in product(range(p), repeat=len(basis)):
        f = [[[sum(c * b[v][i][j] for c, b in zip(coeffs, basis)) % p for j in range(m.dims[v])]
              for i in range(m.dims[v])] for v in range(n)]
        ranks = [fp.rank(f[v], p) if m.dims[v] else 0 for v in range(n)]
        if all(r == d for r, d in zip(ranks, m.dims)):
            continue
        g = f
        for _ in range(max(m.dims)):
            g = [fp.mat_mul(g[v], f[v], p) if m.dims[v] else [] for v in range(n)]
        if any(any(any(row) for row in g[v]) for v in range(n)):
            return False
    return True


# -- the cycle of an A~ quiver ---------------------------------------------------


@dataclass(frozen=True)
class CycleData:
    source: int
    sink: int
    path_a: tuple[int, ...]
    path_b: tuple[int, ...]

    def interior(self, path: Sequence[int], q: Quiver) -> list[int]:
        return [q.arrows[a][1] for a in path[:-1]]


def cycle_data(q: Quiver) -> CycleData:
    """Source, sink and the two source-to-sink paths of a canonical A~ quiver."""
    n = q.vertex_count
    if len(q.arrows) != n:
        raise NotAffineError("tube constructors need a quiver of type A~")
    sources = [v for v in range(n) if not q.arrows_to(v)]
    sinks = [v for v in range(n) if not q.arrows_from(v)]
    if len(sources) != 1 or len(sinks) != 1:
        raise NotAffineError("tube constructors need the A~ orientation with one source and one sink")
    x, y = sources[0], sinks[0]
    paths = []
    for a in sorted(q.arrows_from(x)):
        path = [a]
        v = q.arrows[a][1]
        while v != y:
            out = q.arrows_from(v)
            if len(out) != 1:
                raise NotAffineError("not of type A~")
            path.append(out[0])
            v = q.arrows[out[0]][1]
        paths.append(tuple(path))
    if len(paths) != 2:
        raise NotAffineError("not of type A~")
    return CycleData(x, y, paths[0], paths[1])


def tube_ranks(q: Quiver) -> dict[str, int]:
    c = cycle_data(q)
    return {"A": len(c.path_a), "B": len(c.path_b)}


def _lambda_paths(q: Quiver) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(path carrying the band parameter, the other path).

    The parameter sits on the longer path; on a tie, on the path whose last
    arrow has the larger index.
    """
    c = cycle_data(q)
    a, b = c.path_a, c.path_b
    if (len(a), a[-1]) > (len(b), b[-1]):
        return a, b
    return b, a


def degenerate_parameters(q: Quiver) -> frozenset:
    """Band parameters whose module lands in an exceptional tube."""
    lam_path, other = _lambda_paths(q)
    out = set()
    if len(lam_path) >= 2:
        out.add(0)
    if len(other) >= 2:
        out.add(INF)
    return frozenset(out)


def _normalize_lambda(lam: int | str) -> int | str:
    if isinstance(lam, str):
        if lam.lower() in ("inf", "infinity", "oo"):
            return INF
        return int(lam)
    return int(lam)


def _jordan(l: int, lam: int) -> list[list[int]]:
    return [[lam if i == j else 1 if j == i + 1 else 0 for j in range(l)] for i in range(l)]


def build_band_module(q: Quiver, lam: int | str, l: int, p: int) -> Rep:
    """``M_lam^{(l)}``: identities everywhere except one Jordan block.

    For a finite ``lam`` the block ``J_l(lam)`` sits on the last arrow of the
    parameter path; ``lam = "inf"`` puts ``J_l(0)`` on the last arrow of the
    other path instead.
    """
    if l < 1:
        raise RepError("band modules need quasi-length >= 1")
    lam = _normalize_lambda(lam)
    classify_affine(q)
    lam_path, other = _lambda_paths(q)
    if lam != INF and lam % p == 0 and lam != 0:
        raise RepError(f"lambda={lam} vanishes over F_{p}")
    key = INF if lam == INF else (0 if lam % p == 0 else lam)
    if key in degenerate_parameters(q):
        raise RepError(f"lambda={lam} is a degenerate parameter for this quiver")
    ident = fp.identity(l)
    mats = [ident for _ in q.arrows]
    if lam == INF:
        mats[other[-1]] = _jordan(l, 0)
    else:
        mats[lam_path[-1]] = _jordan(l, lam)
    avoid = (lam,) if lam not in (INF, 0) else ()
    return Rep(q, p, (l,) * q.vertex_count, tuple(_freeze(m) for m in mats), avoid=avoid,
               label=f"M_{lam}^({l})")


# -- string modules -------------------------------------------------------------


@dataclass(frozen=True)
class StringData:
    """Nodes of a walk (their vertices) and coefficient edges ``(arrow, src, dst)``."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]


def walk_string(q: Quiver, start: int, steps: Sequence[tuple[int, int]]) -> StringData:
    """Nodes and edges of the walk from ``start`` along ``(arrow, sign)`` steps.

    A step with sign +1 follows the arrow; sign -1 walks it backwards, so the
    arrow maps the next node onto the current one.
    """
    verts = [start]
    edges = []
    v = start
    for k, (a, sign) in enumerate(steps):
        s, t = q.arrows[a]
        if sign > 0:
            if s != v:
                raise RepError(f"step {k}: arrow {a + 1} does not start at vertex {v + 1}")
            edges.append((a, k, k + 1))
            v = t
        else:
            if t != v:
                raise RepError(f"step {k}: arrow {a + 1} does not end at vertex {v + 1}")
            edges.append((a, k + 1, k))
            v = s
        verts.append(v)
    return StringData(tuple(verts), tuple(edges))


def string_module(q: Quiver, data: StringData, p: int, label: str = "") -> Rep:
    """Basis vector per node, ordered at each vertex by position along the walk."""
    n = q.vertex_count
    pos = []
    counts = [0] * n
    for v in data.vertices:
        pos.append(counts[v])
        counts[v] += 1
    mats = [[[0] * counts[s] for _ in range(counts[t])] for s, t in q.arrows]
    for a, src, dst in data.edges:
        mats[a][pos[dst]][pos[src]] = 1
    return Rep(q, p, tuple(counts), tuple(_freeze(m) for m in mats), label=label)


def _tube_chunks(q: Quiver, tube: str) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Chunks of the exceptional tube named ``tube``.

    Returns (chunk vertices, forward arrows inside each chunk, link arrows).
    Link ``j`` joins the end of chunk ``j`` to the start of chunk ``j+1`` and
    is walked backwards.  Chunk 0 is the quasi-simple along the other path.
    """
    c = cycle_data(q)
    own, other = (c.path_a, c.path_b) if tube == "A" else (c.path_b, c.path_a)
    rank = len(own)
    chunk0 = [c.source] + [q.arrows[a][1] for a in other]
    chunks = [chunk0]
    inner = [list(other)]
    own_inner = [q.arrows[a][1] for a in own[:-1]]
    for j in range(1, rank):
        chunks.append([own_inner[rank - 1 - j]])
        inner.append([])
    links = [own[rank - 1 - j] for j in range(rank)]
    return chunks, inner, links


@dataclass(frozen=True)
class TubePoint:
    """Coordinates of ``R_i^{(l)}`` in a tube of ``quiver``.

    ``tube`` is ``"A"`` or ``"B"`` for the tubes realized by strings (see the
    module docstring), or ``"band"`` for the homogeneous tube of parameter
    ``lam``.  ``socle`` is taken mod ``rank``.
    """

    quiver: Quiver
    tube: str
    rank: int
    socle: int
    length: int
    lam: int | str | None = None

    def __post_init__(self) -> None:
        if self.tube not in ("A", "B", "band"):
            raise RepError(f"unknown tube {self.tube!r}")
        if self.rank < 1:
            raise RepError("tube rank must be positive")
        if self.length < 0:
            raise RepError("quasi-length must be nonnegative")
        if self.tube == "band" and self.rank != 1:
            raise RepError("homogeneous tubes have rank 1")
        object.__setattr__(self, "socle", self.socle % self.rank)
        if self.lam is not None:
            object.__setattr__(self, "lam", _normalize_lambda(self.lam))

    def with_length(self, length: int, socle: int | None = None) -> TubePoint:
        return TubePoint(self.quiver, self.tube, self.rank, self.socle if socle is None else socle, length, self.lam)

    @property
    def is_rigid(self) -> bool:
        return self.length < self.rank

    @cached_property
    def dim_vector(self) -> tuple[int, ...]:
        delta = classify_affine(self.quiver).delta
        full, rest = divmod(self.length, self.rank)
        extra = [0] * self.quiver.vertex_count
        if rest:
            for v, k in zip(range(self.quiver.vertex_count), build_regular(self.with_length(rest), 2).dims):
                extra[v] = k
        return tuple(full * d + e for d, e in zip(delta, extra))

    def describe(self) -> str:
        if self.tube == "band":
            return f"M_{self.lam}^({self.length})"
        return f"R{self.tube}_{self.socle}^({self.length})"


def tube_point(q: Quiver, tube: str, socle: int = 0, length: int = 1, lam: int | str | None = None) -> TubePoint:
    if tube == "band":
        if lam is None:
            raise RepError("band tube needs a parameter")
        lam = _normalize_lambda(lam)
        if lam in degenerate_parameters(q):
            raise RepError(f"lambda={lam} is a degenerate parameter for this quiver")
        return TubePoint(q, "band", 1, 0, length, lam)
    rank = tube_ranks(q)[tube]
    return TubePoint(q, tube, rank, socle, length)


def _tube_walk(t: TubePoint) -> tuple[int, list[tuple[int, int]], list[int]]:
    """Start vertex, walk steps, and nodes-per-chunk for a string tube module."""
    chunks, inner, links = _tube_chunks(t.quiver, t.tube)
    rank = len(chunks)
    steps: list[tuple[int, int]] = []
    sizes = []
    for k in range(t.length):
        j = (t.socle + k) % rank
        if k:
            steps.append((links[(j - 1) % rank], -1))
        steps.extend((a, 1) for a in inner[j])
        sizes.append(len(chunks[j]))
    return chunks[t.socle][0], steps, sizes


def build_regular(t: TubePoint, p: int) -> Rep:
    """Explicit representation of the tube module ``t`` over ``F_p``."""
    q = t.quiver
    if t.length == 0:
        return zero_rep(q, p)
    if t.tube == "band":
        return build_band_module(q, t.lam, t.length, p)
    start, steps, _ = _tube_walk(t)
    return string_module(q, walk_string(q, start, steps), p, label=t.describe())


@dataclass(frozen=True)
class ChainStep:
    """``R_i^{(j)}`` inside ``R_i^{(l)}``: its subspaces, own realization and embedding."""

    length: int
    subspaces: Subspaces
    rep: Rep
    embedding: tuple[fp.Matrix, ...]


def canonical_chain(t: TubePoint, p: int) -> list[ChainStep]:
    """``0 = R_i^{(0)} ⊂ R_i^{(1)} ⊂ ... ⊂ R_i^{(l)}`` with coordinate embeddings.

    Both constructors list basis vectors so that ``R_i^{(j)}`` occupies the
    leading coordinates at every vertex of ``R_i^{(l)}``.
    """
    big = build_regular(t, p)
    out = []
    for j in range(t.length + 1):
        small = build_regular(t.with_length(j), p)
        subs = coordinate_subspaces(big.dims, small.dims)
        emb = tuple([[int(r == c) for c in range(k)] for r in range(d)] for d, k in zip(big.dims, small.dims))
        out.append(ChainStep(j, subs, small, emb))
    return out


def ar_translate(t: TubePoint, steps: int = 1) -> TubePoint:
    """``tau^steps``: socle index moves by ``-steps`` mod rank."""
    return t.with_length(t.length, (t.socle - steps) % t.rank)


# -- rigid modules by dimension vector -------------------------------------------


def cycle_strings(q: Quiver, length: int) -> Iterable[StringData]:
    """All walks with ``length`` steps going one way round the cycle of an A~ quiver."""
    cyc = cycle_walk(q)
    n = len(cyc)
    positions = [0]
    for a, sign in cyc:
        s, t = q.arrows[a]
        positions.append(t if sign > 0 else s)
    for k in range(n):
        yield walk_string(q, positions[k], [cyc[(k + i) % n] for i in range(length)])
        if length:
            back = [(cyc[(k - 1 - i) % n][0], -cyc[(k - 1 - i) % n][1]) for i in range(length)]
            yield walk_string(q, positions[k], back)


def rigid_indecomposable(q: Quiver, d: Sequence[int], p: int) -> Rep:
    """The rigid indecomposable of real-root dimension ``d`` for an A~ quiver.

    Every indecomposable of a real root is a string module here, so a search
    over walks of total length ``sum(d) - 1`` finds it.
    """
    d = tuple(d)
    if tits_form(q, d) != 1 or min(d) < 0:
        raise RepError(f"{d} is not a positive real root")
    for data in cycle_strings(q, sum(d) - 1):
        counts = [0] * q.vertex_count
        for v in data.vertices:
            counts[v] += 1
        if tuple(counts) != d:
            continue
        m = string_module(q, data, p, label=f"rigid{d}")
        if is_rigid(m):
            return m
    raise RepError(f"no rigid string module of dimension {d}")


# -- objects of the cluster category ------------------------------------------------

Summand = Union[Rep, TubePoint]


@dataclass(frozen=True)
class CQObject:
    """A module part (indecomposable summands) plus shifted projectives ``P_i[1]``.

    ``shifted`` holds 0-based vertex ids, with repetition for multiplicity.
    """

    quiver: Quiver
    modules: tuple[Summand, ...] = ()
    shifted: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for m in self.modules:
            if m.quiver != self.quiver:
                raise RepError("summand lives on a different quiver")
        for i in self.shifted:
            if not 0 <= i < self.quiver.vertex_count:
                raise RepError(f"no vertex {i + 1}")

    def __add__(self, other: CQObject) -> CQObject:
        if other.quiver != self.quiver:
            raise RepError("objects live on different quivers")
        return CQObject(self.quiver, self.modules + other.modules, self.shifted + other.shifted)

    @property
    def dim_vector(self) -> tuple[int, ...]:
        out = [0] * self.quiver.vertex_count
        for m in self.modules:
            for v, x in enumerate(m.dim_vector if isinstance(m, TubePoint) else m.dims):
                out[v] += x
        return tuple(out)
