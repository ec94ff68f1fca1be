"""Quiver Grassmannians: point counts, Euler characteristics and characters.

Two engines compute ``chi(Gr_e(M))``:

``count``
    Count ``F_p``-rational subrepresentations at several primes, fit the
    counting polynomial exactly and evaluate it at ``q = 1``.
``fixed``
    For modules whose coefficient quiver is a disjoint union of paths (string
    modules, in a basis where every arrow matrix is a partial permutation),
    a torus acts with isolated fixed points, namely the coordinate
    subrepresentations.  ``chi`` is the number of successor-closed node sets.

``auto`` counts when that is cheap and otherwise falls back to fixed points.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from sympy import Poly, Rational, interpolate, symbols

from . import fp
from .laurent import LaurentPoly
from .quiver import Quiver, euler_form
from .reps import (
    INF,
    CQObject,
    Rep,
    RepError,
    TubePoint,
    build_regular,
    canonical_chain,
    degenerate_parameters,
    is_rigid,
    is_subrep,
    quotient_rep,
)

ENGINES = ("auto", "count", "fixed")
COUNT_BUDGET = 40_000

_Q = symbols("q")


class InterpolationError(ArithmeticError):
    """Point counts are not the values of an integer polynomial of bounded degree."""


class EngineError(ValueError):
    """The requested engine does not apply to the module."""


@dataclass(frozen=True)
class Between:
    """Constraint ``lower ⊆ N ⊆ upper``; ``None`` means 0 resp. the whole module.

    Subspaces are per-vertex row bases with integer entries, reduced modulo
    whichever prime is being sampled.
    """

    lower: tuple | None = None
    upper: tuple | None = None


def contains(u: Sequence) -> Between:
    return Between(lower=tuple(u))


@dataclass(frozen=True)
class StratumCount:
    e: tuple[int, ...]
    counts: Mapping[int, int]
    euler: int
    polynomial: tuple[int, ...] = field(default=())


def _reduced(sub: Sequence | None, dims: Sequence[int], p: int, full: bool) -> list[fp.Matrix]:
    if sub is None:
        return [fp.identity(d) if full else [] for d in dims]
    return [fp.span(s, p) for s in sub]


def cc_exponent(q: Quiver, d: Sequence[int], e: Sequence[int]) -> tuple[int, ...]:
    """Exponent of ``u_i``: ``-<e, S_i> - <S_i, d - e>``."""
    rest = [x - y for x, y in zip(d, e)]
    return tuple(-euler_form(q, e, q.simple(i)) - euler_form(q, q.simple(i), rest) for i in range(q.vertex_count))


# -- point counting ------------------------------------------------------------------


def _independent_set(q: Quiver, weights: Sequence[int]) -> frozenset[int]:
    n = q.vertex_count
    best, best_w = frozenset(), -1
    adj = [q.neighbours(v) for v in range(n)]
    for mask in range(1 << n):
        chosen = [v for v in range(n) if mask >> v & 1]
        if any(w in adj[v] for v in chosen for w in chosen):
            continue
        w = sum(weights[v] for v in chosen)
        if w > best_w:
            best, best_w = frozenset(chosen), w
    return best


def _between(lo: fp.Matrix, up: fp.Matrix, dim: int, p: int):
    """Subspaces N with ``lo ⊆ N ⊆ up`` and ``dim N = dim`` (RREF bases)."""
    k = len(lo)
    lo_red, lo_piv = fp.rref(lo, p) if lo else ([], [])
    comp = fp.span([fp.reduce_mod(lo_red, lo_piv, v, p) for v in up], p) if up else []
    m = len(comp)
    for s in fp.subspaces(m, dim - k, p):
        vecs = [[sum(c * w[i] for c, w in zip(row, comp)) % p for i in range(len(comp[0]))] for row in s]
        yield fp.span(list(lo_red) + vecs, p)


def count_subreps(m: Rep, e: Sequence[int], constraint: Between | None = None) -> int:
    """Number of ``F_p``-rational subrepresentations of dimension ``e``."""
    q, p, dims = m.quiver, m.p, m.dims
    e = tuple(e)
    if len(e) != q.vertex_count or any(not 0 <= x <= d for x, d in zip(e, dims)):
        raise ValueError(f"dimension vector {e} is out of range for {dims}")
    constraint = constraint or Between()
    lower = _reduced(constraint.lower, dims, p, full=False)
    upper = _reduced(constraint.upper, dims, p, full=True)
    for sub in (constraint.lower, constraint.upper):
        if sub is not None and not is_subrep(m, [[[x % p for x in r] for r in b] for b in sub]):
            raise RepError("constraint subspaces are not a subrepresentation")
    for v in range(q.vertex_count):
        if not fp.contains(upper[v], lower[v], p):
            return 0
        if not len(lower[v]) <= e[v] <= len(upper[v]):
            return 0
    weights = [(e[v] - len(lower[v])) * (len(upper[v]) - e[v]) for v in range(q.vertex_count)]
    indep = _independent_set(q, weights)
    cover = [v for v in q.topological_order if v not in indep]
    mats = [m.matrix(a) for a in range(len(q.arrows))]
    incoming = {v: [(a, s) for a, (s, t) in enumerate(q.arrows) if t == v] for v in range(q.vertex_count)}
    outgoing = {v: [(a, t) for a, (s, t) in enumerate(q.arrows) if s == v] for v in range(q.vertex_count)}

    def low_bound(v: int, chosen: dict[int, fp.Matrix]) -> fp.Matrix:
        rows = list(lower[v])
        for a, s in incoming[v]:
            if s in chosen:
                rows += fp.image(mats[a], chosen[s], p)
        return fp.span(rows, p)

    def finish(chosen: dict[int, fp.Matrix]) -> int:
        total = 1
        for v in indep:
            lo = low_bound(v, chosen)
            up = upper[v]
            for a, t in outgoing[v]:
                up = fp.intersect(up, fp.preimage(mats[a], chosen[t], dims[v], p), dims[v], p)
            if not fp.contains(up, lo, p):
                return 0
            total *= fp.gaussian_binomial(len(up) - len(lo), e[v] - len(lo), p)
            if not total:
                return 0
        return total

    def walk(idx: int, chosen: dict[int, fp.Matrix]) -> int:
        if idx == len(cover):
            return finish(chosen)
        v = cover[idx]
        lo = low_bound(v, chosen)
        if len(lo) > e[v] or not fp.contains(upper[v], lo, p):
            return 0
        total = 0
        for n_v in _between(lo, upper[v], e[v], p):
            chosen[v] = n_v
            total += walk(idx + 1, chosen)
        chosen.pop(v, None)
        return total

    return walk(0, {})


def count_cost(m: Rep, e: Sequence[int], p: int, constraint: Between | None = None) -> int:
    """Crude upper bound on the nodes visited by :func:`count_subreps` at ``p``."""
    constraint = constraint or Between()
    lo = [0] * len(e) if constraint.lower is None else [len(b) for b in constraint.lower]
    up = list(m.dims) if constraint.upper is None else [len(b) for b in constraint.upper]
    weights = [(x - l) * (u - x) for x, l, u in zip(e, lo, up)]
    indep = _independent_set(m.quiver, weights)
    cost = 1
    for v in range(len(e)):
        if v not in indep:
            cost *= max(1, fp.gaussian_binomial(up[v] - lo[v], e[v] - lo[v], p))
    return cost


def degree_bound(m: Rep, e: Sequence[int], constraint: Between | None = None) -> int:
    constraint = constraint or Between()
    lo = [0] * len(e) if constraint.lower is None else [len(b) for b in constraint.lower]
    up = list(m.dims) if constraint.upper is None else [len(b) for b in constraint.upper]
    return sum(max(0, x - l) * max(0, u - x) for x, l, u in zip(e, lo, up))


def sample_primes(m: Rep, needed: int, primes: Sequence[int] | None = None) -> list[int]:
    """The first ``needed`` primes over which ``m`` is defined (or from ``primes``)."""
    if primes is not None:
        chosen = [p for p in primes if m.admits(p)]
        if len(chosen) < needed:
            raise InterpolationError(f"need {needed} admissible primes, got {len(chosen)}")
        return list(chosen)
    out = []
    for p in fp.primes(2):
        if m.admits(p):
            out.append(p)
            if len(out) == needed:
                return out
    raise AssertionError("unreachable")


def fit_counting_polynomial(samples: Mapping[int, int], degree: int) -> tuple[int, ...]:
    """Integer coefficients (constant first) of the interpolant; checks every sample."""
    points = sorted(samples.items())
    if len(points) < degree + 1:
        raise InterpolationError("not enough samples for the degree bound")
    expr = interpolate([(x, y) for x, y in points], _Q)
    poly = Poly(expr, _Q)
    coeffs = [Rational(c) for c in reversed(poly.all_coeffs())]
    if poly.degree() > degree:
        raise InterpolationError(f"counts need degree {poly.degree()} > bound {degree}")
    if any(c.q != 1 for c in coeffs):
        raise InterpolationError("counting polynomial has non-integer coefficients")
    ints = tuple(int(c) for c in coeffs)
    for x, y in points:
        if sum(c * x ** k for k, c in enumerate(ints)) != y:
            raise InterpolationError("nonzero interpolation residual")
    return ints


def count_stratum(m: Rep, e: Sequence[int], constraint: Between | None = None,
                  primes: Sequence[int] | None = None) -> StratumCount:
    """Counts at ``degree + 2`` primes, exact fit, value at ``q = 1``."""
    e = tuple(e)
    deg = degree_bound(m, e, constraint)
    ps = sample_primes(m, deg + 2, primes)
    counts = {p: count_subreps(m.over(p), e, constraint) for p in ps}
    coeffs = fit_counting_polynomial(counts, deg)
    return StratumCount(e, counts, sum(coeffs), coeffs)


# -- torus fixed points --------------------------------------------------------------


def _coefficient_paths(m: Rep) -> list[list[tuple[tuple[int, int], int]]] | None:
    """Path components of the coefficient quiver, or ``None`` if not path shaped.

    Each component is a list of ``(node, direction)`` where ``node`` is
    ``(vertex, basis index)`` and ``direction`` says how the edge from the
    previous node is oriented (+1: previous -> node, -1: node -> previous).
    """
    q = m.quiver
    nodes = [(v, k) for v in range(q.vertex_count) for k in range(m.dims[v])]
    adj: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {x: [] for x in nodes}
    count = 0
    for a, (s, t) in enumerate(q.arrows):
        mat = m.matrices[a]
        for r, row in enumerate(mat):
            if sum(1 for x in row if x) > 1:
                return None
        for c in range(m.dims[s]):
            hits = [r for r in range(m.dims[t]) if mat[r][c]]
            if len(hits) > 1:
                return None
            if hits:
                src, dst = (s, c), (t, hits[0])
                adj[src].append((dst, 1))
                adj[dst].append((src, -1))
                count += 1
    if any(len(v) > 2 for v in adj.values()):
        return None
    seen: set = set()
    comps = []
    for start in nodes:
        if start in seen or len(adj[start]) == 2:
            continue
        comp = [(start, 0)]
        seen.add(start)
        cur = start
        while True:
            nxt = [(w, d) for w, d in adj[cur] if w not in seen]
            if not nxt:
                break
            w, d = nxt[0]
            comp.append((w, d))
            seen.add(w)
            cur = w
        comps.append(comp)
    if len(seen) != len(nodes):
        return None  # some component is a cycle
    return comps


def fixed_points_applicable(m: Rep) -> bool:
    return _coefficient_paths(m) is not None


def _coordinate_nodes(sub: Sequence | None, dims: Sequence[int], p: int) -> set[tuple[int, int]] | None:
    """Nodes spanning ``sub`` if it is a coordinate subspace at every vertex."""
    out = set()
    for v, basis in enumerate(sub):
        for row in fp.span(basis, p):
            nz = [i for i, x in enumerate(row) if x]
            if len(nz) != 1:
                return None
            out.add((v, nz[0]))
    return out


def fixed_point_euler(m: Rep, constraint: Between | None = None) -> dict[tuple[int, ...], int]:
    """``e -> chi`` for every ``e`` by counting successor-closed node sets."""
    comps = _coefficient_paths(m)
    if comps is None:
        raise EngineError("module is not a direct sum of string modules in its given basis")
    constraint = constraint or Between()
    n = m.quiver.vertex_count
    forced: set = set()
    allowed: set | None = None
    if constraint.lower is not None:
        forced = _coordinate_nodes(constraint.lower, m.dims, m.p)
    if constraint.upper is not None:
        allowed = _coordinate_nodes(constraint.upper, m.dims, m.p)
    if forced is None or (constraint.upper is not None and allowed is None):
        raise EngineError("fixed points need coordinate constraint subspaces")

    def unit(v: int) -> tuple[int, ...]:
        return tuple(int(i == v) for i in range(n))

    def add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(x + y for x, y in zip(a, b))

    zero = (0,) * n
    total: dict[tuple[int, ...], int] = {zero: 1}
    for comp in comps:
        # state: {included?: {dim vector: count}}
        states: dict[bool, dict[tuple[int, ...], int]] = {}
        for k, (node, direction) in enumerate(comp):
            options = []
            if node not in forced:
                options.append(False)
            if allowed is None or node in allowed:
                options.append(True)
            new: dict[bool, dict] = {False: {}, True: {}}
            for inc in options:
                contribution = unit(node[0]) if inc else zero
                if k == 0:
                    new[inc][contribution] = new[inc].get(contribution, 0) + 1
                    continue
                for prev_inc, table in states.items():
                    # an edge u -> w forbids u in, w out
                    if direction > 0 and prev_inc and not inc:
                        continue
                    if direction < 0 and inc and not prev_inc:
                        continue
                    for dv, c in table.items():
                        key = add(dv, contribution)
                        new[inc][key] = new[inc].get(key, 0) + c
            states = new
        comp_table: dict[tuple[int, ...], int] = {}
        for table in states.values():
            for dv, c in table.items():
                comp_table[dv] = comp_table.get(dv, 0) + c
        merged: dict[tuple[int, ...], int] = {}
        for d1, c1 in total.items():
            for d2, c2 in comp_table.items():
                key = add(d1, d2)
                merged[key] = merged.get(key, 0) + c1 * c2
        total = merged
    return {e: c for e, c in total.items() if c}


# -- Euler characteristics -------------------------------------------------------------


def dimension_box(dims: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(e) for e in product(*(range(d + 1) for d in dims))]


def _count_all_cost(m: Rep, constraint: Between | None) -> int:
    total = 0
    for e in dimension_box(m.dims):
        deg = degree_bound(m, e, constraint)
        try:
            ps = sample_primes(m, deg + 2)
        except InterpolationError:
            return 10 ** 18
        total += sum(count_cost(m, e, p, constraint) for p in ps)
        if total > COUNT_BUDGET:
            return total
    return total


def choose_engine(m: Rep, constraint: Between | None = None, engine: str = "auto") -> str:
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    if engine != "auto":
        return engine
    if _count_all_cost(m, constraint) <= COUNT_BUDGET:
        return "count"
    return "fixed" if fixed_points_applicable(m) else "count"


def euler_char(m: Rep, e: Sequence[int], constraint: Between | None = None, engine: str = "auto",
               primes: Sequence[int] | None = None) -> int:
    e = tuple(e)
    engine = choose_engine(m, constraint, engine)
    if engine == "fixed":
        return fixed_point_euler(m, constraint).get(e, 0)
    return count_stratum(m, e, constraint, primes).euler


def euler_chars(m: Rep, constraint: Between | None = None, engine: str = "auto",
                primes: Sequence[int] | None = None) -> dict[tuple[int, ...], int]:
    """``e -> chi(Gr_e)`` (with constraint) over the whole box, zeros dropped."""
    engine = choose_engine(m, constraint, engine)
    if engine == "fixed":
        return fixed_point_euler(m, constraint)
    out = {}
    for e in dimension_box(m.dims):
        if not _constraint_admits(m, e, constraint):
            continue
        chi = count_stratum(m, e, constraint, primes).euler
        if chi:
            out[e] = chi
    return out


def _constraint_admits(m: Rep, e: Sequence[int], constraint: Between | None) -> bool:
    if constraint is None:
        return True
    lo = [0] * len(e) if constraint.lower is None else [len(fp.span(b, m.p)) for b in constraint.lower]
    up = list(m.dims) if constraint.upper is None else [len(fp.span(b, m.p)) for b in constraint.upper]
    return all(l <= x <= u for l, x, u in zip(lo, e, up))


# -- tube modules -----------------------------------------------------------------------

_CACHE: dict[tuple, object] = {}
_CACHE_LOCK = threading.Lock()


def _memo(key: tuple, compute):
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    value = compute()
    with _CACHE_LOCK:
        return _CACHE.setdefault(key, value)


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


def _first_prime(t: TubePoint) -> int:
    if t.tube == "band" and t.lam not in (INF, 0):
        return next(p for p in fp.primes(2) if t.lam % p)
    return 2


def _string_substitute(t: TubePoint) -> TubePoint | None:
    """A homogeneous tube at a parameter where the module is a string module."""
    bad = degenerate_parameters(t.quiver)
    for lam in (INF, 0):
        if lam not in bad:
            return TubePoint(t.quiver, "band", 1, 0, t.length, lam)
    return None


def realize(t: TubePoint, engine: str = "auto") -> tuple[Rep, str, TubePoint]:
    """A representation of ``t``, the engine to use on it and the point realized.

    Homogeneous tubes share their characters, so when counting would be too
    slow on a band module with a generic parameter, a homogeneous tube at a
    string parameter is used instead.
    """
    m = build_regular(t, _first_prime(t))
    if engine == "auto" and _count_all_cost(m, None) > COUNT_BUDGET and not fixed_points_applicable(m):
        sub = _string_substitute(t) if t.tube == "band" else None
        if sub is not None:
            return build_regular(sub, 2), "fixed", sub
    chosen = choose_engine(m, None, engine)
    if chosen == "fixed" and not fixed_points_applicable(m):
        raise EngineError(f"{t.describe()} is not a string module")
    return m, chosen, t


def _primes_key(primes: Sequence[int] | None) -> tuple[int, ...] | None:
    return None if primes is None else tuple(primes)


def tube_euler_chars(t: TubePoint, engine: str = "auto",
                     primes: Sequence[int] | None = None) -> dict[tuple[int, ...], int]:
    """``e -> chi(Gr_e)`` for a tube module; ``primes`` forces the counting engine."""
    if primes is not None:
        engine = "count"

    def compute():
        m, eng, _ = realize(t, engine)
        return euler_chars(m, None, eng, primes)

    return _memo(("gr", t, engine, _primes_key(primes)), compute)


def transverse_split(t: TubePoint) -> tuple[int, int] | None:
    """``(l, k)`` with quasi-length ``l p + k``, or ``None`` when ``t`` is rigid."""
    if t.length < t.rank:
        return None
    l, k = divmod(t.length, t.rank)
    return l, k


def removed_euler_chars(t: TubePoint, engine: str = "auto", check: bool = True,
                        primes: Sequence[int] | None = None) -> dict[tuple[int, ...], int]:
    """``e -> chi{N : R^{(k+1)} ⊆ N ⊆ R^{(lp-1)}}`` inside ``M = R^{(lp+k)}``.

    With ``check`` the result is compared with the Grassmannian of the
    quotient ``R^{(lp-1)} / R^{(k+1)}``, shifted by ``dim R^{(k+1)}``.
    """
    split = transverse_split(t)
    if split is None:
        return {}
    l, k = split
    lo_len, hi_len = k + 1, l * t.rank - 1
    if lo_len > hi_len:
        return {}
    if primes is not None:
        engine = "count"

    def compute():
        m, eng, point = realize(t, engine)
        chain = canonical_chain(point, m.p)
        constraint = Between(chain[lo_len].subspaces, chain[hi_len].subspaces)
        removed = euler_chars(m, constraint, eng, primes)
        if check:
            upper = chain[hi_len].rep
            inner = canonical_chain(point.with_length(hi_len), m.p)[lo_len]
            quot = quotient_rep(upper, inner.subspaces)
            q_eng = eng if eng == "count" else choose_engine(quot, None, "auto")
            direct = euler_chars(quot, None, q_eng, primes if q_eng == "count" else None)
            shift = inner.rep.dims
            shifted = {tuple(x + y for x, y in zip(e, shift)): c for e, c in direct.items()}
            if shifted != removed:
                raise AssertionError(f"removed stratum of {t.describe()} disagrees with its quotient")
        return removed

    return _memo(("removed", t, engine, check, _primes_key(primes)), compute)


def tube_transverse_chars(t: TubePoint, engine: str = "auto",
                          primes: Sequence[int] | None = None) -> dict[tuple[int, ...], int]:
    """``e -> chi(Tr_e)``: the Grassmannian minus the pinched chain stratum."""
    if primes is not None:
        engine = "count"

    def compute():
        gr = dict(tube_euler_chars(t, engine, primes))
        for e, c in removed_euler_chars(t, engine, True, primes).items():
            gr[e] = gr.get(e, 0) - c
        if any(c < 0 for c in gr.values()):
            raise AssertionError("negative Euler characteristic of a transverse stratum")
        return {e: c for e, c in gr.items() if c}

    return _memo(("tr", t, engine, _primes_key(primes)), compute)


def transverse_euler_char(t: TubePoint, e: Sequence[int], engine: str = "auto") -> int:
    e = tuple(e)
    if len(e) != t.quiver.vertex_count or any(not 0 <= x <= d for x, d in zip(e, t.dim_vector)):
        raise ValueError(f"dimension vector {e} is out of range for {t.dim_vector}")
    return tube_transverse_chars(t, engine).get(e, 0)


# -- characters ---------------------------------------------------------------------------


def character_from_chis(q: Quiver, d: Sequence[int], chis: Mapping[tuple[int, ...], int]) -> LaurentPoly:
    terms: dict[tuple[int, ...], int] = {}
    for e, c in chis.items():
        key = cc_exponent(q, d, e)
        terms[key] = terms.get(key, 0) + c
    return LaurentPoly(q.vertex_count, terms)


def _summand_character(x, engine: str, transverse: bool, primes: Sequence[int] | None) -> LaurentPoly:
    if isinstance(x, TubePoint):
        if transverse and not x.is_rigid:
            chis = tube_transverse_chars(x, engine, primes)
        else:
            chis = tube_euler_chars(x, engine, primes)
        return character_from_chis(x.quiver, x.dim_vector, chis)
    if transverse and not is_rigid(x):
        raise RepError("non-rigid summand needs tube coordinates for the transverse character")
    if primes is not None:
        engine = "count"
    return character_from_chis(x.quiver, x.dims, euler_chars(x, None, engine, primes))


def _object_character(obj, engine: str, transverse: bool, primes: Sequence[int] | None) -> LaurentPoly:
    if isinstance(obj, (Rep, TubePoint)):
        obj = CQObject(obj.quiver, (obj,))
    q = obj.quiver
    out = LaurentPoly.one(q.vertex_count)
    for i in obj.shifted:
        out = out * LaurentPoly.var(q.vertex_count, i)
    for summand in obj.modules:
        out = out * _summand_character(summand, engine, transverse, primes)
    return out


def cc_character(obj, engine: str = "auto", primes: Sequence[int] | None = None) -> LaurentPoly:
    """Caldero-Chapoton character of a module, tube point or CQObject."""
    return _object_character(obj, engine, False, primes)


def transverse_character(obj, engine: str = "auto", primes: Sequence[int] | None = None) -> LaurentPoly:
    """Character of the transverse Grassmannian; equals ``cc_character`` on rigid objects."""
    return _object_character(obj, engine, True, primes)


def character_of_length(t: TubePoint, length: int, socle: int | None = None, engine: str = "auto") -> LaurentPoly:
    """``X_{R_i^{(length)}}`` with the conventions 0 for negative and 1 for zero length."""
    n = t.quiver.vertex_count
    if length < 0:
        return LaurentPoly.zero(n)
    if length == 0:
        return LaurentPoly.one(n)
    return cc_character(t.with_length(length, socle), engine)
