"""The generic variable, the sets G(Q), B(Q), C(Q) and identity verifiers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .chebyshev import cheb_first, cheb_second
from .grassmannian import _memo, cc_character, character_of_length, transverse_character
from .laurent import LaurentPoly
from .mutation import cluster_monomials, expand_in_cluster
from .quiver import Quiver, classify_affine
from .reps import (
    CQObject,
    TubePoint,
    build_regular,
    degenerate_parameters,
    hom_ext_dims,
    tube_point,
    tube_ranks,
)


@dataclass(frozen=True)
class BasisElement:
    value: LaurentPoly
    label: str
    den: tuple[int, ...]
    kind: str = "monomial"
    length: int = 0
    rigid: tuple[TubePoint, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.value.denominator_vector() != tuple(self.den):
            raise AssertionError(f"{self.label}: stored den {self.den} is not the denominator vector")


@dataclass(frozen=True)
class Report:
    identity: str
    params: dict
    lhs: LaurentPoly
    rhs: LaurentPoly
    passed: bool

    def to_json_obj(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "lhs": self.lhs.to_json_obj(),
            "rhs": self.rhs.to_json_obj(),
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def _report(identity: str, params: dict, lhs: LaurentPoly, rhs: LaurentPoly) -> Report:
    return Report(identity, params, lhs, rhs, lhs == rhs)


# -- generic variable ---------------------------------------------------------------


def homogeneous_parameters(q: Quiver, count: int = 2) -> list[int]:
    """The first ``count`` positive integers usable as band parameters."""
    bad = degenerate_parameters(q)
    return [lam for lam in range(1, count + 1 + len(bad)) if lam not in bad][:count]


def generic_variable(q: Quiver, engine: str = "auto") -> LaurentPoly:
    """``X_delta``: the common character of quasi-simples in homogeneous tubes.

    Computed at two band parameters and checked to agree.
    """

    def compute():
        values = [cc_character(tube_point(q, "band", 0, 1, lam), engine) for lam in homogeneous_parameters(q, 2)]
        if any(v != values[0] for v in values):
            raise AssertionError("quasi-simples of homogeneous tubes have different characters")
        return values[0]

    return _memo(("xdelta", q, engine), compute)


def tube_base(q: Quiver, name: str) -> TubePoint:
    """``"A"``, ``"B"``, ``"band"`` (parameter 1) or ``"band:<lambda>"``."""
    if name.startswith("band"):
        lam = name.split(":", 1)[1] if ":" in name else homogeneous_parameters(q, 1)[0]
        return tube_point(q, "band", 0, 1, lam)
    return tube_point(q, name, 0, 1)


def exceptional_tubes(q: Quiver) -> list[str]:
    return [name for name, rank in tube_ranks(q).items() if rank >= 2]


# -- identities -------------------------------------------------------------------------


def _x(base: TubePoint, length: int, socle: int = 0, engine: str = "auto") -> LaurentPoly:
    return character_of_length(base, length, socle % base.rank, engine)


def b_element_defect_zero(base: TubePoint, l: int, k: int, engine: str = "auto") -> BasisElement:
    """``b_{l delta + dim R_0^{(k)}}`` computed three ways, asserted equal.

    Routes: ``X_{R_0^{(k)}} F_l(X_delta)``; ``X_{R_0^{(lp+k)}} - X_{R_{k+1}^{(lp-k-2)}}``;
    and the transverse character of ``R_0^{(lp+k)}``.  For ``l = 0`` the
    element is the cluster variable ``X_{R_0^{(k)}}`` itself.
    """
    p = base.rank
    if not 0 <= k <= p - 1:
        raise ValueError(f"k must lie in 0..{p - 1}")
    if l < 0:
        raise ValueError("l must be nonnegative")
    q = base.quiver
    x_rk = _x(base, k, 0, engine)
    product_route = x_rk if l == 0 else x_rk * cheb_first(l, generic_variable(q, engine))
    difference_route = _x(base, l * p + k, 0, engine) - _x(base, l * p - k - 2, k + 1, engine)
    routes = [product_route, difference_route]
    if l * p + k > 0:
        routes.append(transverse_character(base.with_length(l * p + k, 0), engine))
    if any(r != product_route for r in routes):
        raise AssertionError(f"defect-zero element routes disagree for l={l}, k={k}")
    delta = classify_affine(q).delta
    dim_rk = base.with_length(k, 0).dim_vector if k else (0,) * q.vertex_count
    den = tuple(l * d + x for d, x in zip(delta, dim_rk))
    return BasisElement(product_route, f"F_{l}(X_delta)*X[{base.tube}_0^({k})]", den, "B", l)


def verify_theorem_difference(base: TubePoint, l: int, k: int, engine: str = "auto") -> Report:
    """``X_{R_0^{(k)}} F_l(X_delta) = X_{R_0^{(lp+k)}} - X_{R_{k+1}^{(lp-k-2)}}``."""
    p = base.rank
    q = base.quiver
    lhs = _x(base, k, 0, engine) * cheb_first(l, generic_variable(q, engine))
    rhs = _x(base, l * p + k, 0, engine) - _x(base, l * p - k - 2, k + 1, engine)
    return _report("difference_theorem", {"tube": base.tube, "p": p, "l": l, "k": k}, lhs, rhs)


def verify_difference_property(base: TubePoint, l: int, engine: str = "auto") -> list[Report]:
    """``F_l(X_delta) = X_{R_i^{(lp)}} - X_{R_{i+1}^{(lp-2)}}`` for every socle index ``i``."""
    if l < 1:
        raise ValueError("l must be at least 1")
    p = base.rank
    fl = cheb_first(l, generic_variable(base.quiver, engine))
    out = []
    for i in range(p):
        rhs = _x(base, l * p, i, engine) - _x(base, l * p - 2, i + 1, engine)
        out.append(_report("difference_property", {"tube": base.tube, "p": p, "l": l, "i": i}, fl, rhs))
    return out


def multiplication_admissible(p: int, m: int, n: int, j: int, k: int) -> bool:
    s = j + k * p
    return 0 < s <= n and m >= n - s and m >= 0 and n >= 0


def verify_multiplication_formula(base: TubePoint, m: int, n: int, j: int, k: int,
                                  engine: str = "auto") -> Report:
    """``X_{R_j^{(m)}} X_{R_0^{(n)}} = X_{R_0^{(m+s)}} X_{R_j^{(n-s)}} + X_{R_0^{(s-1)}} X_{R_{n+1}^{(m+s-n-1)}}``
    with ``s = j + kp``."""
    p = base.rank
    if not multiplication_admissible(p, m, n, j, k):
        raise ValueError(f"(m, n, j, k) = {(m, n, j, k)} violates 0 < j+kp <= n, m >= n-j-kp")
    s = j + k * p
    lhs = _x(base, m, j, engine) * _x(base, n, 0, engine)
    rhs = (_x(base, m + s, 0, engine) * _x(base, n - s, j, engine)
           + _x(base, s - 1, 0, engine) * _x(base, m + s - n - 1, n + 1, engine))
    return _report("multiplication", {"tube": base.tube, "p": p, "m": m, "n": n, "j": j, "k": k}, lhs, rhs)


def multiplication_instances(p: int, limit: int, max_len: int = 4) -> list[tuple[int, int, int, int]]:
    """Admissible ``(m, n, j, k)`` with ``0 <= j < p`` in a deterministic order."""
    out = []
    for total in range(2, 2 * max_len + 1):
        for n in range(1, max_len + 1):
            m = total - n
            if not 1 <= m <= max_len:
                continue
            for j in range(p):
                for k in range(0, max_len + 1):
                    if multiplication_admissible(p, m, n, j, k):
                        out.append((m, n, j, k))
                        if len(out) == limit:
                            return out
    return out


def verify_key_identity(base: TubePoint, l: int, engine: str = "auto") -> Report:
    """``X_{R_0^{(lp-1)}} X_{R_1^{(p-1)}} = X_{R_0^{(p-1)}} X_{R_1^{(lp-1)}}``."""
    p = base.rank
    if p < 2 or l < 1:
        raise ValueError("needs an exceptional tube and l >= 1")
    lhs = _x(base, l * p - 1, 0, engine) * _x(base, p - 1, 1, engine)
    rhs = _x(base, p - 1, 0, engine) * _x(base, l * p - 1, 1, engine)
    return _report("key_identity", {"tube": base.tube, "p": p, "l": l}, lhs, rhs)


# -- basis sets -----------------------------------------------------------------------------


def rigid_tube_modules(q: Quiver) -> list[TubePoint]:
    """Indecomposable rigid regular modules: quasi-length below the rank in exceptional tubes."""
    out = []
    for name in exceptional_tubes(q):
        rank = tube_ranks(q)[name]
        for i in range(rank):
            for length in range(1, rank):
                out.append(tube_point(q, name, i, length))
    return out


def ext_orthogonal(a, b, p: int = 2) -> bool:
    """Both module Ext groups between ``a`` and ``b`` vanish."""
    ma = build_regular(a, p) if isinstance(a, TubePoint) else a.over(p)
    mb = build_regular(b, p) if isinstance(b, TubePoint) else b.over(p)
    return hom_ext_dims(ma, mb)[1] == 0 and hom_ext_dims(mb, ma)[1] == 0


def regular_rigid_modules(q: Quiver, den_bound: Sequence[int]) -> list[tuple[TubePoint, ...]]:
    """Multisets of pairwise Ext-orthogonal rigid tube modules with dim inside the bound.

    Includes the empty multiset (the zero module).
    """
    pieces = rigid_tube_modules(q)
    ok = {(a, b): ext_orthogonal(a, b) for a in pieces for b in pieces}
    out: list[tuple[TubePoint, ...]] = [()]
    max_terms = sum(den_bound)
    for size in range(1, max_terms + 1):
        grew = False
        for combo in combinations_with_replacement(range(len(pieces)), size):
            parts = tuple(pieces[i] for i in combo)
            dim = [sum(x) for x in zip(*(t.dim_vector for t in parts))]
            if any(x > b for x, b in zip(dim, den_bound)):
                continue
            if all(ok[(a, b)] for a in parts for b in parts):
                out.append(parts)
                grew = True
        if not grew:
            break
    return out


def _rigid_character(parts: Sequence[TubePoint], q: Quiver, engine: str) -> LaurentPoly:
    out = LaurentPoly.one(q.vertex_count)
    for t in parts:
        out = out * cc_character(t, engine)
    return out


def _label_parts(parts: Sequence[TubePoint]) -> str:
    return "+".join(t.describe() for t in parts) or "0"


@dataclass(frozen=True)
class BasisSets:
    G: tuple[BasisElement, ...]
    B: tuple[BasisElement, ...]
    C: tuple[BasisElement, ...]

    def by_name(self, name: str) -> tuple[BasisElement, ...]:
        return {"G": self.G, "B": self.B, "C": self.C}[name]


def basis_sets(q: Quiver, den_bound: Sequence[int], depth: int, engine: str = "auto") -> BasisSets:
    """Truncations of ``G(Q)``, ``B(Q)`` and ``C(Q)`` to ``|den_i| <= den_bound[i]``.

    Cluster monomials come from seeds within ``depth`` mutations; the regular
    part is ``X_delta^l X_R``, ``F_l(X_delta) X_R`` resp. ``S_l(X_delta) X_R``
    for ``l >= 1`` and regular rigid ``R``.
    """
    den_bound = tuple(den_bound)
    n = q.vertex_count
    delta = classify_affine(q).delta
    monomials = cluster_monomials(q, depth, sum(den_bound), den_bound)
    shared = [BasisElement(v, f"cluster monomial {d}", d) for v, d in
              sorted(monomials.items(), key=lambda kv: (kv[1], kv[0].sorted_terms()))]
    xd = generic_variable(q, engine)
    g, b, c = list(shared), list(shared), list(shared)
    for parts in regular_rigid_modules(q, den_bound):
        dim_r = [sum(x) for x in zip(*(t.dim_vector for t in parts))] if parts else [0] * n
        xr = _rigid_character(parts, q, engine)
        l = 1
        while all(l * d + r <= bd for d, r, bd in zip(delta, dim_r, den_bound)):
            den = tuple(l * d + r for d, r in zip(delta, dim_r))
            label = _label_parts(parts)
            g.append(BasisElement(xd ** l * xr, f"X_delta^{l}*X[{label}]", den, "G", l, parts))
            b.append(BasisElement(cheb_first(l, xd) * xr, f"F_{l}(X_delta)*X[{label}]", den, "B", l, parts))
            c.append(BasisElement(cheb_second(l, xd) * xr, f"S_{l}(X_delta)*X[{label}]", den, "C", l, parts))
            l += 1
    return BasisSets(tuple(g), tuple(b), tuple(c))


def den_multiset(elements: Sequence[BasisElement]) -> list[tuple[int, ...]]:
    return sorted(e.den for e in elements)


# -- geometric realization and positivity ----------------------------------------------------


def geometrization_check(q: Quiver, den_bound: Sequence[int], depth: int = 3, engine: str = "auto") -> list[Report]:
    """Realize each regular element of ``B(Q)`` as ``theta_Tr(M + R)``.

    ``M`` is a homogeneous ``M_lambda^{(l)}``; ``R`` is the rigid part.  Module
    level Ext vanishing of ``M`` against each summand of ``R`` is checked in
    both directions.  When ``R`` is a single exceptional-tube module
    ``R_i^{(k)}``, the realization ``theta_Tr(R_i^{(lp+k)})`` is checked too.
    Finally sampled admissible pairs from exceptional tubes are required to land
    in the generated set.
    """
    sets = basis_sets(q, den_bound, depth, engine)
    values = {e.value for e in sets.B}
    lam = homogeneous_parameters(q, 1)[0]
    reports = []
    for el in sets.B:
        if el.kind != "B":
            continue
        m = tube_point(q, "band", 0, el.length, lam)
        orth = all(ext_orthogonal(m, r) for r in el.rigid)
        theta = transverse_character(CQObject(q, (m,) + el.rigid), engine)
        params = {"element": el.label, "den": list(el.den), "M": m.describe(), "R": _label_parts(el.rigid),
                  "ext_orthogonal": orth}
        reports.append(Report("geometrization", params, el.value, theta, orth and theta == el.value))
        if len(el.rigid) == 1:
            r = el.rigid[0]
            big = r.with_length(el.length * r.rank + r.length)
            theta2 = transverse_character(big, engine)
            reports.append(_report("geometrization", {"element": el.label, "den": list(el.den),
                                                      "M": big.describe(), "R": "0"}, el.value, theta2))
    for name in exceptional_tubes(q):
        rank = tube_ranks(q)[name]
        for i in range(rank):
            for length in range(rank, 2 * rank + 1):
                m = tube_point(q, name, i, length)
                if any(x > b for x, b in zip(m.dim_vector, den_bound)):
                    continue
                theta = transverse_character(m, engine)
                params = {"M": m.describe(), "R": "0", "sampled": True}
                reports.append(Report("geometrization", params, theta, theta, theta in values))
    return reports


def positivity_spotcheck(element: BasisElement | LaurentPoly, sequence: Sequence[int], q: Quiver) -> Report:
    """Expand ``element`` in the cluster reached by ``sequence`` (0-based vertices)."""
    value = element.value if isinstance(element, BasisElement) else element
    expanded = expand_in_cluster(value, sequence, q)
    params = {"sequence": [k + 1 for k in sequence]}
    return Report("positivity", params, value, expanded, expanded.is_nonnegative())
