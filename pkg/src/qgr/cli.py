"""Command-line interface: ``qgr <subcommand> [flags]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import bases
from .grassmannian import (
    ENGINES,
    cc_exponent,
    euler_chars,
    tube_euler_chars,
    tube_transverse_chars,
    transverse_character,
    cc_character,
)
from .laurent import LaurentPoly
from .mutation import enumerate_cluster_variables, initial_seed, mutate_sequence
from .quiver import (
    classify_affine,
    enumerate_roots,
    euler_form,
    parse_quiver,
    quiver_from_alias,
    Quiver,
)
from .reps import CQObject, Rep, TubePoint, rep_from_json, rigid_indecomposable, tube_point


class UsageError(Exception):
    """Bad flag value; reported with exit status 2."""


# -- argument helpers -------------------------------------------------------------------


def _vector(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"{flag}: expected comma separated integers, got {text!r}") from None


def _load_quiver(spec: str) -> Quiver:
    path = Path(spec)
    if path.is_file():
        return parse_quiver(path.read_text(encoding="utf-8"))
    try:
        return quiver_from_alias(spec)
    except ValueError as exc:
        raise UsageError(f"--quiver: {exc}") from None


def _fields(text: str) -> tuple[str, dict[str, str]]:
    kind, *rest = text.split(":")
    out = {}
    for item in rest:
        if "=" not in item:
            raise UsageError(f"--module: malformed field {item!r} in {text!r}")
        key, value = item.split("=", 1)
        out[key.strip().lower()] = value.strip()
    return kind.strip().lower(), out


def parse_module(q: Quiver, text: str, p: int = 2) -> TubePoint | Rep | CQObject:
    """Module specs.

    ``band:l=<l>:lambda=<x|inf>``, ``regular:tube=<A|B>:i=<i>:l=<l>``,
    ``root:d=<d1,d2,...>`` (rigid indecomposable), ``shift:i=<vertex>`` for
    ``P_i[1]``, and ``rep:<file.json>``.
    """
    if text.startswith("rep:"):
        path = Path(text[4:])
        if not path.is_file():
            raise UsageError(f"--module: no such file {path}")
        m = rep_from_json(path.read_text(encoding="utf-8"))
        if m.quiver != q:
            raise UsageError("--module: representation is for a different quiver")
        return m
    kind, f = _fields(text)
    try:
        if kind == "band":
            return tube_point(q, "band", 0, int(f.get("l", 1)), f.get("lambda", "1"))
        if kind == "regular":
            return tube_point(q, f.get("tube", "A").upper(), int(f.get("i", 0)), int(f.get("l", 1)))
        if kind == "root":
            return rigid_indecomposable(q, _vector(f["d"], "--module d"), p)
        if kind == "shift":
            return CQObject(q, (), (int(f["i"]) - 1,))
    except KeyError as exc:
        raise UsageError(f"--module: missing field {exc} in {text!r}") from None
    except ValueError as exc:
        raise UsageError(f"--module: {exc}") from None
    raise UsageError(f"--module: unknown module kind {kind!r}")


def _object(q: Quiver, specs: Sequence[str]) -> CQObject:
    if not specs:
        raise UsageError("--module is required")
    obj = CQObject(q)
    for spec in specs:
        part = parse_module(q, spec)
        obj = obj + (part if isinstance(part, CQObject) else CQObject(q, (part,)))
    return obj


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _vec(d: Sequence[int]) -> str:
    return "(" + "".join(str(x) for x in d) + ")" if all(0 <= x <= 9 for x in d) else str(tuple(d))


# -- subcommands -------------------------------------------------------------------------------


def cmd_delta(args) -> int:
    q = _load_quiver(args.quiver)
    data = classify_affine(q)
    _emit(args, f"{data.affine_type} delta={list(data.delta)}",
          {"type": data.affine_type, "delta": list(data.delta)})
    return 0


def cmd_euler_form(args) -> int:
    q = _load_quiver(args.quiver)
    e, f = _vector(args.e, "--e"), _vector(args.f, "--f")
    if len(e) != q.vertex_count or len(f) != q.vertex_count:
        raise UsageError("--e/--f: length must equal the number of vertices")
    value = euler_form(q, e, f)
    _emit(args, str(value), {"e": list(e), "f": list(f), "value": value})
    return 0


def cmd_roots(args) -> int:
    q = _load_quiver(args.quiver)
    bound = _vector(args.bound or ",".join(["2"] * q.vertex_count), "--bound")
    roots = enumerate_roots(q, bound)
    lines = [f"{list(d)} {kind}" for d, kind in roots]
    _emit(args, "\n".join(lines), [{"d": list(d), "kind": kind} for d, kind in roots])
    return 0


def cmd_mutate(args) -> int:
    q = _load_quiver(args.quiver)
    seq = _vector(args.sequence, "--sequence") if args.sequence else ()
    if any(not 1 <= k <= q.vertex_count for k in seq):
        raise UsageError("--sequence: vertices are 1-based")
    seed = mutate_sequence(initial_seed(q), [k - 1 for k in seq])
    lines = [f"x{i + 1} = {v}   den={list(v.denominator_vector())}" for i, v in enumerate(seed.variables)]
    payload = {"sequence": list(seq), "matrix": [list(r) for r in seed.matrix],
               "variables": [v.to_json_obj() for v in seed.variables]}
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_variables(args) -> int:
    q = _load_quiver(args.quiver)
    vs = sorted(enumerate_cluster_variables(q, args.depth), key=lambda v: v.denominator_vector())
    lines = [f"den={list(v.denominator_vector())}  {v}" for v in vs]
    _emit(args, "\n".join(lines), [{"den": list(v.denominator_vector()), "value": v.to_json_obj()} for v in vs])
    return 0


def _primes(args) -> list[int] | None:
    return list(_vector(args.primes, "--primes")) if args.primes else None


def cmd_char(args, transverse: bool = False) -> int:
    q = _load_quiver(args.quiver)
    obj = _object(q, args.module)
    fn = transverse_character if transverse else cc_character
    value = fn(obj, args.engine, _primes(args))
    _emit(args, str(value), value.to_json_obj())
    return 0


FIGURES = {
    "1": ("kronecker", ["band:l=2:lambda=0", "band:l=2:lambda=1", "band:l=2:lambda=inf"]),
    "2": ("a21", ["band:l=1:lambda=1", "regular:tube=A:i=1:l=2", "regular:tube=A:i=0:l=2", "band:l=1:lambda=inf"]),
}


def table_rows(q: Quiver, points: Sequence[TubePoint], engine: str = "auto", primes=None) -> list[dict]:
    """Rows ``e`` with some nonempty Grassmannian, with Gr and Tr columns per module."""
    gr = [tube_euler_chars(t, engine, primes) for t in points]
    tr = [tube_transverse_chars(t, engine, primes) if not t.is_rigid else g for t, g in zip(points, gr)]
    rows = sorted(set().union(*gr))
    d = points[0].dim_vector
    out = []
    for e in rows:
        mono = LaurentPoly.monomial(cc_exponent(q, d, e))
        out.append({"e": list(e), "gr": [g.get(e, 0) for g in gr], "tr": [t.get(e, 0) for t in tr],
                    "monomial": mono.to_json_obj(), "monomial_text": str(mono)})
    return out


def cmd_table(args) -> int:
    if args.figure:
        if args.figure not in FIGURES:
            raise UsageError("--figure: expected 1 or 2")
        alias, specs = FIGURES[args.figure]
        q = _load_quiver(alias)
    else:
        q = _load_quiver(args.quiver)
        specs = args.module
    if not specs:
        raise UsageError("table needs --figure or --module")
    points = [parse_module(q, s) for s in specs]
    if not all(isinstance(t, TubePoint) for t in points):
        raise UsageError("--module: table columns must be tube modules")
    if len({t.dim_vector for t in points}) != 1:
        raise UsageError("--module: table columns must share a dimension vector")
    rows = table_rows(q, points, args.engine, _primes(args))
    names = [t.describe() for t in points]
    header = "e".ljust(8) + "".join(f"{'Gr ' + n:>16}{'Tr ' + n:>16}" for n in names) + "   monomial"
    lines = [header]
    for r in rows:
        cells = "".join(f"{g:>16}{t:>16}" for g, t in zip(r["gr"], r["tr"]))
        lines.append(_vec(r["e"]).ljust(8) + cells + "   " + r["monomial_text"])
    payload = {"quiver": q.to_dict(), "modules": names, "rows": [
        {k: v for k, v in r.items() if k != "monomial_text"} for r in rows]}
    _emit(args, "\n".join(lines), payload)
    return 0


def _base(q: Quiver, name: str | None) -> list[TubePoint]:
    if name:
        try:
            return [bases.tube_base(q, name)]
        except (KeyError, ValueError) as exc:
            raise UsageError(f"--tube: {exc}") from None
    return [bases.tube_base(q, n) for n in bases.exceptional_tubes(q)] + [bases.tube_base(q, "band")]


def _report_out(args, reports: Sequence[bases.Report]) -> int:
    ok = all(r.passed for r in reports)
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.identity} {json.dumps(r.params, sort_keys=True)}" for r in reports]
    _emit(args, "\n".join(lines), [r.to_json_obj() for r in reports])
    return 0 if ok else 1


def cmd_verify(args) -> int:
    q = _load_quiver(args.quiver)
    engine = args.engine
    reports: list[bases.Report] = []
    if args.identity == "diff":
        for base in _base(q, args.tube):
            for l in range(1, args.l + 1):
                reports += bases.verify_difference_property(base, l, engine)
    elif args.identity == "mult":
        for base in _base(q, args.tube):
            explicit = [args.m, args.n, args.j, args.k]
            if all(x is not None for x in explicit):
                try:
                    reports.append(bases.verify_multiplication_formula(base, *explicit, engine=engine))
                except ValueError as exc:
                    raise UsageError(f"--m/--n/--j/--k: {exc}") from None
            elif any(x is not None for x in explicit):
                raise UsageError("--m, --n, --j, --k must be given together")
            else:
                for inst in bases.multiplication_instances(base.rank, args.count):
                    reports.append(bases.verify_multiplication_formula(base, *inst, engine=engine))
    elif args.identity == "key":
        tubes = [b for b in _base(q, args.tube) if b.rank >= 2]
        if not tubes:
            raise UsageError("key identity needs an exceptional tube")
        for base in tubes:
            for l in range(1, args.l + 1):
                reports.append(bases.verify_key_identity(base, l, engine))
    elif args.identity == "geom":
        bound = _vector(args.bound, "--bound") if args.bound else tuple(classify_affine(q).delta)
        reports = bases.geometrization_check(q, bound, args.depth, engine)
    elif args.identity == "positivity":
        element = transverse_character(_object(q, args.module), engine)
        seqs = [args.sequence] if args.sequence else ["1", "2", "1,2"]
        for s in seqs:
            seq = _vector(s, "--sequence")
            if any(not 1 <= k <= q.vertex_count for k in seq):
                raise UsageError("--sequence: vertices are 1-based")
            reports.append(bases.positivity_spotcheck(element, [k - 1 for k in seq], q))
    return _report_out(args, reports)


def cmd_basis(args) -> int:
    q = _load_quiver(args.quiver)
    bound = _vector(args.bound, "--bound") if args.bound else tuple(2 * x for x in classify_affine(q).delta)
    if len(bound) != q.vertex_count:
        raise UsageError("--bound: length must equal the number of vertices")
    sets = bases.basis_sets(q, bound, args.depth, args.engine)
    elements = sorted(sets.by_name(args.which), key=lambda e: e.den)
    lines = [f"den={list(e.den)}  {e.label}  =  {e.value}" for e in elements]
    payload = [{"den": list(e.den), "label": e.label, "value": e.value.to_json_obj()} for e in elements]
    _emit(args, "\n".join(lines), payload)
    return 0


# -- parser -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", default="kronecker", help="alias (kronecker, a21, a31, a_{r,s}) or file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--primes", help="comma separated primes for point counting")
    common.add_argument("--depth", type=int, default=4, help="mutation depth")
    common.add_argument("--bound", help="comma separated dimension or denominator bound")
    common.add_argument("--engine", choices=ENGINES, default="auto", help="Euler characteristic engine")

    parser = argparse.ArgumentParser(prog="qgr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("delta", parents=[common], help="affine type and minimal imaginary root").set_defaults(
        func=cmd_delta)
    p = sub.add_parser("euler-form", parents=[common], help="evaluate <e, f>")
    p.add_argument("--e", required=True)
    p.add_argument("--f", required=True)
    p.set_defaults(func=cmd_euler_form)
    sub.add_parser("roots", parents=[common], help="positive roots inside --bound").set_defaults(func=cmd_roots)
    p = sub.add_parser("mutate", parents=[common], help="mutate the initial seed")
    p.add_argument("--sequence", help="comma separated 1-based vertices")
    p.set_defaults(func=cmd_mutate)
    sub.add_parser("variables", parents=[common], help="cluster variables up to --depth").set_defaults(
        func=cmd_variables)
    for name, transverse in (("char", False), ("transverse", True)):
        p = sub.add_parser(name, parents=[common], help=("transverse" if transverse else "cluster") + " character")
        p.add_argument("--module", action="append", default=[], help="module spec, repeat for direct sums")
        p.set_defaults(func=lambda a, t=transverse: cmd_char(a, t))
    p = sub.add_parser("table", parents=[common], help="Gr and Tr Euler characteristics side by side")
    p.add_argument("--figure", help="1 (Kronecker) or 2 (A~2,1)")
    p.add_argument("--module", action="append", default=[])
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="check an identity")
    p.add_argument("identity", choices=["diff", "mult", "key", "geom", "positivity"])
    p.add_argument("--tube", help="A, B, band or band:<lambda>; default: every tube")
    p.add_argument("--l", type=int, default=2, help="largest l to check")
    for flag in ("--m", "--n", "--j", "--k"):
        p.add_argument(flag, type=int)
    p.add_argument("--count", type=int, default=5, help="number of multiplication instances")
    p.add_argument("--module", action="append", default=[], help="element for positivity, as theta_Tr")
    p.add_argument("--sequence", help="mutation sequence for positivity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("basis", parents=[common], help="truncated B(Q), G(Q) or C(Q)")
    p.add_argument("which", choices=["B", "G", "C"])
    p.set_defaults(func=cmd_basis)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qgr {args.command}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"qgr {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
