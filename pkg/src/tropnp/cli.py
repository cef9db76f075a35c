"""``tnp`` command-line front end.

Inputs are ``tnp/1`` JSON documents (see :mod:`tropnp.io`); ``reduce-3sat``
also reads DIMACS.  Results go to stdout as JSON.  Exit status: 0 for a
positive answer, 1 for a negative one, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .core import NPPoly, ParseError, RationalPL, eval_poly, fmt_rational
from .curve import (build_curve, enumerate_resolutions, indeterminate_names, pl_to_np,
                    resolve_curve, resolve_curve_rational, verify_curve_resolution)
from .divider import divide
from .geom import NotACurveError, extract_skeleton, prevariety, reduce_poly
from .io import Document, DocumentError, loads, poly_to_json, to_json
from .resolver import (ResolutionError, brute_force_resolutions, minimal_resolution_monic,
                       minimal_resolution_rational, verify_rational_resolution, verify_resolution)
from .sat import CNFError, parse_dimacs, reduce_3sat


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(path: str, kinds: Sequence[str]) -> Document:
    try:
        doc = loads(_read(path))
    except DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None
    if doc.kind not in kinds:
        raise InputError(f"{path}: $.kind is {doc.kind!r}, expected {' or '.join(kinds)}")
    return doc


def _poly_out(p: NPPoly, variables: Sequence[str]) -> Dict[str, Any]:
    return {"expr": p.to_str(variables), **poly_to_json(p)}


def _value_out(v, variables: Sequence[str]) -> Dict[str, Any]:
    if isinstance(v, RationalPL):
        return {"expr": v.to_str(variables), "num": _poly_out(v.g, variables), "den": _poly_out(v.h, variables)}
    return _poly_out(v, variables)


def _point(p) -> Optional[List[str]]:
    return None if p is None else [fmt_rational(v) for v in p]


def _emit(obj: Dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _system(doc: Document) -> List[NPPoly]:
    return [doc.payload] if doc.kind == "polynomial" else list(doc.payload)


# subcommands -------------------------------------------------------------

def cmd_eval(a) -> int:
    doc = _load(a.file, ("polynomial", "rational-function"))
    try:
        pt = [Fraction(s.strip()) for s in a.point.split(",") if s.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--point: not a list of rationals: {a.point!r}") from None
    if len(pt) != len(doc.variables):
        raise InputError(f"--point: {len(pt)} values for {len(doc.variables)} variables")
    v = eval_poly(doc.payload, pt) if doc.kind == "polynomial" else doc.payload(pt)
    _emit({"value": fmt_rational(v)})
    return 0


def cmd_reduce(a) -> int:
    doc = _load(a.file, ("polynomial",))
    r = reduce_poly(doc.payload)
    _emit({**to_json(Document("polynomial", r, doc.variables)), "expr": r.to_str(doc.variables)})
    return 0


def cmd_divide(a) -> int:
    d0 = _load(a.f0, ("polynomial",))
    d1 = _load(a.f1, ("polynomial",))
    if d0.variables != d1.variables:
        raise InputError(f"{a.f1}: $.variables differ from those of {a.f0}")
    try:
        q = divide(d0.payload, d1.payload)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if q is None:
        _emit({"divisible": False, "message": "not divisible"})
        return 1
    _emit({"divisible": True, "quotient": _poly_out(q, d0.variables)})
    return 0


def cmd_verify(a) -> int:
    f = _load(a.f, ("polynomial-in-y",))
    y = _load(a.y, ("rational-function",) if a.rational else ("polynomial", "rational-function"))
    if y.variables != f.variables:
        raise InputError(f"{a.y}: $.variables must be {f.variables}")
    if isinstance(y.payload, RationalPL):
        res = verify_rational_resolution(f.payload, y.payload, a.method)
    else:
        res = verify_resolution(f.payload, y.payload, a.method)
    _emit({"ok": res.ok, "witness": _point(res.witness)})
    return 0 if res.ok else 1


def cmd_resolve_monic(a) -> int:
    f = _load(a.f, ("polynomial-in-y",))
    try:
        y = minimal_resolution_monic(f.payload)
    except ResolutionError as exc:
        raise InputError(f"{a.f}: {exc}") from None
    _emit({"resolution": _poly_out(y, f.variables)})
    return 0


def cmd_resolve_rational(a) -> int:
    f = _load(a.f, ("polynomial-in-y",))
    try:
        y = minimal_resolution_rational(f.payload)
    except ResolutionError as exc:
        raise InputError(f"{a.f}: {exc}") from None
    _emit({"resolution": _value_out(y, f.variables)})
    return 0


def cmd_prevariety(a) -> int:
    doc = _load(a.system, ("system", "polynomial"))
    T = prevariety(_system(doc))
    cells = [{"dim": T.cells[c].dim, "witness": _point(T.cells[c].witness),
              "argmins": [list(l) for l in T.labels[c]]} for c in T.members()]
    out: Dict[str, Any] = {"ambient_dim": T.dim_ambient, "dim": T.dim(), "cells": cells}
    if T.dim() <= 1:
        skel = extract_skeleton(T)
        out["skeleton"] = {
            "vertices": [_point(v) for v in skel.vertices],
            "edges": [{"kind": e.kind, "start": _point(e.start), "end": _point(e.end),
                       "direction": _point(e.direction)} for e in skel.edges],
            "counts": skel.counts(),
        }
        if a.svg:
            _svg(skel, a.svg)
    elif a.svg:
        raise InputError("--svg: only prevarieties of dimension at most one can be drawn")
    _emit(out)
    return 0 if T.members() else 1


def _svg(skel, path, overlay=None) -> None:
    from .plot import render_svg
    if skel.dim_ambient != 2:
        raise InputError(f"--svg: ambient dimension is {skel.dim_ambient}, plots need 2")
    render_svg(skel, path, overlay=overlay)


def cmd_resolve_curve(a) -> int:
    doc = _load(a.system, ("system", "polynomial"))
    names = indeterminate_names(len(doc.variables) - 1)
    try:
        c = build_curve(prevariety(_system(doc)))
    except NotACurveError as exc:
        raise InputError(f"{a.system}: not a curve: {exc}") from None
    except ValueError as exc:
        raise InputError(f"{a.system}: {exc}") from None
    xv = doc.variables[:1]
    if a.rational:
        sols = resolve_curve_rational(c)
        found = [] if sols is None else [dict(zip(names, sols))]
    else:
        if a.enumerate:
            paths = enumerate_resolutions(c, a.enumerate)
        else:
            one = resolve_curve(c)
            paths = [] if one is None else [one]
        found = [dict(zip(names, (pl_to_np(f) for f in fs))) for fs in paths]
    if a.svg:
        overlay = None
        if found and c.dim_ambient == 2 and not a.rational:
            from .plot import resolution_polyline, window
            overlay = resolution_polyline(paths[0][0], window(c.skeleton))
        _svg(c.skeleton, a.svg, overlay)
    if not found:
        _emit({"resolvable": False, "message": "not resolvable"})
        return 1
    out = []
    for sol in found:
        ok = verify_curve_resolution(c.system, [sol[nm] for nm in names]).ok
        out.append({"values": {nm: _value_out(v, xv) for nm, v in sol.items()}, "verified": ok})
    _emit({"resolvable": True, "resolutions": out})
    return 0


def cmd_reduce_3sat(a) -> int:
    text = _read(a.cnf)
    try:
        if text.lstrip().startswith("{"):
            doc = loads(text)
            if doc.kind != "cnf":
                raise InputError(f"{a.cnf}: $.kind is {doc.kind!r}, expected cnf")
            cnf = doc.payload
        else:
            cnf = parse_dimacs(text)
    except (DocumentError, CNFError) as exc:
        raise InputError(f"{a.cnf}: {exc}") from None
    sysm = reduce_3sat(cnf)
    _emit(to_json(Document("tropical-system", sysm, ["x"])))
    return 0


def cmd_brute_resolve(a) -> int:
    f = _load(a.f, ("polynomial-in-y",))
    if a.max_support < 1:
        raise InputError("--max-support must be at least 1")
    found = brute_force_resolutions(f.payload, a.max_support)
    _emit({"count": len(found), "resolutions": [_poly_out(y, f.variables) for y in found]})
    return 0 if found else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tnp", description="Exact tropical Newton-Puiseux toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="evaluate a polynomial or rational function at a point")
    s.add_argument("file")
    s.add_argument("--point", required=True, help='comma-separated rationals, e.g. "1/2,-3"')
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("reduce", help="keep only the essential monomials")
    s.add_argument("file")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("divide", help="exact quotient f0 / f1 of Laurent polynomials")
    s.add_argument("f0")
    s.add_argument("f1")
    s.set_defaults(func=cmd_divide)

    s = sub.add_parser("verify-resolution", help="check that Y resolves the polynomial-in-y F")
    s.add_argument("f")
    s.add_argument("y")
    s.add_argument("--rational", action="store_true", help="Y is a rational function")
    s.add_argument("--method", choices=("lp", "partition"), default="lp")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("resolve-monic", help="minimal resolution of a monic polynomial")
    s.add_argument("f")
    s.set_defaults(func=cmd_resolve_monic)

    s = sub.add_parser("resolve-rational", help="minimal rational resolution")
    s.add_argument("f")
    s.set_defaults(func=cmd_resolve_rational)

    s = sub.add_parser("prevariety", help="cells of the prevariety of a system")
    s.add_argument("system")
    s.add_argument("--svg", metavar="OUT")
    s.set_defaults(func=cmd_prevariety)

    s = sub.add_parser("resolve-curve", help="resolve a tropical curve in (x, y1, ...)")
    s.add_argument("system")
    s.add_argument("--rational", action="store_true")
    s.add_argument("--enumerate", type=int, metavar="N", default=0)
    s.add_argument("--svg", metavar="OUT")
    s.set_defaults(func=cmd_resolve_curve)

    s = sub.add_parser("reduce-3sat", help="tropical system of a 3-CNF (JSON or DIMACS)")
    s.add_argument("cnf")
    s.set_defaults(func=cmd_reduce_3sat)

    for name in ("brute-resolve", "brute-force-resolve"):
        s = sub.add_parser(name, help="all resolutions with bounded support")
        s.add_argument("f")
        s.add_argument("--max-support", type=int, required=True)
        s.set_defaults(func=cmd_brute_resolve)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError) as exc:
        sys.stderr.write(f"tnp: error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
