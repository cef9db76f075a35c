"""JSON documents, format ``tnp/1``.

Every document is an object with ``"format": "tnp/1"`` and a ``"kind"``.
Rationals are always strings (``"3"``, ``"-1/2"``) so that nothing passes
through floating point.  Polynomials are given either as a ``"monomials"``
list of ``{"coeff": q, "exps": [q, ...]}`` or as an ``"expr"`` string in the
parser syntax.

kinds and their fields::

    polynomial          variables, monomials | expr
    polynomial-in-y     variables, y, coeffs {degree: poly} | expr
    system              variables, polys [poly] | exprs [str]
    rational-function   variables, num, den
    resolution          variables, values {name: poly | {num, den}}
    cnf                 num_vars, clauses [[int, int, int]]
    tropical-system     indeterminates, polys [{terms: [{coeff, powers}]}]
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from .core import Monomial, NPPoly, PolyInY, RationalPL, fmt_rational, parse_poly, parse_poly_in_y
from .sat import CNF3, TropicalSystem
from .ties import SysPoly, Term

FORMAT = "tnp/1"
KINDS = ("polynomial", "polynomial-in-y", "system", "rational-function",
         "resolution", "cnf", "tropical-system")


class DocumentError(ValueError):
    """Malformed document; the message starts with the offending field path."""


@dataclass
class Document:
    kind: str
    payload: Any
    variables: List[str] = field(default_factory=list)
    y: str = "y"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return (self.kind, self.variables, self.y) == (other.kind, other.variables, other.y) \
            and _payload_eq(self.payload, other.payload)


def _payload_eq(a, b) -> bool:
    if isinstance(a, TropicalSystem) and isinstance(b, TropicalSystem):
        return (a.indeterminates, a.polys, a.x_arity, a.labels) == (b.indeterminates, b.polys, b.x_arity, b.labels)
    return a == b


# rationals -----------------------------------------------------------------

def q_out(q: Fraction) -> str:
    return fmt_rational(q)


def q_in(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(f"{path}: expected a rational string like \"-3/2\", got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{path}: not a rational: {value!r}") from None


def _expect(d: Mapping, key: str, path: str, typ=None):
    if not isinstance(d, Mapping):
        raise DocumentError(f"{path}: expected an object")
    if key not in d:
        raise DocumentError(f"{path}.{key}: missing")
    v = d[key]
    if typ is not None and not isinstance(v, typ):
        raise DocumentError(f"{path}.{key}: expected {typ.__name__ if isinstance(typ, type) else typ}")
    return v


# polynomials -------------------------------------------------------------

def poly_to_json(p: NPPoly) -> Dict[str, Any]:
    return {"monomials": [{"coeff": q_out(m.coeff), "exps": [q_out(e) for e in m.exps]}
                          for m in p.monomials]}


def poly_from_json(d: Any, variables: Sequence[str], path: str) -> NPPoly:
    n = len(variables)
    if isinstance(d, str):
        return _parse(d, variables, path)
    if isinstance(d, Mapping) and "expr" in d:
        return _parse(_expect(d, "expr", path, str), variables, path + ".expr")
    monos = _expect(d, "monomials", path, list)
    if not monos:
        raise DocumentError(f"{path}.monomials: a polynomial needs at least one monomial")
    out = []
    for k, m in enumerate(monos):
        mp = f"{path}.monomials[{k}]"
        exps = _expect(m, "exps", mp, list)
        if len(exps) != n:
            raise DocumentError(f"{mp}.exps: length {len(exps)} but {n} variables declared")
        out.append(Monomial(tuple(q_in(e, f"{mp}.exps[{i}]") for i, e in enumerate(exps)),
                            q_in(_expect(m, "coeff", mp), f"{mp}.coeff")))
    return NPPoly(out, n)


def _parse(text: str, variables: Sequence[str], path: str) -> NPPoly:
    try:
        return parse_poly(text, variables)
    except ValueError as exc:
        raise DocumentError(f"{path}: {exc}") from None


def _variables(d: Mapping, path: str = "$") -> List[str]:
    vs = _expect(d, "variables", path, list)
    if not all(isinstance(v, str) and v for v in vs):
        raise DocumentError(f"{path}.variables: expected a list of names")
    if len(set(vs)) != len(vs):
        raise DocumentError(f"{path}.variables: duplicate names")
    return list(vs)


def _value_to_json(v: Union[NPPoly, RationalPL]) -> Dict[str, Any]:
    if isinstance(v, RationalPL):
        return {"num": poly_to_json(v.g), "den": poly_to_json(v.h)}
    return poly_to_json(v)


def _value_from_json(d: Any, variables: Sequence[str], path: str) -> Union[NPPoly, RationalPL]:
    if isinstance(d, Mapping) and "num" in d:
        return RationalPL(poly_from_json(d["num"], variables, path + ".num"),
                          poly_from_json(_expect(d, "den", path), variables, path + ".den"))
    return poly_from_json(d, variables, path)


# documents ---------------------------------------------------------------

def to_json(doc: Document) -> Dict[str, Any]:
    out: Dict[str, Any] = {"format": FORMAT, "kind": doc.kind}
    p = doc.payload
    if doc.kind in ("polynomial", "polynomial-in-y", "system", "rational-function", "resolution"):
        out["variables"] = list(doc.variables)
    if doc.kind == "polynomial":
        out.update(poly_to_json(p))
    elif doc.kind == "polynomial-in-y":
        out["y"] = doc.y
        out["coeffs"] = {str(i): poly_to_json(p[i]) for i in p.present()}
    elif doc.kind == "system":
        out["polys"] = [poly_to_json(q) for q in p]
    elif doc.kind == "rational-function":
        out.update(_value_to_json(p))
    elif doc.kind == "resolution":
        out["values"] = {name: _value_to_json(v) for name, v in p.items()}
    elif doc.kind == "cnf":
        out["num_vars"] = p.num_vars
        out["clauses"] = [list(cl) for cl in p.clauses]
    elif doc.kind == "tropical-system":
        out["x_variables"] = list(doc.variables) or ["x"]
        out["indeterminates"] = list(p.indeterminates)
        out["polys"] = [{"terms": [{"coeff": poly_to_json(t.coeff),
                                    "powers": {nm: q_out(e) for nm, e in t.powers}}
                                   for t in q.terms]} for q in p.polys]
        if p.labels:
            out["labels"] = list(p.labels)
    else:
        raise DocumentError(f"$.kind: unknown kind {doc.kind!r}")
    return out


def from_json(d: Any) -> Document:
    if not isinstance(d, Mapping):
        raise DocumentError("$: expected a JSON object")
    fmt = _expect(d, "format", "$", str)
    if fmt != FORMAT:
        raise DocumentError(f"$.format: unsupported format {fmt!r}, expected {FORMAT!r}")
    kind = _expect(d, "kind", "$", str)
    if kind == "polynomial":
        vs = _variables(d)
        return Document(kind, poly_from_json(d, vs, "$"), vs)
    if kind == "polynomial-in-y":
        vs = _variables(d)
        y = d.get("y", "y")
        if not isinstance(y, str) or y in vs:
            raise DocumentError("$.y: must be a name distinct from the x-variables")
        if "expr" in d:
            try:
                return Document(kind, parse_poly_in_y(_expect(d, "expr", "$", str), vs, y), vs, y)
            except ValueError as exc:
                raise DocumentError(f"$.expr: {exc}") from None
        coeffs = _expect(d, "coeffs", "$", dict)
        parsed = {}
        for key, val in coeffs.items():
            try:
                i = int(key)
            except ValueError:
                raise DocumentError(f"$.coeffs.{key}: degree must be a non-negative integer") from None
            if i < 0:
                raise DocumentError(f"$.coeffs.{key}: degree must be a non-negative integer")
            parsed[i] = poly_from_json(val, vs, f"$.coeffs.{key}")
        if not parsed:
            raise DocumentError("$.coeffs: empty")
        return Document(kind, PolyInY(parsed, len(vs)), vs, y)
    if kind == "system":
        vs = _variables(d)
        if "exprs" in d:
            exprs = _expect(d, "exprs", "$", list)
            polys = [poly_from_json(e, vs, f"$.exprs[{k}]") for k, e in enumerate(exprs)]
        else:
            polys = [poly_from_json(p, vs, f"$.polys[{k}]") for k, p in enumerate(_expect(d, "polys", "$", list))]
        if not polys:
            raise DocumentError("$.polys: a system needs at least one polynomial")
        return Document(kind, polys, vs)
    if kind == "rational-function":
        vs = _variables(d)
        return Document(kind, _value_from_json(d, vs, "$"), vs)
    if kind == "resolution":
        vs = _variables(d)
        vals = _expect(d, "values", "$", dict)
        return Document(kind, {nm: _value_from_json(v, vs, f"$.values.{nm}") for nm, v in vals.items()}, vs)
    if kind == "cnf":
        nv = _expect(d, "num_vars", "$", int)
        clauses = _expect(d, "clauses", "$", list)
        for k, cl in enumerate(clauses):
            if not isinstance(cl, list) or not all(isinstance(l, int) and not isinstance(l, bool) for l in cl):
                raise DocumentError(f"$.clauses[{k}]: expected a list of integer literals")
        try:
            return Document(kind, CNF3.make(nv, clauses))
        except ValueError as exc:
            raise DocumentError(f"$.clauses: {exc}") from None
    if kind == "tropical-system":
        xs = d.get("x_variables", ["x"])
        names = _expect(d, "indeterminates", "$", list)
        polys = []
        for k, q in enumerate(_expect(d, "polys", "$", list)):
            terms = []
            for t_i, t in enumerate(_expect(q, "terms", f"$.polys[{k}]", list)):
                tp = f"$.polys[{k}].terms[{t_i}]"
                coeff = poly_from_json(_expect(t, "coeff", tp), xs, tp + ".coeff")
                powers = _expect(t, "powers", tp, dict)
                terms.append(Term(coeff, tuple((nm, q_in(e, f"{tp}.powers.{nm}")) for nm, e in powers.items())))
            if not terms:
                raise DocumentError(f"$.polys[{k}].terms: empty")
            polys.append(SysPoly(terms, len(xs)))
        try:
            sysm = TropicalSystem(list(names), polys, len(xs), list(d.get("labels", [])))
        except ValueError as exc:
            raise DocumentError(f"$.polys: {exc}") from None
        return Document(kind, sysm, list(xs))
    raise DocumentError(f"$.kind: unknown kind {kind!r}, expected one of {', '.join(KINDS)}")


def dumps(doc: Document) -> str:
    return json.dumps(to_json(doc), indent=2, ensure_ascii=False)


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"$: invalid JSON: {exc}") from None
    return from_json(data)


def load_path(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save_path(doc: Document, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc) + "\n")
