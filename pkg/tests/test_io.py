import json

import pytest
from hypothesis import given

from conftest import F, P, polys
from tropnp.core import RationalPL
from tropnp.io import Document, DocumentError, dumps, from_json, loads
from tropnp.sat import CNF3, reduce_3sat

XY = ["x", "y"]


def docs():
    yield Document("polynomial", P("1/2*x^(1/3) + -2*y^-1 + 0", XY), XY)
    yield Document("polynomial-in-y", F("(x + 0) * y^2 + -1/3*y + 0"), ["x"])
    yield Document("system", [P("x + y + 0", XY), P("x*y + 1", XY)], XY)
    yield Document("rational-function", RationalPL(P("0"), P("x + 0")), ["x"])
    yield Document("resolution", {"y1": P("x + 0"), "y2": RationalPL(P("x^(1/2)"), P("0"))}, ["x"])
    yield Document("cnf", CNF3.make(3, [(1, -2, 3), (2, 2, -1)]))
    yield Document("tropical-system", reduce_3sat(CNF3.make(2, [(1, -2, 2)])), ["x"])


@pytest.mark.parametrize("doc", list(docs()), ids=lambda d: d.kind)
def test_round_trip(doc):
    text = dumps(doc)
    assert loads(text) == doc
    assert dumps(loads(text)) == text


@given(polys(2, coeffs=__import__("conftest").halves, exps=__import__("conftest").halves))
def test_polynomial_round_trip_is_exact(p):
    doc = Document("polynomial", p, XY)
    assert loads(dumps(doc)).payload == p


def test_expr_input():
    d = from_json({"format": "tnp/1", "kind": "polynomial", "variables": ["x"], "expr": "x ⊕ 0"})
    assert d.payload == P("x + 0")
    d = from_json({"format": "tnp/1", "kind": "polynomial-in-y", "variables": ["x"], "expr": "y + x + 0"})
    assert d.payload == F("y + x + 0")


def _base(**kw):
    d = {"format": "tnp/1", "kind": "polynomial", "variables": ["x", "y"],
         "monomials": [{"coeff": "1", "exps": ["0", "1"]}]}
    d.update(kw)
    return d


@pytest.mark.parametrize("doc,field", [
    (_base(format="tnp/0"), "$.format"),
    (_base(kind="poem"), "$.kind"),
    (_base(monomials=[{"coeff": "1", "exps": ["0"]}]), "$.monomials[0].exps"),
    (_base(monomials=[{"coeff": 0.5, "exps": ["0", "1"]}]), "$.monomials[0].coeff"),
    (_base(monomials=[{"coeff": "1/0", "exps": ["0", "1"]}]), "$.monomials[0].coeff"),
    (_base(monomials=[{"exps": ["0", "1"]}]), "$.monomials[0].coeff"),
    (_base(monomials=[]), "$.monomials"),
    (_base(variables=["x", "x"]), "$.variables"),
    ({"format": "tnp/1", "kind": "cnf", "num_vars": 2, "clauses": [[1, 2, 3]]}, "$.clauses"),
    ({"format": "tnp/1", "kind": "polynomial", "variables": ["x"], "expr": "x +"}, "$.expr"),
])
def test_errors_name_the_field(doc, field):
    with pytest.raises(DocumentError) as err:
        from_json(doc)
    assert str(err.value).startswith(field)


def test_invalid_json():
    with pytest.raises(DocumentError):
        loads("{not json")


def test_rationals_are_strings():
    data = json.loads(dumps(Document("polynomial", P("-3/2*x^2"), ["x"])))
    assert data["monomials"][0] == {"coeff": "-3/2", "exps": ["2"]}
