import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P, points, polys
from tropnp.core import AffineFunc, eval_poly
from tropnp.geom import (NotACurveError, buck_bound, buck_face_bound, essential_monomials, extract_skeleton,
                         locate, polyhedron_dim, poly_equal, prevariety, reduce_poly, sign_partition)


def A(c, *g):
    return AffineFunc.make(c, g)


def test_partition_of_the_line():
    cells = sign_partition([A(0, 1), A(-1, 1), A(1, 0)])
    # x < 0, x = 0, 0 < x < 1, x = 1, x > 1
    assert len(cells) == 5
    assert sorted(c.dim for c in cells) == [0, 0, 1, 1, 1]


def test_generic_lines_in_the_plane():
    # three lines in general position: 7 regions, 9 edges, 3 vertices
    funcs = [A(0, 1, 0), A(0, 0, 1), A(-1, 1, 1)]
    cells = sign_partition(funcs)
    dims = [c.dim for c in cells]
    assert (dims.count(2), dims.count(1), dims.count(0)) == (7, 9, 3)


@given(st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=1, max_size=4), points(2))
def test_witness_has_its_signs_and_points_locate_uniquely(raw, x):
    funcs = [A(c, a, b) for c, a, b in raw if (a, b) != (0, 0)] or [A(0, 1, 0)]
    cells = sign_partition(funcs)
    for c in cells:
        assert tuple((f(c.witness) > 0) - (f(c.witness) < 0) for f in funcs) == c.signs
    assert len(locate(cells, funcs, x)) == 1


def test_tropical_line_is_three_half_lines():
    T = prevariety([P("y + x + 0", "xy")])
    mem = T.members()
    assert sorted(T.cells[c].dim for c in mem) == [0, 1, 1, 1]
    skel = extract_skeleton(T)
    assert skel.vertices == [(0, 0)]
    assert skel.counts() == {"vertex": 1, "segment": 0, "ray": 3, "line": 0}
    outward = sorted(e.ray()[1] for e in skel.edges)
    # directions (-1,-1), (0,1), (1,0) from the origin, up to normalization sign
    assert {tuple(abs(v) for v in d) for d in outward} == {(1, 1), (0, 1), (1, 0)}
    assert all(e.ray()[0] == (0, 0) for e in skel.edges)


def test_full_line_edge():
    T = prevariety([P("y + x", "xy")])
    skel = extract_skeleton(T)
    assert skel.counts()["line"] == 1 and not skel.vertices


def test_two_dimensional_prevariety_is_not_a_curve():
    T = prevariety([P("x + y + z + 0", "xyz")])
    assert T.dim() == 2
    with pytest.raises(NotACurveError):
        extract_skeleton(T)


def test_empty_prevariety():
    T = prevariety([P("x", "xy")])
    assert T.members() == []


def test_essential_monomials():
    assert essential_monomials(P("x^2 + x + 0")) == (0, 2)
    assert essential_monomials(P("x^2 + -1*x + 0")) == (0, 1, 2)
    assert reduce_poly(P("x^2 + x + 0")) == P("x^2 + 0")


@given(polys(2, max_size=5), points(2))
def test_reduction_preserves_values(p, x):
    assert eval_poly(reduce_poly(p), x) == eval_poly(p, x)


def _critical_grid(*ps):
    """All possible breakpoints, midpoints between them, and far points on each side."""
    ms = [m for p in ps for m in p.monomials]
    bps = sorted({(b.coeff - a.coeff) / (a.exps[0] - b.exps[0])
                  for a, b in itertools.combinations(ms, 2) if a.exps[0] != b.exps[0]})
    if not bps:
        return [Fraction(0)]
    mids = [(a + b) / 2 for a, b in zip(bps, bps[1:])]
    return bps + mids + [bps[0] - 1, bps[-1] + 1]


@given(polys(1), polys(1))
def test_poly_equal_matches_exact_equality(p, q):
    xs = _critical_grid(p, q)
    assert poly_equal(p, q) == all(eval_poly(p, [x]) == eval_poly(q, [x]) for x in xs)


def test_bounds():
    assert buck_bound(1, 2, 2) == 256
    assert buck_face_bound(1, 2, 1) == 4 * 4 * 36
    T = prevariety([P("y + x + 0", "xy")])
    assert len(T.cells) <= buck_face_bound(1, 2, 1)


def test_polyhedron_dim_detects_implicit_equalities():
    from tropnp.geom import Polyhedron
    from tropnp.lp import ge
    P2 = Polyhedron(2, (ge(A(0, 1, 0)), ge(A(0, -1, 0))))
    assert polyhedron_dim(P2) == 1
