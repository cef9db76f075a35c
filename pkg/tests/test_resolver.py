import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F, P, points, polys
from tropnp.core import Monomial, NPPoly, PolyInY, eval_poly, is_tropical_root
from tropnp.geom import poly_equal
from tropnp.resolver import (ResolutionError, brute_force_resolutions, candidate_coeffs, combine_min,
                             graph_in_hypersurface, lemma_partition_check, minimal_resolution_monic,
                             minimal_resolution_rational, verify_rational_resolution, verify_resolution,
                             viable_candidates)
from tropnp.ties import sample_points

GRID = [(Fraction(k, 3),) for k in range(-30, 31)]


def _single_min(f: PolyInY, y, x) -> bool:
    vals = [eval_poly(f[i], x) + i * y(x) for i in f.present()]
    return vals.count(min(vals)) == 1


# the paper's worked example ---------------------------------------------

def test_line_example_resolves(line):
    assert verify_resolution(line, P("x + 0"))
    assert verify_resolution(line, P("x + 0"), method="partition")


def test_line_rejects_constant(line):
    for method in ("lp", "partition"):
        res = verify_resolution(line, P("0"), method)
        assert not res and _single_min(line, P("0"), res.witness)


def test_line_brute_force_includes_known(line):
    found = brute_force_resolutions(line, 2)
    assert any(poly_equal(y, P("x + 0")) for y in found)


# the non-monic example ---------------------------------------------------

def test_non_monic_has_no_polynomial_resolution():
    f = F("(x + 0) * y + 0")
    assert brute_force_resolutions(f, 3) == []
    assert not verify_resolution(f, P("0"))
    assert not verify_resolution(f, P("-1*x + 0"))


def test_non_monic_rational_resolution():
    f = F("(x + 0) * y + 0")
    r = minimal_resolution_rational(f)
    assert poly_equal(r.g, P("0")) and poly_equal(r.h, P("x + 0"))
    assert verify_rational_resolution(f, r)
    assert verify_rational_resolution(f, r, method="partition")
    assert all(r(x) == -min(x[0], 0) for x in GRID)


# monic minimal resolution --------------------------------------------------

def test_monic_quadratic():
    f = F("y^2 + x*y + 0")
    y = minimal_resolution_monic(f)
    assert poly_equal(y, P("x + 0"))
    assert verify_resolution(f, y)
    assert [poly_equal(b, y) for b in brute_force_resolutions(f, 3)] == [True]


def test_monic_root_formula():
    f = F("y^2 + 2*x^2")  # single lower term: y = (2 x^2)^(1/2) = 1 x
    assert minimal_resolution_monic(f) == P("1*x")


def test_monic_requires_leading_unit():
    with pytest.raises(ResolutionError):
        minimal_resolution_monic(F("1*y + 0"))
    with pytest.raises(ResolutionError):
        minimal_resolution_monic(F("(x + 0) * y + 0"))


def _random_monic(rng, n, d):
    coeffs = []
    for i in range(d):
        if i > 0 and rng.random() < 0.3:
            coeffs.append(None)
            continue
        ms = [Monomial(tuple(Fraction(rng.randint(-2, 2)) for _ in range(n)), Fraction(rng.randint(-2, 2)))
              for _ in range(rng.randint(1, 3))]
        coeffs.append(NPPoly(ms, n))
    coeffs.append(NPPoly.constant(0, n))
    return PolyInY(coeffs, n)


@pytest.mark.parametrize("seed", range(12))
def test_monic_minimal_and_brute_force_agree(seed):
    import random
    rng = random.Random(seed)
    f = _random_monic(rng, rng.randint(1, 2), rng.randint(1, 3))
    y = minimal_resolution_monic(f)
    assert verify_resolution(f, y)
    found = brute_force_resolutions(f, 2)
    for b in found:
        assert verify_resolution(f, b)
        assert all(eval_poly(y, x) <= eval_poly(b, x) for x in sample_points(f.arity))
        assert verify_resolution(f, combine_min(f, y, b))


# verification oracles --------------------------------------------------------

@given(polys(1, max_size=3), polys(1, max_size=3), polys(1, max_size=3))
def test_lp_and_partition_verification_agree(f0, f1, y):
    f = PolyInY([f0, f1, NPPoly.constant(0, 1)], 1)
    a = verify_resolution(f, y, "lp")
    b = verify_resolution(f, y, "partition")
    assert a.ok == b.ok
    if a.ok:
        assert graph_in_hypersurface(f, y, GRID)
    else:
        assert _single_min(f, y, a.witness) and _single_min(f, y, b.witness)


@given(polys(2, max_size=2), polys(2, max_size=2), points(2))
def test_accepted_resolutions_tie_everywhere(f0, y, x):
    f = PolyInY([f0, NPPoly.constant(0, 2)], 2)
    if verify_resolution(f, y):
        assert is_tropical_root(f.to_nppoly(), x + (eval_poly(y, x),))


def test_candidates_follow_tie_equation(line):
    cands = candidate_coeffs(line)
    # y + x + 0: pairs (0:x, 1:0) and (0:0, 1:0) give y = x and y = 0
    assert {(c.exps, c.coeff) for c in cands} == {((Fraction(1),), Fraction(0)), ((Fraction(0),), Fraction(0))}
    for c in cands:
        i1, I1, i2, I2 = c.source
        assert all(a + i1 * e == b + i2 * e for a, b, e in zip(I1, I2, c.exps))
    assert viable_candidates(line) == cands


def test_combine_min_checks_inputs(line):
    with pytest.raises(ResolutionError):
        combine_min(line, P("0"), P("x + 0"))


def test_rational_resolution_with_negative_powers():
    f = F("y^2 + (x + 0) * y + 1*x^-1")
    r = minimal_resolution_rational(f)
    assert verify_rational_resolution(f, r)
    assert verify_rational_resolution(f, r, "partition")


# geometric description -----------------------------------------------------

@pytest.mark.parametrize("text,y", [("y + x + 0", "x + 0"), ("y^2 + x*y + 0", "x + 0"),
                                    ("y^2 + (x + 0)*y + 1*x^2", None), ("y^3 + -1*y + x^-1", None)])
def test_lemma_partition(text, y):
    f = F(text)
    y = minimal_resolution_monic(f) if y is None else P(y)
    assert verify_resolution(f, y)
    cells = lemma_partition_check(f, y)
    assert cells and all(c.ok for c in cells)
    assert all(c.subcells for c in cells)
