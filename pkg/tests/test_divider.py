import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import P, polys
from oracles import brute_force_quotients, pl_quotient_1d
from tropnp.core import Monomial, NPPoly, trop_mul
from tropnp.curve import pl_to_np
from tropnp.divider import divide, is_divisible
from tropnp.geom import poly_equal, reduce_poly

XY = ("x", "y")


def test_square_by_linear():
    assert divide(P("x^2 + 0"), P("x + 0")) == P("x + 0")


def test_not_divisible():
    assert divide(P("x + 0"), P("x^2 + 0")) is None
    assert divide(P("0"), P("x + 0")) is None
    assert is_divisible(P("x^2 + 1*x + 0"), P("x + 0"))  # 1 x is not essential
    assert not is_divisible(P("x^2 + -1*x + 0"), P("x + 0"))


def test_self_quotient_is_unit():
    f = P("x^2 + 3*x + 1")
    assert divide(f, f) == P("0")


def test_laurent_quotient():
    assert divide(P("x^-1 + 0"), P("x + 0")) == P("x^-1")


def test_two_variables():
    a, b = P("x + y + 0", XY), P("x*y + 1*x + y^-1", XY)
    q = divide(reduce_poly(trop_mul(a, b)), b)
    assert q is not None and poly_equal(q, a)


def test_rejects_fractional_exponents():
    with pytest.raises(ValueError):
        divide(P("x^(1/2)"), P("0"))


@given(polys(1, max_size=3), polys(1, max_size=3))
def test_product_divides_back(a, b):
    q = divide(trop_mul(a, b), b)
    assert q is not None and q == reduce_poly(a)


@given(polys(2, max_size=2), polys(2, max_size=2))
def test_product_divides_back_2d(a, b):
    q = divide(trop_mul(a, b), b)
    assert q is not None and q == reduce_poly(a)


@given(polys(1, max_size=3), polys(1, max_size=3))
def test_univariate_pl_oracle(f0, f1):
    want = pl_quotient_1d(f0, f1)
    got = divide(f0, f1)
    if want is None:
        assert got is None
    else:
        assert got == reduce_poly(pl_to_np(want))


def test_brute_force_agrees_on_a_slice():
    mons = [Monomial((Fraction(e),), Fraction(c)) for e in range(3) for c in (-1, 0, 1)]
    ps = [NPPoly(s, 1) for k in (1, 2) for s in itertools.combinations(mons, k)
          if len({m.exps for m in s}) == k]
    for f0, f1 in itertools.product(ps, repeat=2):
        found = brute_force_quotients(f0, f1)
        assert len(found) <= 1
        got = divide(f0, f1)
        assert (got is None) == (not found)
        if found:
            assert got == found[0]
