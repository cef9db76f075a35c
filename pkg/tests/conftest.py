"""Shared helpers and hypothesis strategies."""

from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from tropnp.core import Monomial, NPPoly, PolyInY, parse_poly, parse_poly_in_y

settings.register_profile("tnp", max_examples=60, deadline=None)
settings.load_profile("tnp")


def P(text, variables=("x",)):
    return parse_poly(text, list(variables))


def F(text, variables=("x",)):
    return parse_poly_in_y(text, list(variables))


small = st.integers(-3, 3).map(Fraction)
halves = st.integers(-6, 6).map(lambda k: Fraction(k, 2))


def monomials(n, coeffs=small, exps=small):
    return st.builds(lambda c, e: Monomial(tuple(e), c), coeffs, st.lists(exps, min_size=n, max_size=n))


def polys(n=1, max_size=4, coeffs=small, exps=small):
    return st.lists(monomials(n, coeffs, exps), min_size=1, max_size=max_size).map(lambda ms: NPPoly(ms, n))


def points(n, values=st.integers(-20, 20).map(lambda k: Fraction(k, 3))):
    return st.lists(values, min_size=n, max_size=n).map(tuple)


@pytest.fixture
def line():
    """The tropical line ``y + x + 0`` as a polynomial in y."""
    return F("y + x + 0")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
