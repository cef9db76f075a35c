"""Polynomial-time divisibility ``f1 (x) y = f0`` of tropical Laurent polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .core import AffineFunc, DimensionError, Monomial, NPPoly
from .geom import reduce_poly
from .lp import ge, lp_solve


def _sup_gap(f0: NPPoly, c: Monomial, exps) -> Optional[Fraction]:
    """``sup_x f0(x) - c.coeff - exps.x`` or ``None`` when unbounded.

    LP in ``(x, t)``: maximize ``t`` subject to ``t <= b + (B - exps).x - c``
    for every monomial ``(b, B)`` of ``f0``.
    """
    n = f0.arity
    cons = []
    for m in f0.monomials:
        grad = tuple(bi - ei for bi, ei in zip(m.exps, exps)) + (Fraction(-1),)
        cons.append(ge(AffineFunc(m.coeff - c.coeff, grad)))
    res = lp_solve(cons, AffineFunc(Fraction(0), (Fraction(0),) * n + (Fraction(1),)), "max")
    if res.status == "unbounded":
        return None
    return res.value


def divide(f0: NPPoly, f1: NPPoly) -> Optional[NPPoly]:
    """The unique reduced Laurent polynomial ``y`` with ``f1 (x) y = f0`` as
    functions, or ``None`` when ``f0`` is not divisible by ``f1``.

    For each candidate exponent ``I = B - C`` the smallest coefficient
    keeping every shifted monomial of ``f1`` above the graph of ``f0`` is
    found by LP; the quotient exists iff every monomial of reduced ``f0`` is
    reproduced exactly by some product.
    """
    if f0.arity != f1.arity:
        raise DimensionError(f"arity mismatch: {f0.arity} != {f1.arity}")
    if not (f0.has_integer_exponents() and f1.has_integer_exponents()):
        raise ValueError("divide works on Laurent polynomials: exponents must be integers")
    f0 = reduce_poly(f0)
    f1 = reduce_poly(f1)
    exps_set = sorted({tuple(b - c for b, c in zip(mb.exps, mc.exps))
                       for mb in f0.monomials for mc in f1.monomials})
    quotient = []
    for I in exps_set:
        best: Optional[Fraction] = None
        for c in f1.monomials:
            shifted = tuple(ce + ie for ce, ie in zip(c.exps, I))
            gap = _sup_gap(f0, Monomial(shifted, c.coeff), shifted)
            if gap is None:
                best = None
                break
            best = gap if best is None else max(best, gap)
        else:
            quotient.append(Monomial(I, best))  # type: ignore[arg-type]
    if not quotient:
        return None
    products = {a.times(c) for a in quotient for c in f1.monomials}
    if not all(b in products for b in f0.monomials):
        return None
    return reduce_poly(NPPoly(quotient, f0.arity))


def is_divisible(f0: NPPoly, f1: NPPoly) -> bool:
    return divide(f0, f1) is not None
