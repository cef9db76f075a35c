"""Tropical Newton-Puiseux polynomials over the min-plus semiring.

A polynomial is a finite min of affine functions ``a + I.x`` with rational
coefficient ``a`` and rational exponent vector ``I``.  Everything is exact:
scalars are :class:`fractions.Fraction` and no float ever enters a
computation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

RationalLike = Union[int, str, Fraction]
Point = Tuple[Fraction, ...]


class DimensionError(ValueError):
    """Raised when vector lengths or arities do not agree."""


def Q(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact rational.  Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    # gmpy2.mpq and friends expose numerator/denominator
    return Fraction(int(value.numerator), int(value.denominator))


def as_point(values: Iterable[RationalLike]) -> Point:
    return tuple(Q(v) for v in values)


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class AffineFunc:
    """Classical affine function ``constant + gradient . x``."""

    constant: Fraction
    gradient: Tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.gradient)

    @classmethod
    def make(cls, constant: RationalLike, gradient: Iterable[RationalLike]) -> "AffineFunc":
        return cls(Q(constant), as_point(gradient))

    @classmethod
    def const(cls, value: RationalLike, dim: int) -> "AffineFunc":
        return cls(Q(value), (Fraction(0),) * dim)

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != len(self.gradient):
            raise DimensionError(f"point has length {len(point)}, expected {len(self.gradient)}")
        return self.constant + sum((g * p for g, p in zip(self.gradient, point)), Fraction(0))

    def __add__(self, other: "AffineFunc") -> "AffineFunc":
        _check_dims(self.dim, other.dim)
        return AffineFunc(self.constant + other.constant,
                          tuple(a + b for a, b in zip(self.gradient, other.gradient)))

    def __sub__(self, other: "AffineFunc") -> "AffineFunc":
        _check_dims(self.dim, other.dim)
        return AffineFunc(self.constant - other.constant,
                          tuple(a - b for a, b in zip(self.gradient, other.gradient)))

    def __neg__(self) -> "AffineFunc":
        return AffineFunc(-self.constant, tuple(-g for g in self.gradient))

    def scale(self, r: RationalLike) -> "AffineFunc":
        r = Q(r)
        return AffineFunc(r * self.constant, tuple(r * g for g in self.gradient))

    def is_constant(self) -> bool:
        return not any(self.gradient)


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimensionError(f"dimension mismatch: {a} != {b}")


@dataclass(frozen=True, order=True)
class Monomial:
    """``coeff (x) x^(x)exps``, i.e. the affine function ``coeff + exps . x``."""

    # field order matters for sorting: exponent vector first
    exps: Tuple[Fraction, ...]
    coeff: Fraction

    @classmethod
    def make(cls, coeff: RationalLike, exps: Iterable[RationalLike]) -> "Monomial":
        return cls(as_point(exps), Q(coeff))

    def value(self, point: Sequence[Fraction]) -> Fraction:
        return self.coeff + sum((e * p for e, p in zip(self.exps, point)), Fraction(0))

    def affine(self) -> AffineFunc:
        return AffineFunc(self.coeff, self.exps)

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)), self.coeff + other.coeff)

    def power(self, r: Fraction) -> "Monomial":
        return Monomial(tuple(r * e for e in self.exps), r * self.coeff)


class NPPoly:
    """Tropical Newton-Puiseux polynomial: a nonempty finite min of monomials.

    Monomials sharing an exponent vector are merged keeping the smaller
    coefficient, and are stored sorted by exponent vector.  Equality and
    hashing are structural (same monomial set); for equality as functions
    use :func:`tropnp.geom.poly_equal`.
    """

    __slots__ = ("arity", "monomials")

    def __init__(self, monomials: Iterable[Monomial], arity: Optional[int] = None):
        best: Dict[Tuple[Fraction, ...], Fraction] = {}
        for m in monomials:
            if arity is None:
                arity = len(m.exps)
            elif len(m.exps) != arity:
                raise DimensionError(f"monomial {m} does not have arity {arity}")
            old = best.get(m.exps)
            if old is None or m.coeff < old:
                best[m.exps] = m.coeff
        if not best:
            raise ValueError("a tropical polynomial needs at least one monomial")
        self.arity: int = arity  # type: ignore[assignment]
        self.monomials: Tuple[Monomial, ...] = tuple(
            Monomial(e, c) for e, c in sorted(best.items()))

    # construction helpers

    @classmethod
    def constant(cls, c: RationalLike = 0, arity: int = 1) -> "NPPoly":
        return cls([Monomial((Fraction(0),) * arity, Q(c))], arity)

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[RationalLike, Iterable[RationalLike]]],
                   arity: Optional[int] = None) -> "NPPoly":
        """Build from ``(coeff, exps)`` pairs."""
        return cls([Monomial.make(c, e) for c, e in terms], arity)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "NPPoly":
        return parse_poly(text, variables)

    # protocol

    def __iter__(self):
        return iter(self.monomials)

    def __len__(self) -> int:
        return len(self.monomials)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NPPoly):
            return NotImplemented
        return self.arity == other.arity and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash((self.arity, self.monomials))

    def __repr__(self) -> str:
        return f"NPPoly({self.to_str()!r})"

    def __str__(self) -> str:
        return self.to_str()

    def __call__(self, point: Sequence[RationalLike]) -> Fraction:
        return eval_poly(self, point)

    def __add__(self, other: "NPPoly") -> "NPPoly":
        return trop_add(self, other)

    def __mul__(self, other: "NPPoly") -> "NPPoly":
        return trop_mul(self, other)

    def to_str(self, variables: Optional[Sequence[str]] = None) -> str:
        if variables is None:
            variables = default_variables(self.arity)
        return " ⊕ ".join(format_monomial(m, variables) for m in reversed(self.monomials))

    def affine_pieces(self) -> List[AffineFunc]:
        return [m.affine() for m in self.monomials]

    def shift(self, c: RationalLike) -> "NPPoly":
        c = Q(c)
        return NPPoly([Monomial(m.exps, m.coeff + c) for m in self.monomials], self.arity)

    def is_constant_zero(self) -> bool:
        """True for the tropical unit: the single monomial ``0 (x) x^0``."""
        return len(self.monomials) == 1 and self.monomials[0].coeff == 0 and not any(self.monomials[0].exps)

    def has_integer_exponents(self) -> bool:
        return all(e.denominator == 1 for m in self.monomials for e in m.exps)


def default_variables(n: int) -> List[str]:
    if n == 1:
        return ["x"]
    if n == 2:
        return ["x", "y"]
    return [f"x{i + 1}" for i in range(n)]


def _point(p: NPPoly, point: Sequence[RationalLike]) -> Point:
    if len(point) != p.arity:
        raise DimensionError(f"point has length {len(point)}, polynomial arity is {p.arity}")
    return as_point(point)


def eval_poly(p: NPPoly, point: Sequence[RationalLike]) -> Fraction:
    """Value of ``p`` at ``point``: the min over monomials of ``coeff + exps . point``."""
    pt = _point(p, point)
    return min(m.value(pt) for m in p.monomials)


def argmin_monomials(p: NPPoly, point: Sequence[RationalLike]) -> Tuple[int, ...]:
    """Indices (into ``p.monomials``) of every monomial attaining the minimum."""
    pt = _point(p, point)
    values = [m.value(pt) for m in p.monomials]
    best = min(values)
    return tuple(i for i, v in enumerate(values) if v == best)


def is_tropical_root(p: NPPoly, point: Sequence[RationalLike]) -> bool:
    return len(argmin_monomials(p, point)) >= 2


def trop_add(p: NPPoly, q: NPPoly) -> NPPoly:
    _check_dims(p.arity, q.arity)
    return NPPoly(p.monomials + q.monomials, p.arity)


def trop_mul(p: NPPoly, q: NPPoly) -> NPPoly:
    _check_dims(p.arity, q.arity)
    return NPPoly([a.times(b) for a in p.monomials for b in q.monomials], p.arity)


def trop_sum(polys: Iterable[NPPoly]) -> NPPoly:
    return reduce(trop_add, polys)


def trop_prod(polys: Iterable[NPPoly]) -> NPPoly:
    return reduce(trop_mul, polys)


def trop_pow(p: NPPoly, r: RationalLike) -> NPPoly:
    """Scale every monomial's coefficient and exponents by ``r > 0``.

    For integer ``r`` this is the ``r``-fold tropical product up to
    non-essential monomials; for ``r = 1/i`` it is the ``i``-th tropical root.
    """
    r = Q(r)
    if r <= 0:
        raise ValueError(f"tropical power must be positive, got {r}")
    return NPPoly([m.power(r) for m in p.monomials], p.arity)


def clear_denominators(p: NPPoly) -> Tuple[int, NPPoly]:
    """Return ``(N, p^(x)N)`` with ``N`` the lcm of all exponent denominators."""
    n = 1
    for m in p.monomials:
        for e in m.exps:
            n = n * e.denominator // math.gcd(n, e.denominator)
    return n, (p if n == 1 else trop_pow(p, n))


class PolyInY:
    """``(+)_i f_i (x) y^(x)i`` with coefficients ``f_i`` in the x-variables.

    ``coeffs[i]`` is ``None`` when the term of degree ``i`` is absent (its
    coefficient is tropical zero, i.e. +infinity).
    """

    __slots__ = ("arity", "coeffs")

    def __init__(self, coeffs: Union[Sequence[Optional[NPPoly]], Dict[int, NPPoly]],
                 arity: Optional[int] = None):
        if isinstance(coeffs, dict):
            if any(i < 0 for i in coeffs):
                raise ValueError("degrees in y must be non-negative")
            top = max(coeffs) if coeffs else -1
            coeffs = [coeffs.get(i) for i in range(top + 1)]
        items = list(coeffs)
        while items and items[-1] is None:
            items.pop()
        if not items:
            raise ValueError("a polynomial in y needs at least one present coefficient")
        for f in items:
            if f is None:
                continue
            if arity is None:
                arity = f.arity
            elif f.arity != arity:
                raise DimensionError(f"coefficient arity {f.arity} != {arity}")
        self.arity: int = arity  # type: ignore[assignment]
        self.coeffs: Tuple[Optional[NPPoly], ...] = tuple(items)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str], y: str = "y") -> "PolyInY":
        return parse_poly_in_y(text, variables, y)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def present(self) -> List[int]:
        return [i for i, f in enumerate(self.coeffs) if f is not None]

    def __getitem__(self, i: int) -> Optional[NPPoly]:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyInY):
            return NotImplemented
        return self.arity == other.arity and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.arity, self.coeffs))

    def __repr__(self) -> str:
        return f"PolyInY({self.to_str()!r})"

    def __str__(self) -> str:
        return self.to_str()

    def to_nppoly(self) -> NPPoly:
        """The same polynomial read in ``arity + 1`` variables (y last)."""
        monos = []
        for i in self.present():
            for m in self.coeffs[i]:  # type: ignore[union-attr]
                monos.append(Monomial(m.exps + (Fraction(i),), m.coeff))
        return NPPoly(monos, self.arity + 1)

    def to_str(self, variables: Optional[Sequence[str]] = None, y: str = "y") -> str:
        if variables is None:
            variables = default_variables(self.arity)
        return self.to_nppoly().to_str(list(variables) + [y])

    def is_monic(self) -> bool:
        lead = self.coeffs[-1]
        return lead is not None and lead.is_constant_zero()


def substitute_y(f: PolyInY, y: NPPoly) -> List[Optional[NPPoly]]:
    """Entry ``i`` is ``f_i (x) y^(x)i`` as a polynomial in x (``None`` if absent)."""
    _check_dims(f.arity, y.arity)
    out: List[Optional[NPPoly]] = []
    power = NPPoly.constant(0, f.arity)
    for i, fi in enumerate(f.coeffs):
        if i > 0:
            power = trop_mul(power, y)
        out.append(None if fi is None else trop_mul(fi, power))
    return out


# text syntax ---------------------------------------------------------------

def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for v, e in zip(variables, m.exps):
        if e == 0:
            continue
        if e == 1:
            parts.append(v)
        elif e.denominator == 1 and e > 0:
            parts.append(f"{v}^{e.numerator}")
        else:
            parts.append(f"{v}^({fmt_rational(e)})")
    if m.coeff != 0 or not parts:
        parts.insert(0, fmt_rational(m.coeff))
    return " ⊗ ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(⊕|⊗|\+|\*|\^|/|-|\(|\)|\{|\}))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> List[str]:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos} in {text!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.index = {v: i for i, v in enumerate(variables)}
        if len(self.index) != len(variables):
            raise ParseError(f"duplicate variable names in {list(variables)}")

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'a token'} but found {tok!r} in {self.text!r}")
        self.pos += 1
        return tok

    def rational(self) -> Fraction:
        closing = {"(": ")", "{": "}"}.get(self.peek() or "")
        if closing:
            self.take()
            if self.peek() == "⊗":  # x^{⊗1/2}
                self.take()
            value = self.rational()
            self.take(closing)
            return value
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected a number but found {tok!r} in {self.text!r}")
        value = Fraction(int(tok))
        if self.peek() == "/":
            self.take()
            den = self.take()
            if not den.isdigit() or int(den) == 0:
                raise ParseError(f"bad denominator {den!r} in {self.text!r}")
            value /= int(den)
        return sign * value

    def atom(self) -> "NPPoly":
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        if tok == "(":
            self.take()
            inner = self.sum()
            self.take(")")
            return inner
        if tok in self.index:
            self.take()
            exps = [Fraction(0)] * len(self.index)
            exps[self.index[tok]] = Fraction(1)
            return NPPoly([Monomial(tuple(exps), Fraction(0))], len(self.index))
        if tok[0].isalpha() or tok[0] == "_":
            raise ParseError(f"unknown variable {tok!r} (declared: {sorted(self.index)})")
        return NPPoly.constant(self.rational(), len(self.index))

    def factor(self) -> "NPPoly":
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take()
        e = self.rational()
        if len(base) == 1:
            return NPPoly([base.monomials[0].power(e)], base.arity)
        if e <= 0:
            raise ParseError(f"a tropical sum can only be raised to a positive power, got {e}")
        if e.denominator == 1:
            return trop_prod([base] * e.numerator)
        return trop_pow(base, e)

    def product(self) -> "NPPoly":
        acc = self.factor()
        while self.peek() in ("*", "⊗"):
            self.take()
            acc = trop_mul(acc, self.factor())
        return acc

    def sum(self) -> "NPPoly":
        acc = self.product()
        while self.peek() in ("+", "⊕"):
            self.take()
            acc = trop_add(acc, self.product())
        return acc

    def poly(self) -> "NPPoly":
        out = self.sum()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return out


def parse_poly(text: str, variables: Sequence[str]) -> NPPoly:
    """Parse e.g. ``"3 ⊗ x^(1/2) ⊕ 0"`` or the ASCII form ``"3*x^(1/2) + 0"``.

    ``+``/``⊕`` separate monomials (tropical sum), ``*``/``⊗`` multiply
    (classical sum of coefficients and exponents).
    Parentheses group sums, and ``^`` raises a monomial to any rational
    power or a parenthesized sum to a positive power.
    """
    return _Parser(text, variables).poly()


def parse_poly_in_y(text: str, variables: Sequence[str], y: str = "y") -> PolyInY:
    full = parse_poly(text, list(variables) + [y])
    groups: Dict[int, List[Monomial]] = {}
    for m in full.monomials:
        d = m.exps[-1]
        if d.denominator != 1 or d < 0:
            raise ParseError(f"degree in {y} must be a non-negative integer, got {d}")
        groups.setdefault(int(d), []).append(Monomial(m.exps[:-1], m.coeff))
    return PolyInY({i: NPPoly(ms, len(variables)) for i, ms in groups.items()}, len(variables))


class RationalPL:
    """Tropical Newton-Puiseux rational function ``g (/) h``, classically ``g - h``.

    Any continuous piecewise-linear function has this form; it need not be
    min-convex.
    """

    __slots__ = ("g", "h")

    def __init__(self, g: NPPoly, h: NPPoly):
        _check_dims(g.arity, h.arity)
        self.g = g
        self.h = h

    @property
    def arity(self) -> int:
        return self.g.arity

    @classmethod
    def from_poly(cls, p: NPPoly) -> "RationalPL":
        return cls(p, NPPoly.constant(0, p.arity))

    def __call__(self, point: Sequence[RationalLike]) -> Fraction:
        return eval_poly(self.g, point) - eval_poly(self.h, point)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPL):
            return NotImplemented
        return self.g == other.g and self.h == other.h

    def __hash__(self) -> int:
        return hash((self.g, self.h))

    def __repr__(self) -> str:
        return f"RationalPL({self.to_str()!r})"

    def to_str(self, variables: Optional[Sequence[str]] = None) -> str:
        return f"({self.g.to_str(variables)}) ⊘ ({self.h.to_str(variables)})"
