"""Exact check that a substituted polynomial attains its minimum twice everywhere.

A *system polynomial* is a tropical sum of terms ``c(x) (x) prod_j y_j^(x)p_j``
where ``c`` is a polynomial in the x-variables and the ``y_j`` are
indeterminates.  After substituting functions of ``x`` for the
indeterminates, every term becomes a function of ``x``, and the substitution
resolves the polynomial iff at every ``x`` the minimum over terms is attained
by at least two distinct terms.

Adding one common function to all terms does not move any tie, so negative
powers and the denominators of rational functions are cleared by adding
multiples of the substituted numerators/denominators.  After that every
term is a min of affine pieces, and a violation exists iff some piece of one
term is strictly below every piece of every other term on an open set: one
strict-feasibility LP per piece.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .core import AffineFunc, DimensionError, Monomial, NPPoly, Point, PolyInY, RationalPL
from .geom import sign_partition
from .lp import gt, relative_interior_feasible

Powers = Tuple[Tuple[str, Fraction], ...]
Value = Union[NPPoly, RationalPL]


@dataclass(frozen=True)
class Term:
    coeff: NPPoly
    powers: Powers = ()


class SysPoly:
    """Tropical sum of :class:`Term`; terms with equal powers are merged."""

    __slots__ = ("arity", "terms")

    def __init__(self, terms: Sequence[Term], arity: Optional[int] = None):
        merged: Dict[Powers, NPPoly] = {}
        for t in terms:
            if arity is None:
                arity = t.coeff.arity
            elif t.coeff.arity != arity:
                raise DimensionError(f"term arity {t.coeff.arity} != {arity}")
            key = tuple(sorted((name, Fraction(p)) for name, p in t.powers if p != 0))
            merged[key] = merged[key] + t.coeff if key in merged else t.coeff
        if not merged:
            raise ValueError("a system polynomial needs at least one term")
        self.arity: int = arity  # type: ignore[assignment]
        self.terms: Tuple[Term, ...] = tuple(Term(c, k) for k, c in merged.items())

    def indeterminates(self) -> List[str]:
        seen: List[str] = []
        for t in self.terms:
            for name, _ in t.powers:
                if name not in seen:
                    seen.append(name)
        return seen

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SysPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    @classmethod
    def from_poly_in_y(cls, f: PolyInY, name: str = "y") -> "SysPoly":
        return cls([Term(fi, ((name, Fraction(i)),) if i else ())
                    for i, fi in enumerate(f.coeffs) if fi is not None], f.arity)

    @classmethod
    def from_nppoly(cls, p: NPPoly, names: Sequence[str], x_arity: int) -> "SysPoly":
        """Read the trailing ``len(names)`` variables of ``p`` as indeterminates."""
        if p.arity != x_arity + len(names):
            raise DimensionError(f"polynomial arity {p.arity} != {x_arity} + {len(names)}")
        terms = []
        for m in p.monomials:
            coeff = NPPoly([Monomial(m.exps[:x_arity], m.coeff)], x_arity)
            terms.append(Term(coeff, tuple(zip(names, m.exps[x_arity:]))))
        return cls(terms, x_arity)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    witness: Optional[Point] = None
    poly_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def term_pieces(poly: SysPoly, values: Mapping[str, Value]) -> List[List[AffineFunc]]:
    """Affine pieces of every term after substitution plus the common shift."""
    names = poly.indeterminates()
    for name in names:
        if name not in values:
            raise KeyError(f"no value for indeterminate {name!r}")
        if values[name].arity != poly.arity:
            raise DimensionError(f"value of {name!r} has arity {values[name].arity}, expected {poly.arity}")
    # shift: K * numerator + L * denominator per indeterminate
    lift_g: Dict[str, Fraction] = {}
    lift_h: Dict[str, Fraction] = {}
    for name in names:
        ps = [dict(t.powers).get(name, Fraction(0)) for t in poly.terms]
        lift_g[name] = max(Fraction(0), -min(ps))
        lift_h[name] = max(Fraction(0), max(ps)) if isinstance(values[name], RationalPL) else Fraction(0)
    groups = []
    for t in poly.terms:
        p = dict(t.powers)
        factors: List[Tuple[Fraction, NPPoly]] = []
        for name in names:
            v = values[name]
            e = p.get(name, Fraction(0))
            if isinstance(v, RationalPL):
                factors.append((e + lift_g[name], v.g))
                factors.append((lift_h[name] - e, v.h))
            else:
                factors.append((e + lift_g[name], v))
        factors = [(k, q) for k, q in factors if k != 0]
        pieces = set()
        choice_lists = [q.monomials for _, q in factors]
        for c in t.coeff.monomials:
            for choice in itertools.product(*choice_lists):
                const = c.coeff
                grad = list(c.exps)
                for (k, _), u in zip(factors, choice):
                    const += k * u.coeff
                    for j, e in enumerate(u.exps):
                        grad[j] += k * e
                pieces.add(AffineFunc(const, tuple(grad)))
        groups.append(sorted(pieces, key=lambda a: (a.gradient, a.constant)))
    return groups


_SAMPLES: Dict[int, List[Point]] = {}


def sample_points(n: int) -> List[Point]:
    """Fixed rational probe points, a cheap first pass before the LPs."""
    if n not in _SAMPLES:
        rng = random.Random(7919 + n)
        pts = [tuple(Fraction(rng.randint(-40, 40), 7) for _ in range(n)) for _ in range(12)]
        pts += [tuple(Fraction(rng.choice((-1, 1)) * rng.randint(60, 120), 3) for _ in range(n))
                for _ in range(4)]
        _SAMPLES[n] = pts
    return _SAMPLES[n]


def _winning_groups(groups: Sequence[Sequence[AffineFunc]], point: Point) -> List[int]:
    mins = [min(a(point) for a in g) for g in groups]
    best = min(mins)
    return [i for i, v in enumerate(mins) if v == best]


def find_violation(groups: Sequence[Sequence[AffineFunc]], n: int, probe: bool = True) -> Optional[Point]:
    """A point where the minimum is attained by a single group, or ``None``."""
    if len(groups) < 2:
        return (Fraction(0),) * n
    if probe:
        for pt in sample_points(n):
            if len(_winning_groups(groups, pt)) < 2:
                return pt
    for gi, g in enumerate(groups):
        others = {a for gj, h in enumerate(groups) if gj != gi for a in h}
        for c in g:
            diffs = []
            hopeless = False
            for a in others:
                d = a - c
                if d.is_constant():
                    if d.constant <= 0:
                        hopeless = True
                        break
                    continue
                diffs.append(d)
            if hopeless:
                continue
            feas = relative_interior_feasible([gt(d) for d in sorted(set(diffs), key=_key)], n)
            if feas:
                return feas.witness
    return None


def find_violation_partition(groups: Sequence[Sequence[AffineFunc]], n: int) -> Optional[Point]:
    """Same decision by a full sign partition of all pairwise piece differences."""
    if len(groups) < 2:
        return (Fraction(0),) * n
    pieces = sorted({a for g in groups for a in g}, key=_key)
    funcs = [pieces[i] - pieces[j] for i in range(len(pieces)) for j in range(i + 1, len(pieces))]
    funcs = [f for f in funcs if not f.is_constant()]
    if not funcs:
        cells_witnesses = [(Fraction(0),) * n]
    else:
        cells_witnesses = [c.witness for c in sign_partition(funcs)]
    for w in cells_witnesses:
        if len(_winning_groups(groups, w)) < 2:
            return w
    return None


def _key(a: AffineFunc):
    return (a.gradient, a.constant)


def verify_polys(polys: Sequence[SysPoly], values: Mapping[str, Value],
                 method: str = "lp") -> VerifyResult:
    """Check every polynomial of a system under one substitution."""
    for k, poly in enumerate(polys):
        groups = term_pieces(poly, values)
        if method == "lp":
            w = find_violation(groups, poly.arity)
        elif method == "partition":
            w = find_violation_partition(groups, poly.arity)
        else:
            raise ValueError(f"unknown method {method!r}")
        if w is not None:
            return VerifyResult(False, w, k)
    return VerifyResult(True)
