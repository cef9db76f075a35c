"""Resolutions of tropical hypersurfaces ``(+)_i f_i (x) y^(x)i``.

A tropical Newton-Puiseux polynomial ``y(x)`` resolves ``f`` when, at every
``x``, the minimum over the present degrees ``i`` of ``f_i(x) + i*y(x)`` is
attained for at least two distinct ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import (DimensionError, Monomial, NPPoly, Point, PolyInY, RationalPL,
                   as_point, eval_poly, is_tropical_root, trop_add, trop_mul, trop_pow, trop_prod,
                   trop_sum)
from .geom import Polyhedron, polyhedron_dim, reduce_poly
from .lp import ge, gt, relative_interior_feasible
from .ties import SysPoly, VerifyResult, find_violation, term_pieces, verify_polys


class ResolutionError(ValueError):
    pass


def _check_arity(f: PolyInY, arity: int) -> None:
    if f.arity != arity:
        raise DimensionError(f"resolution arity {arity} != polynomial arity {f.arity}")


def verify_resolution(f: PolyInY, y: NPPoly, method: str = "lp") -> VerifyResult:
    """Exact decision whether ``y`` resolves ``f``; on failure a witness ``x``.

    ``method="partition"`` runs the same decision over a full sign partition
    of all composite differences (slow; used as a cross-check).
    """
    _check_arity(f, y.arity)
    return verify_polys([SysPoly.from_poly_in_y(f)], {"y": y}, method)


def verify_rational_resolution(f: PolyInY, y: RationalPL, method: str = "lp") -> VerifyResult:
    """As :func:`verify_resolution` for a rational function ``y = g (/) h``."""
    _check_arity(f, y.arity)
    return verify_polys([SysPoly.from_poly_in_y(f)], {"y": y}, method)


def graph_in_hypersurface(f: PolyInY, y: NPPoly, samples: Iterable[Sequence]) -> bool:
    """Whether ``(x, y(x))`` is a tropical root of ``f`` at every sample ``x``."""
    full = f.to_nppoly()
    for x in samples:
        x = as_point(x)
        if not is_tropical_root(full, x + (eval_poly(y, x),)):
            return False
    return True


def combine_min(f: PolyInY, y1: NPPoly, y2: NPPoly, check: bool = True) -> NPPoly:
    """Monomial-wise minimum of two resolutions, itself a resolution."""
    if check:
        for y in (y1, y2):
            if not verify_resolution(f, y):
                raise ResolutionError(f"{y} does not resolve {f}")
    return trop_add(y1, y2)


def minimal_resolution_monic(f: PolyInY) -> NPPoly:
    """``(+)_{1<=i<=d} f_{d-i}^(x)(1/i)`` for monic ``f`` of degree ``d``."""
    if not f.is_monic():
        raise ResolutionError("leading coefficient is not the tropical unit 0")
    d = f.degree
    parts = [trop_pow(f[d - i], Fraction(1, i)) for i in range(1, d + 1) if f[d - i] is not None]
    if not parts:
        raise ResolutionError("no lower-degree terms: the polynomial has no resolution")
    return trop_sum(parts)


def minimal_resolution_rational(f: PolyInY) -> RationalPL:
    """``(+)_i (f_{d-i} (/) f_d)^(x)(1/i)`` as a single ``g (/) h``.

    Uses ``min_i (g_i - h_i) = min_i (g_i + sum_{j != i} h_j) - sum_j h_j``.
    """
    d = f.degree
    lead = f[d]
    if lead is None:  # pragma: no cover - PolyInY trims absent leading terms
        raise ResolutionError("leading coefficient absent")
    idx = [i for i in range(1, d + 1) if f[d - i] is not None]
    if not idx:
        raise ResolutionError("no lower-degree terms: the polynomial has no resolution")
    num = {i: reduce_poly(trop_pow(f[d - i], Fraction(1, i))) for i in idx}
    den = {i: reduce_poly(trop_pow(lead, Fraction(1, i))) for i in idx}
    if len(idx) == 1:
        (i,) = idx
        return RationalPL(num[i], den[i])
    g = trop_sum(reduce_poly(trop_prod([num[i]] + [den[j] for j in idx if j != i])) for i in idx)
    h = trop_prod(den[i] for i in idx)
    return RationalPL(reduce_poly(g), reduce_poly(h))


# candidate coefficients --------------------------------------------------

@dataclass(frozen=True)
class Candidate:
    """Monomial ``coeff (x) x^(x)exps`` that ties two terms identically.

    ``sources`` lists every ``(i1, I1, i2, I2)`` with
    ``I1 + i1*I = I2 + i2*I`` and ``c1 + i1*a = c2 + i2*a``.
    """

    exps: Tuple[Fraction, ...]
    coeff: Fraction
    sources: Tuple[Tuple[int, Tuple[Fraction, ...], int, Tuple[Fraction, ...]], ...] = ()

    @property
    def source(self):
        return self.sources[0]

    def monomial(self) -> Monomial:
        return Monomial(self.exps, self.coeff)


def candidate_coeffs(f: PolyInY) -> List[Candidate]:
    """All monomials a resolution's essential monomials can be drawn from."""
    found: Dict[Tuple, List] = {}
    present = f.present()
    for i1, i2 in itertools.combinations(present, 2):
        gap = i2 - i1
        for m1 in f[i1]:
            for m2 in f[i2]:
                exps = tuple((a - b) / gap for a, b in zip(m1.exps, m2.exps))
                coeff = (m1.coeff - m2.coeff) / gap
                found.setdefault((exps, coeff), []).append((i1, m1.exps, i2, m2.exps))
    return [Candidate(e, c, tuple(src)) for (e, c), src in sorted(found.items())]


def _composites(f: PolyInY, u: Monomial) -> Dict:
    """Affine function -> set of degrees, for ``f_i + i*u`` over present ``i``."""
    out: Dict = {}
    for i in f.present():
        for c in f[i]:
            a = Monomial(tuple(ce + i * ue for ce, ue in zip(c.exps, u.exps)), c.coeff + i * u.coeff).affine()
            out.setdefault(a, set()).add(i)
    return out


def viable_candidates(f: PolyInY, cands: Optional[Sequence[Candidate]] = None) -> List[Candidate]:
    """Candidates whose tie can be the minimum on a full-dimensional set.

    An essential monomial ``u`` of a resolution is minimal in ``y`` on an
    open set, and on that set two identical composites ``c1 + i1*u`` and
    ``c2 + i2*u`` must be minimal on an open subset.  Candidates where every
    such tie is minimal only on a lower-dimensional set cannot occur.
    """
    if cands is None:
        cands = candidate_coeffs(f)
    n = f.arity
    keep = []
    for cand in cands:
        comps = _composites(f, cand.monomial())
        for tie, degrees in comps.items():
            if len(degrees) < 2:
                continue
            cons = []
            for other in comps:
                if other == tie:
                    continue
                d = other - tie
                if d.is_constant():
                    if d.constant <= 0:
                        cons = None
                        break
                    continue
                cons.append(gt(d))
            if cons is not None and (not cons or relative_interior_feasible(cons, n)):
                keep.append(cand)
                break
    return keep


def brute_force_resolutions(f: PolyInY, max_support: int) -> List[NPPoly]:
    """Every resolution with at most ``max_support`` essential monomials.

    Exhaustive over subsets of the viable candidates, in lexicographic order
    of candidate indices; results are reduced and deduplicated.
    """
    cands = viable_candidates(f)
    seen = set()
    out = []
    sys_f = SysPoly.from_poly_in_y(f)
    for size in range(1, max_support + 1):
        for subset in itertools.combinations(range(len(cands)), size):
            exps = [cands[k].exps for k in subset]
            if len(set(exps)) < len(exps):
                continue  # merging would drop the larger coefficient: a smaller subset
            y = NPPoly([cands[k].monomial() for k in subset], f.arity)
            groups = term_pieces(sys_f, {"y": y})
            if find_violation(groups, f.arity) is not None:
                continue
            r = reduce_poly(y)
            if r not in seen:
                seen.add(r)
                out.append(r)
    return out


# geometric description ---------------------------------------------------

@dataclass
class LemmaCell:
    monomial: Monomial
    subcells: List[Tuple[Tuple, int]] = field(default_factory=list)  # (source, dim)
    uncovered: List[Tuple] = field(default_factory=list)  # full-dim regions with no tie
    overlaps: List[Tuple] = field(default_factory=list)  # full-dim pairwise intersections

    @property
    def ok(self) -> bool:
        return not self.uncovered and not self.overlaps


def lemma_partition_check(f: PolyInY, y: NPPoly) -> List[LemmaCell]:
    """For each full-dimensional linearity cell ``M_u`` of ``y``, split it by the
    minimal composite ``f_i + i*u`` and check that the full-dimensional tie
    subcells cover ``M_u`` and meet only in lower dimension."""
    n = f.arity
    y = reduce_poly(y)
    pieces = y.affine_pieces()
    report = []
    for k, u in enumerate(y.monomials):
        M = Polyhedron(n, tuple(ge(pieces[j] - pieces[k]) for j in range(len(pieces)) if j != k))
        if polyhedron_dim(M) < n:
            continue
        comps = _composites(f, u)
        regions = {}
        for a in comps:
            R = M.intersect(Polyhedron(n, tuple(ge(b - a) for b in comps if b != a)))
            if polyhedron_dim(R) == n:
                regions[a] = R
        cell = LemmaCell(u)
        for a, R in regions.items():
            degs = sorted(comps[a])
            if len(degs) < 2:
                cell.uncovered.append((a,))
                continue
            for i1, i2 in itertools.combinations(degs, 2):
                for c1 in f[i1]:
                    if _shifted(c1, i1, u) != a:
                        continue
                    for c2 in f[i2]:
                        if _shifted(c2, i2, u) == a:
                            cell.subcells.append(((i1, c1.exps, i2, c2.exps), n))
        keys = list(regions)
        for p, q in itertools.combinations(keys, 2):
            if polyhedron_dim(regions[p].intersect(regions[q])) == n:
                cell.overlaps.append((p, q))
        report.append(cell)
    return report


def _shifted(c: Monomial, i: int, u: Monomial):
    return Monomial(tuple(ce + i * ue for ce, ue in zip(c.exps, u.exps)), c.coeff + i * u.coeff).affine()
