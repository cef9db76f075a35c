"""Polyhedra, sign partitions, tropical prevarieties and their 1-skeleta."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .core import AffineFunc, DimensionError, NPPoly, Point
from .lp import (EQ, GE, GT, LinConstraint, eq, gt, nullspace, rank,
                 relative_interior_feasible)


@dataclass(frozen=True)
class Polyhedron:
    dim_ambient: int
    constraints: Tuple[LinConstraint, ...] = ()

    def __post_init__(self):
        for c in self.constraints:
            if c.dim != self.dim_ambient:
                raise DimensionError(f"constraint of dimension {c.dim} in R^{self.dim_ambient}")

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(c.holds(point) for c in self.constraints)

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if other.dim_ambient != self.dim_ambient:
            raise DimensionError("ambient dimensions differ")
        return Polyhedron(self.dim_ambient, self.constraints + other.constraints)


def polyhedron_dim(P: Polyhedron) -> int:
    """Dimension of the affine hull of ``P``; ``-1`` when ``P`` is empty.

    Implicit equalities can only come from ``>= 0`` constraints: a strict
    constraint that holds somewhere is not an equality on ``P``.
    """
    n = P.dim_ambient
    feas = relative_interior_feasible(P.constraints, n)
    if not feas:
        return -1
    cons = list(P.constraints)
    equalities = [c.func.gradient for c in cons if c.relation == EQ]
    soft = [i for i, c in enumerate(cons) if c.relation == GE]
    if soft:
        # fast path: all of them strict at once
        strict_all = [gt(c.func) if c.relation == GE else c for c in cons]
        if not relative_interior_feasible(strict_all, n):
            for i in soft:
                trial = cons[:i] + [gt(cons[i].func)] + cons[i + 1:]
                if not relative_interior_feasible(trial, n):
                    equalities.append(cons[i].func.gradient)
    return n - rank(equalities)


@dataclass(frozen=True)
class Cell:
    """Relatively open polyhedron on which every registered function has a fixed sign."""

    signs: Tuple[int, ...]
    region: Polyhedron
    witness: Point

    @property
    def dim(self) -> int:
        zero = [c.func.gradient for c in self.region.constraints if c.relation == EQ]
        return self.region.dim_ambient - rank(zero)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _signed(f: AffineFunc, s: int) -> LinConstraint:
    if s == 0:
        return eq(f)
    return gt(f) if s > 0 else gt(-f)


def sign_partition(funcs: Sequence[AffineFunc]) -> List[Cell]:
    """Partition ``R^n`` into the nonempty cells of constant sign vector.

    Recursion on the number of functions: each cell of the current partition
    is split by the next function into its feasible signs (-1, 0, +1, in that
    order), tested by exact LP.  The cell's stored witness short-cuts the
    test for the sign it already realizes.
    """
    if not funcs:
        raise ValueError("sign_partition needs at least one function")
    n = funcs[0].dim
    for f in funcs:
        if f.dim != n:
            raise DimensionError(f"function of dimension {f.dim} among dimension {n}")
    cells = [Cell((), Polyhedron(n, ()), (Fraction(0),) * n)]
    for f in funcs:
        refined = []
        for cell in cells:
            if f.is_constant():
                s = _sign(f.constant)
                refined.append(Cell(cell.signs + (s,), cell.region, cell.witness))
                continue
            here = _sign(f(cell.witness))
            for s in (-1, 0, 1):
                cons = cell.region.constraints + (_signed(f, s),)
                if s == here:
                    witness = cell.witness
                else:
                    feas = relative_interior_feasible(cons, n)
                    if not feas:
                        continue
                    witness = feas.witness
                refined.append(Cell(cell.signs + (s,), Polyhedron(n, cons), witness))
        cells = refined
    return cells


def locate(cells: Sequence[Cell], funcs: Sequence[AffineFunc], point: Sequence[Fraction]) -> List[int]:
    """Indices of the cells whose sign vector matches ``point``."""
    sv = tuple(_sign(f(point)) for f in funcs)
    return [i for i, c in enumerate(cells) if c.signs == sv]


# prevarieties -------------------------------------------------------------

@dataclass
class Prevariety:
    """Sign partition by all monomial differences, labelled by argmin sets.

    ``labels[c][k]`` is the tuple of monomial indices of ``system[k]`` that
    attain the minimum on cell ``c``.
    """

    system: Tuple[NPPoly, ...]
    funcs: Tuple[AffineFunc, ...]
    pairs: Tuple[Tuple[int, int, int], ...]  # (poly index, monomial a, monomial b) per func
    cells: List[Cell]
    labels: List[Tuple[Tuple[int, ...], ...]]

    @property
    def dim_ambient(self) -> int:
        return self.system[0].arity

    def in_T(self, c: int) -> bool:
        return all(len(lab) >= 2 for lab in self.labels[c])

    def members(self) -> List[int]:
        return [c for c in range(len(self.cells)) if self.in_T(c)]

    def dim(self) -> int:
        mem = self.members()
        return max((self.cells[c].dim for c in mem), default=-1)


def monomial_differences(system: Sequence[NPPoly]) -> Tuple[List[AffineFunc], List[Tuple[int, int, int]]]:
    funcs, pairs = [], []
    for k, p in enumerate(system):
        pieces = p.affine_pieces()
        for a in range(len(pieces)):
            for b in range(a + 1, len(pieces)):
                funcs.append(pieces[a] - pieces[b])
                pairs.append((k, a, b))
    return funcs, pairs


def decode_argmins(system: Sequence[NPPoly], pairs: Sequence[Tuple[int, int, int]],
                   signs: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """Argmin sets read directly off a sign vector of monomial differences."""
    beaten = [set() for _ in system]
    for (k, a, b), s in zip(pairs, signs):
        # s is the sign of m_a - m_b
        if s > 0:
            beaten[k].add(a)
        elif s < 0:
            beaten[k].add(b)
    return tuple(tuple(i for i in range(len(p)) if i not in beaten[k])
                 for k, p in enumerate(system))


def prevariety(system: Sequence[NPPoly]) -> Prevariety:
    """Tropical prevariety of ``system`` as a labelled union of sign cells."""
    system = tuple(system)
    if not system:
        raise ValueError("empty system")
    n = system[0].arity
    for p in system:
        if p.arity != n:
            raise DimensionError("all polynomials must share the same arity")
    funcs, pairs = monomial_differences(system)
    if funcs:
        cells = sign_partition(funcs)
    else:  # only single monomials: one cell, R^n
        cells = [Cell((), Polyhedron(n, ()), (Fraction(0),) * n)]
    labels = [decode_argmins(system, pairs, c.signs) for c in cells]
    return Prevariety(system, tuple(funcs), tuple(pairs), cells, labels)


def tropical_degree(p: NPPoly) -> Fraction:
    return max(sum(m.exps) for m in p.monomials)


def buck_bound(k: int, n: int, d: int) -> int:
    """The simplified cell-count bound ``k^n * d^(2 n^2)``."""
    return k ** n * d ** (2 * n * n)


def buck_face_bound(k: int, n: int, d: int) -> int:
    """Face count of an arrangement of ``k * C(d+n, n)^2`` hyperplanes, times ``n^2``."""
    return n * n * 2 ** n * math.comb(k * math.comb(d + n, n) ** 2, n)


# reduction ----------------------------------------------------------------

def essential_monomials(p: NPPoly) -> Tuple[int, ...]:
    """Indices of monomials that are strictly below all others somewhere."""
    pieces = p.affine_pieces()
    keep = []
    for k, mk in enumerate(pieces):
        cons = [gt(mj - mk) for j, mj in enumerate(pieces) if j != k]
        if not cons or relative_interior_feasible(cons, p.arity):
            keep.append(k)
    return tuple(keep)


def reduce_poly(p: NPPoly) -> NPPoly:
    """``p`` with non-essential monomials removed; same function everywhere."""
    keep = essential_monomials(p)
    if len(keep) == len(p):
        return p
    return NPPoly([p.monomials[k] for k in keep], p.arity)


def poly_equal(p: NPPoly, q: NPPoly) -> bool:
    """Equality as functions: identical sets of essential monomials."""
    if p.arity != q.arity:
        raise DimensionError(f"arity mismatch: {p.arity} != {q.arity}")
    return reduce_poly(p).monomials == reduce_poly(q).monomials


# 1-skeleton ---------------------------------------------------------------

class NotACurveError(ValueError):
    def __init__(self, cell_index: int, cell: Cell):
        super().__init__(f"cell {cell_index} of the prevariety has dimension {cell.dim} > 1 "
                         f"(witness {tuple(str(v) for v in cell.witness)})")
        self.cell_index = cell_index
        self.cell = cell


@dataclass
class Edge:
    """Relatively open 1-cell ``{base + t * direction : lo < t < hi}``.

    ``start``/``end`` are the points at ``t = lo``/``t = hi`` (``None`` when
    infinite).  ``direction`` is normalized so that its first nonzero
    coordinate is 1; for non-vertical edges of a curve this means ``dx = 1``.
    """

    kind: str  # "segment" | "ray" | "line"
    base: Point
    direction: Point
    start: Optional[Point]
    end: Optional[Point]
    start_vertex: Optional[int] = None
    end_vertex: Optional[int] = None
    cell: int = -1
    labels: Tuple[Tuple[int, ...], ...] = ()

    def ray(self) -> Tuple[Point, Point]:
        """Base point and outward direction of a ray."""
        if self.kind != "ray":
            raise ValueError("not a ray")
        if self.start is not None:
            return self.start, self.direction
        return self.end, tuple(-v for v in self.direction)  # type: ignore[return-value]

    def sample(self) -> Point:
        """A point in the relative interior."""
        if self.start is not None and self.end is not None:
            return tuple((a + b) / 2 for a, b in zip(self.start, self.end))
        if self.start is not None:
            return tuple(a + d for a, d in zip(self.start, self.direction))
        if self.end is not None:
            return tuple(a - d for a, d in zip(self.end, self.direction))
        return self.base


@dataclass
class Skeleton:
    dim_ambient: int
    vertices: List[Point] = field(default_factory=list)
    vertex_cells: List[int] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)

    def counts(self) -> Dict[str, int]:
        out = {"vertex": len(self.vertices), "segment": 0, "ray": 0, "line": 0}
        for e in self.edges:
            out[e.kind] += 1
        return out


def _normalize(d: Sequence[Fraction]) -> Point:
    lead = next(v for v in d if v != 0)
    return tuple(v / lead for v in d)


def extract_skeleton(T: Prevariety) -> Skeleton:
    """Vertices and edges of a prevariety of dimension at most one."""
    n = T.dim_ambient
    skel = Skeleton(n)
    members = T.members()
    for c in members:
        if T.cells[c].dim > 1:
            raise NotACurveError(c, T.cells[c])
    index: Dict[Point, int] = {}
    for c in members:
        cell = T.cells[c]
        if cell.dim == 0:
            index[cell.witness] = len(skel.vertices)
            skel.vertices.append(cell.witness)
            skel.vertex_cells.append(c)
    for c in members:
        cell = T.cells[c]
        if cell.dim != 1:
            continue
        cons = cell.region.constraints
        zero = [k.func.gradient for k in cons if k.relation == EQ]
        (d,) = nullspace(zero, n)
        d = _normalize(d)
        w = cell.witness
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for k in cons:
            if k.relation != GT:
                continue
            rate = sum((g * v for g, v in zip(k.func.gradient, d)), Fraction(0))
            if rate == 0:
                continue
            t = -k.func(w) / rate
            if rate > 0:
                lo = t if lo is None else max(lo, t)
            else:
                hi = t if hi is None else min(hi, t)
        start = None if lo is None else tuple(a + lo * b for a, b in zip(w, d))
        end = None if hi is None else tuple(a + hi * b for a, b in zip(w, d))
        kind = "line" if start is None and end is None else "ray" if start is None or end is None else "segment"
        skel.edges.append(Edge(kind, w, d, start, end,
                               None if start is None else index.get(start),
                               None if end is None else index.get(end),
                               c, T.labels[c]))
    return skel
