"""Resolving tropical curves in ``R^n`` with coordinates ``(x, y_1, ..., y_{n-1})``.

A resolution is a tuple of functions ``y_j(x)`` whose graph lies in the
curve.  Non-vertical edges of the curve form a DAG ordered by ``x``; paths
from an edge unbounded to the left to one unbounded to the right are
exactly the graphs that span the whole x-axis.  When every slope is
non-increasing along the path the ``y_j`` are min-convex, i.e. tropical
Newton-Puiseux polynomials; otherwise they are still rational functions
after a difference-of-convex split.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .core import Monomial, NPPoly, Point, Q, RationalLike, RationalPL
from .geom import Prevariety, Skeleton, extract_skeleton, prevariety, reduce_poly
from .ties import SysPoly, VerifyResult, verify_polys


# univariate piecewise-linear functions ------------------------------------

@dataclass(frozen=True)
class PL1D:
    """Continuous piecewise-linear ``f: R -> R``.

    ``slopes[k]`` holds on the k-th piece, pieces being separated by the
    strictly increasing ``breakpoints``.  ``anchor`` is ``f(breakpoints[0])``,
    or ``f(0)`` when there are no breakpoints.
    """

    breakpoints: Tuple[Fraction, ...]
    slopes: Tuple[Fraction, ...]
    anchor: Fraction

    def __post_init__(self):
        if len(self.slopes) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more slope than breakpoints")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @classmethod
    def make(cls, breakpoints: Sequence[RationalLike], slopes: Sequence[RationalLike],
             anchor: RationalLike) -> "PL1D":
        return cls(tuple(Q(b) for b in breakpoints), tuple(Q(s) for s in slopes), Q(anchor))

    @classmethod
    def affine(cls, slope: RationalLike, intercept: RationalLike) -> "PL1D":
        return cls((), (Q(slope),), Q(intercept))

    def values(self) -> List[Fraction]:
        """Values at the breakpoints."""
        out = [self.anchor]
        for k in range(1, len(self.breakpoints)):
            out.append(out[-1] + self.slopes[k] * (self.breakpoints[k] - self.breakpoints[k - 1]))
        return out

    def __call__(self, x: RationalLike) -> Fraction:
        x = Q(x)
        if not self.breakpoints:
            return self.anchor + self.slopes[0] * x
        vals = self.values()
        k = bisect.bisect_right(self.breakpoints, x)
        if k == 0:
            return vals[0] + self.slopes[0] * (x - self.breakpoints[0])
        return vals[k - 1] + self.slopes[k] * (x - self.breakpoints[k - 1])

    def is_min_convex(self) -> bool:
        return all(a >= b for a, b in zip(self.slopes, self.slopes[1:]))

    def simplified(self) -> "PL1D":
        """Drop breakpoints where the slope does not change."""
        if not self.breakpoints:
            return self
        vals = self.values()
        bps, slopes, anchor = [], [self.slopes[0]], None
        for k, t in enumerate(self.breakpoints):
            if self.slopes[k + 1] != slopes[-1]:
                bps.append(t)
                slopes.append(self.slopes[k + 1])
                if anchor is None:
                    anchor = vals[k]
        if not bps:
            return PL1D((), (self.slopes[0],), self(0))
        return PL1D(tuple(bps), tuple(slopes), anchor)  # type: ignore[arg-type]


def dc_decompose(f: PL1D) -> Tuple[PL1D, PL1D]:
    """Split ``f = g - h`` with ``g``, ``h`` min-convex (non-increasing slopes).

    Each slope change goes to ``g`` when negative and, negated, to ``h`` when
    positive; ``g`` starts with ``f``'s first slope, ``h`` with slope 0, and
    ``h`` is anchored at 0.  A min-convex ``f`` yields ``(f, 0)``.
    """
    if not f.breakpoints:
        return f, PL1D((), (Fraction(0),), Fraction(0))
    g_slopes = [f.slopes[0]]
    h_slopes = [Fraction(0)]
    for k in range(1, len(f.slopes)):
        delta = f.slopes[k] - f.slopes[k - 1]
        g_slopes.append(g_slopes[-1] + min(delta, Fraction(0)))
        h_slopes.append(h_slopes[-1] - max(delta, Fraction(0)))
    g = PL1D(f.breakpoints, tuple(g_slopes), f.anchor)
    h = PL1D(f.breakpoints, tuple(h_slopes), Fraction(0))
    return g, h


class NotMinConvexError(ValueError):
    pass


def pl_to_np(f: PL1D) -> NPPoly:
    """One monomial per affine piece: exponent = slope, coefficient = intercept."""
    if not f.is_min_convex():
        raise NotMinConvexError(f"slopes {tuple(str(s) for s in f.slopes)} are not non-increasing")
    if not f.breakpoints:
        return NPPoly([Monomial((f.slopes[0],), f.anchor)], 1)
    vals = f.values()
    monos = [Monomial((f.slopes[0],), vals[0] - f.slopes[0] * f.breakpoints[0])]
    for k, (t, v) in enumerate(zip(f.breakpoints, vals)):
        s = f.slopes[k + 1]
        monos.append(Monomial((s,), v - s * t))
    return NPPoly(monos, 1)


def np_to_pl(p: NPPoly) -> PL1D:
    """The univariate polynomial ``p`` as a piecewise-linear function."""
    if p.arity != 1:
        raise ValueError("np_to_pl takes univariate polynomials")
    pieces = sorted(reduce_poly(p).monomials, key=lambda m: -m.exps[0])
    if len(pieces) == 1:
        return PL1D((), (pieces[0].exps[0],), pieces[0].coeff)
    bps = []
    for a, b in zip(pieces, pieces[1:]):
        bps.append((b.coeff - a.coeff) / (a.exps[0] - b.exps[0]))
    t0 = bps[0]
    return PL1D(tuple(bps), tuple(m.exps[0] for m in pieces), pieces[0].coeff + pieces[0].exps[0] * t0)


def pl_to_rational(f: PL1D) -> RationalPL:
    g, h = dc_decompose(f)
    return RationalPL(pl_to_np(g), pl_to_np(h))


# curve model -------------------------------------------------------------

@dataclass
class CurveEdge:
    edge: int  # index into skeleton.edges
    vertical: bool
    left: Optional[Point]  # endpoint with smaller x (None when unbounded)
    right: Optional[Point]
    slopes: Optional[Tuple[Fraction, ...]]  # dy_j/dx, None when vertical
    base: Point

    @property
    def left_unbounded(self) -> bool:
        return not self.vertical and self.left is None

    @property
    def right_unbounded(self) -> bool:
        return not self.vertical and self.right is None

    @property
    def full_line(self) -> bool:
        return self.left_unbounded and self.right_unbounded

    @property
    def x_extent(self) -> Tuple[Optional[Fraction], Optional[Fraction]]:
        if self.vertical:
            return self.base[0], self.base[0]
        return (None if self.left is None else self.left[0],
                None if self.right is None else self.right[0])

    def y_at(self, x: Fraction) -> Tuple[Fraction, ...]:
        t = x - self.base[0]
        return tuple(b + t * s for b, s in zip(self.base[1:], self.slopes))  # type: ignore[arg-type]


@dataclass
class CurveModel:
    system: Tuple[NPPoly, ...]
    skeleton: Skeleton
    edges: List[CurveEdge] = field(default_factory=list)

    @property
    def dim_ambient(self) -> int:
        return self.skeleton.dim_ambient

    def nodes(self) -> List[int]:
        return [k for k, e in enumerate(self.edges) if not e.vertical]


def build_curve(T: Prevariety) -> CurveModel:
    """Classify the edges of a 1-dimensional prevariety over ``(x, y_1, ...)``.

    Raises :class:`tropnp.geom.NotACurveError` when ``T`` has a cell of
    dimension two or more.
    """
    if T.dim_ambient < 2:
        raise ValueError("a curve needs coordinates (x, y_1, ...): ambient dimension >= 2")
    skel = extract_skeleton(T)
    model = CurveModel(T.system, skel)
    for k, e in enumerate(skel.edges):
        vertical = e.direction[0] == 0
        if vertical:
            model.edges.append(CurveEdge(k, True, None, None, None, e.base))
        else:  # direction normalized to dx = 1, so start is the left end
            model.edges.append(CurveEdge(k, False, e.start, e.end, tuple(e.direction[1:]), e.base))
    return model


def curve_from_system(system: Sequence[NPPoly]) -> CurveModel:
    return build_curve(prevariety(system))


@dataclass
class ResolutionGraph:
    nodes: List[int]  # curve edge indices of non-vertical edges
    arcs: Dict[int, List[int]]
    sources: List[int]
    sinks: List[int]

    def arc_count(self) -> int:
        return sum(len(v) for v in self.arcs.values())


def build_resolution_graph(c: CurveModel, convex: bool = True) -> ResolutionGraph:
    """Arcs ``e- -> e+`` when the right end of ``e-`` is the left end of ``e+``
    and, with ``convex``, every slope does not increase across the joint."""
    nodes = c.nodes()
    by_left: Dict[Point, List[int]] = {}
    for k in nodes:
        e = c.edges[k]
        if e.left is not None:
            by_left.setdefault(e.left, []).append(k)
    arcs: Dict[int, List[int]] = {}
    for k in nodes:
        e = c.edges[k]
        succ = []
        if e.right is not None:
            for j in by_left.get(e.right, []):
                f = c.edges[j]
                if not convex or all(a >= b for a, b in zip(e.slopes, f.slopes)):  # type: ignore[arg-type]
                    succ.append(j)
        arcs[k] = sorted(set(succ))
    sources = [k for k in nodes if c.edges[k].left_unbounded]
    sinks = [k for k in nodes if c.edges[k].right_unbounded]
    return ResolutionGraph(nodes, arcs, sources, sinks)


def iter_paths(g: ResolutionGraph) -> Iterator[List[int]]:
    """Source-to-sink paths in lexicographic order of node indices."""
    sinks = set(g.sinks)

    def walk(path: List[int]) -> Iterator[List[int]]:
        last = path[-1]
        if last in sinks:
            yield list(path)
        for nxt in g.arcs[last]:
            path.append(nxt)
            yield from walk(path)
            path.pop()

    for s in g.sources:
        yield from walk([s])


def path_functions(c: CurveModel, path: Sequence[int]) -> List[PL1D]:
    """The ``y_j`` traced by a path, one :class:`PL1D` per coordinate."""
    edges = [c.edges[k] for k in path]
    m = c.dim_ambient - 1
    if len(edges) == 1:
        e = edges[0]
        at0 = e.y_at(Fraction(0))
        return [PL1D((), (e.slopes[j],), at0[j]) for j in range(m)]  # type: ignore[index]
    joints = [e.right for e in edges[:-1]]
    bps = tuple(p[0] for p in joints)  # type: ignore[index]
    return [PL1D(bps, tuple(e.slopes[j] for e in edges), joints[0][j + 1])  # type: ignore[index]
            for j in range(m)]


def resolve_curve(c: CurveModel) -> Optional[List[PL1D]]:
    """A resolution by min-convex functions, or ``None`` if the curve has none.

    A non-vertical full line resolves the curve on its own and is returned
    first; otherwise the lexicographically first admissible path is used.
    """
    for k in c.nodes():
        if c.edges[k].full_line:
            return path_functions(c, [k])
    path = next(iter_paths(build_resolution_graph(c)), None)
    return None if path is None else path_functions(c, path)


def enumerate_resolutions(c: CurveModel, limit: Optional[int] = None) -> List[List[PL1D]]:
    """One resolution per admissible path, up to ``limit`` of them."""
    out = []
    for path in iter_paths(build_resolution_graph(c)):
        if limit is not None and len(out) >= limit:
            break
        out.append(path_functions(c, path))
    return out


def resolve_curve_rational(c: CurveModel) -> Optional[List[RationalPL]]:
    """A resolution by rational functions: any x-spanning path, no slope condition."""
    path = next(iter_paths(build_resolution_graph(c, convex=False)), None)
    if path is None:
        return None
    return [pl_to_rational(f.simplified()) for f in path_functions(c, path)]


def indeterminate_names(m: int) -> List[str]:
    return ["y"] if m == 1 else [f"y{j + 1}" for j in range(m)]


def verify_curve_resolution(system: Sequence[NPPoly],
                            ys: Sequence[Union[NPPoly, RationalPL, PL1D]],
                            method: str = "lp") -> VerifyResult:
    """Check that ``x -> (x, y_1(x), ...)`` lies in the prevariety of ``system``
    at every ``x``, exactly, by substituting into each polynomial."""
    names = indeterminate_names(len(ys))
    values = {}
    for name, y in zip(names, ys):
        if isinstance(y, PL1D):
            y = pl_to_np(y) if y.is_min_convex() else pl_to_rational(y)
        values[name] = y
    polys = [SysPoly.from_nppoly(p, names, 1) for p in system]
    return verify_polys(polys, values, method)
