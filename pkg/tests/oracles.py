"""Independent reference implementations used to cross-check the library."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import List, Optional, Sequence

import networkx as nx

from tropnp.core import Monomial, NPPoly, PolyInY, eval_poly, trop_mul
from tropnp.curve import PL1D, CurveModel, np_to_pl
from tropnp.geom import poly_equal, reduce_poly


# divisibility -------------------------------------------------------------

def probe_points(n: int) -> List[tuple]:
    rng = random.Random(4242 + n)
    pts = [tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n)) for _ in range(24)]
    return pts + [tuple(Fraction(s * 40) for s in signs)
                  for signs in itertools.product((-1, 1), repeat=n)]


def brute_force_quotients(f0: NPPoly, f1: NPPoly) -> List[NPPoly]:
    """All reduced ``y`` with ``f1 (x) y == f0``, by exhaustive candidate search.

    Every essential monomial of ``y`` times some monomial of ``f1`` is an
    essential monomial of ``f0``, and ``y`` has at most as many essential
    monomials as ``f0``; subsets of such candidates are filtered by exact
    values at probe points and then confirmed by function equality.
    """
    r0 = reduce_poly(f0)
    n = f0.arity
    pts = probe_points(n)
    target = [eval_poly(f0, x) - eval_poly(f1, x) for x in pts]
    cands = {Monomial(tuple(b - c for b, c in zip(mb.exps, mc.exps)), mb.coeff - mc.coeff)
             for mb in r0.monomials for mc in f1.monomials}
    # on the probe points y equals the target, so each of its monomials lies above it
    vals = {}
    for m in sorted(cands):
        v = [m.value(x) for x in pts]
        if all(a >= t for a, t in zip(v, target)):
            vals[m] = v
    keep = list(vals)
    out: List[NPPoly] = []
    for size in range(1, len(r0) + 1):
        for sub in itertools.combinations(keep, size):
            if len({m.exps for m in sub}) < size:
                continue
            if any(min(vals[m][s] for m in sub) != t for s, t in enumerate(target)):
                continue
            y = NPPoly(sub, n)
            if poly_equal(trop_mul(f1, y), f0):
                r = reduce_poly(y)
                if r not in out:
                    out.append(r)
    return out


def pl_quotient_1d(f0: NPPoly, f1: NPPoly) -> Optional[PL1D]:
    """``f0 - f1`` as a PL function when it is min-convex with integer slopes."""
    a, b = np_to_pl(f0), np_to_pl(f1)
    bps = sorted(set(a.breakpoints) | set(b.breakpoints))
    if not bps:
        d = PL1D((), (a.slopes[0] - b.slopes[0],), a(0) - b(0))
    else:
        probes = [bps[0] - 1] + [(s + t) / 2 for s, t in zip(bps, bps[1:])] + [bps[-1] + 1]
        slopes = []
        for x in probes:
            h = Fraction(1, 10 ** 6)
            slopes.append((a(x + h) - a(x) - b(x + h) + b(x)) / h)
        d = PL1D(tuple(bps), tuple(slopes), a(bps[0]) - b(bps[0])).simplified()
    if not d.is_min_convex() or any(s.denominator != 1 for s in d.slopes):
        return None
    return d


# curves --------------------------------------------------------------------

def dfs_path_count(c: CurveModel, convex: bool = True) -> int:
    """Source-to-sink paths in the x-ordered edge graph, counted with networkx."""
    G = nx.DiGraph()
    nodes = [k for k, e in enumerate(c.edges) if not e.vertical]
    G.add_nodes_from(nodes)
    for i in nodes:
        for j in nodes:
            a, b = c.edges[i], c.edges[j]
            if a.right is None or b.left is None or a.right != b.left:
                continue
            if convex and any(s < t for s, t in zip(a.slopes, b.slopes)):
                continue
            G.add_edge(i, j)
    sources = [k for k in nodes if c.edges[k].left is None]
    sinks = [k for k in nodes if c.edges[k].right is None]
    total = 0
    for s in sources:
        for t in sinks:
            if s == t:
                total += 1
            else:
                total += sum(1 for _ in nx.all_simple_paths(G, s, t))
    return total


# random corpora -----------------------------------------------------------

def random_monic(rng: random.Random, n: int, d: int, max_terms: int = 3) -> PolyInY:
    coeffs: List[Optional[NPPoly]] = []
    for i in range(d):
        if i > 0 and rng.random() < 0.25:
            coeffs.append(None)
            continue
        ms = [Monomial(tuple(Fraction(rng.randint(-2, 2)) for _ in range(n)), Fraction(rng.randint(-2, 2)))
              for _ in range(rng.randint(1, max_terms))]
        coeffs.append(NPPoly(ms, n))
    coeffs.append(NPPoly.constant(0, n))
    return PolyInY(coeffs, n)


def random_pl(rng: random.Random, max_breaks: int = 10) -> PL1D:
    k = rng.randint(0, max_breaks)
    bps = sorted(set(Fraction(rng.randint(-60, 60), rng.randint(1, 6)) for _ in range(k)))
    slopes = [Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(len(bps) + 1)]
    return PL1D(tuple(bps), tuple(slopes), Fraction(rng.randint(-20, 20), rng.randint(1, 5)))


def pl_checkpoints(f: PL1D) -> List[Fraction]:
    b = list(f.breakpoints)
    if not b:
        return [Fraction(-7), Fraction(0), Fraction(7)]
    return b + [(s + t) / 2 for s, t in zip(b, b[1:])] + [b[0] - 5, b[-1] + 5, b[0] - 1000, b[-1] + 1000]
