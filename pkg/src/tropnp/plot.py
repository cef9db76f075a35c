"""SVG drawings of planar prevarieties (ambient dimension 2).

Output is byte-for-byte reproducible: the SVG id salt is fixed, the date
metadata is dropped, and all geometry is clipped exactly before it is
converted to floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .geom import Edge, Skeleton  # noqa: E402

Box = Tuple[Fraction, Fraction, Fraction, Fraction]  # xmin, xmax, ymin, ymax

PALETTE = {"segment": "#1f4e79", "ray": "#2e7d32", "line": "#6a1b9a", "vertex": "#000000",
           "resolution": "#c62828"}


def window(skel: Skeleton, pad: Fraction = Fraction(1)) -> Box:
    """Bounding box of the vertices padded by ``pad`` on each side.

    Without vertices the box is centred on the base points of the edges
    (or on the origin).
    """
    pts = list(skel.vertices) or [e.base for e in skel.edges] or [(Fraction(0), Fraction(0))]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad


def clip(edge: Edge, box: Box) -> Optional[Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]]:
    """Exact part of ``edge`` inside ``box`` (Liang-Barsky on the parameter)."""
    (bx, by), (dx, dy) = edge.base, edge.direction
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    if edge.start is not None:
        lo = (edge.start[0] - bx) / dx if dx else (edge.start[1] - by) / dy
    if edge.end is not None:
        hi = (edge.end[0] - bx) / dx if dx else (edge.end[1] - by) / dy
    for p, d, a, b in ((bx, dx, box[0], box[1]), (by, dy, box[2], box[3])):
        if d == 0:
            if not a <= p <= b:
                return None
            continue
        t1, t2 = sorted(((a - p) / d, (b - p) / d))
        lo = t1 if lo is None else max(lo, t1)
        hi = t2 if hi is None else min(hi, t2)
    if lo is None or hi is None or lo > hi:
        return None
    return (bx + lo * dx, by + lo * dy), (bx + hi * dx, by + hi * dy)


def render_svg(skel: Skeleton, path: str, title: Optional[str] = None,
               overlay: Optional[Sequence[Tuple[Fraction, Fraction]]] = None) -> None:
    """Write the skeleton to ``path``; ``overlay`` is an optional polyline
    (e.g. the graph of a resolution) drawn on top."""
    if skel.dim_ambient != 2:
        raise ValueError(f"can only draw planar prevarieties, ambient dimension is {skel.dim_ambient}")
    box = window(skel)
    with plt.rc_context({"svg.hashsalt": "tnp", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(5, 5))
        for e in skel.edges:
            seg = clip(e, box)
            if seg is None:
                continue
            (x0, y0), (x1, y1) = seg
            ax.plot([float(x0), float(x1)], [float(y0), float(y1)],
                    color=PALETTE[e.kind], linewidth=2)
        if overlay:
            pts = _clip_polyline(overlay, box)
            ax.plot([float(x) for x, _ in pts], [float(y) for _, y in pts],
                    color=PALETTE["resolution"], linewidth=1, linestyle="--")
        if skel.vertices:
            ax.scatter([float(v[0]) for v in skel.vertices], [float(v[1]) for v in skel.vertices],
                       color=PALETTE["vertex"], s=16, zorder=3)
        ax.set_xlim(float(box[0]), float(box[1]))
        ax.set_ylim(float(box[2]), float(box[3]))
        ax.set_aspect("equal")
        ax.grid(True, linewidth=0.3)
        if title:
            ax.set_title(title)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def _clip_polyline(pts: Sequence[Tuple[Fraction, Fraction]], box: Box) -> List[Tuple[Fraction, Fraction]]:
    return [p for p in pts if box[0] <= p[0] <= box[1]]


def resolution_polyline(f, box: Box) -> List[Tuple[Fraction, Fraction]]:
    """Sample points of a univariate PL function ``f`` across the window."""
    xs = sorted({box[0], box[1], *[t for t in f.breakpoints if box[0] < t < box[1]]})
    return [(x, f(x)) for x in xs]
