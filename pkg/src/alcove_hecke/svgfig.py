"""Rank-2 alcove pictures as standalone SVG text.

The plane is the coweight space of a rank-2 system, drawn with the
Euclidean structure induced by the root bilinear form.  A scene shows
the affine wall arrangement (one line per wall-family root and integer
level), the strip shaded, the base alcove marked, and optionally a
folded walk as a chain of arrows between alcove centers.  Crossings,
folds, and bounces get distinct colors; the closing relabel is dashed.

Everything is emitted as plain SVG 1.1 with no external references, so
the output is a single self-contained file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .jgeom import JContext
from .paths import JFoldedPath
from .weyl import AffElt, aff_identity, aff_mul, fin_apply_coweight, simple_aff

__all__ = ["FigureError", "SvgScene", "build_scene", "emit_svg"]


class FigureError(ValueError):
    """Raised for systems the plane picture cannot show."""


# --- plane embedding ---------------------------------------------------

def _embedding(rs):
    """Simple roots as plane vectors reproducing the bilinear form."""
    g = rs.gram
    b11, b12, b22 = g[0][0], g[0][1], g[1][1]
    s = math.sqrt(b11)
    r1 = (s, 0.0)
    r2 = (b12 / s, math.sqrt((b11 * b22 - b12 * b12) / b11))
    return r1, r2


def _root_vec(emb, root):
    r1, r2 = emb
    return (root[0] * r1[0] + root[1] * r2[0],
            root[0] * r1[1] + root[1] * r2[1])


def _cow_vec(emb, lam):
    """Coweight (omega-coordinates) to the plane point pairing correctly
    with every embedded root."""
    (a, b), (c, d) = emb
    det = a * d - b * c
    l0, l1 = float(lam[0]), float(lam[1])
    return ((d * l0 - b * l1) / det, (-c * l0 + a * l1) / det)


def _alcove_corners(rs, w: AffElt):
    """Corners of the alcove of w, exact omega-coordinates."""
    phi = rs.highest_root
    base = [(Fraction(0), Fraction(0)),
            (Fraction(1, phi[0]), Fraction(0)),
            (Fraction(0), Fraction(1, phi[1]))]
    out = []
    for v in base:
        img = fin_apply_coweight(w.lin, v)
        out.append((img[0] + w.wt[0], img[1] + w.wt[1]))
    return out


def _center(pts):
    n = len(pts)
    return (sum(p[0] for p in pts) / n, sum(p[1] for p in pts) / n)


# --- clipping helpers --------------------------------------------------

def _clip_segment(p0, d, box):
    """Intersect the line p0 + t d with an axis box; None if disjoint."""
    minx, miny, maxx, maxy = box
    lo, hi = -1e9, 1e9
    for p, dd, a, b in ((p0[0], d[0], minx, maxx),
                        (p0[1], d[1], miny, maxy)):
        if abs(dd) < 1e-12:
            if p < a or p > b:
                return None
            continue
        t1, t2 = (a - p) / dd, (b - p) / dd
        if t1 > t2:
            t1, t2 = t2, t1
        lo, hi = max(lo, t1), min(hi, t2)
    if lo >= hi:
        return None
    return ((p0[0] + lo * d[0], p0[1] + lo * d[1]),
            (p0[0] + hi * d[0], p0[1] + hi * d[1]))


def _clip_halfplane(poly, n, c):
    """Keep the part of a convex polygon with n.x <= c."""
    out = []
    m = len(poly)
    for i in range(m):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % m]
        fa = n[0] * ax + n[1] * ay - c
        fb = n[0] * bx + n[1] * by - c
        if fa <= 1e-12:
            out.append((ax, ay))
        if (fa > 0) != (fb > 0) and fa != fb:
            t = fa / (fa - fb)
            out.append((ax + t * (bx - ax), ay + t * (by - ay)))
    return out


# --- the scene ---------------------------------------------------------

@dataclass(frozen=True)
class SvgScene:
    """Resolved plane primitives, plane coordinates with y pointing up.

    walls: ((x1, y1, x2, y2), emphasized) per drawn line.
    wall_labels: (x, y, text) annotations near a wall.
    region: shaded strip polygon, possibly empty.
    alcoves: lightly filled triangles the walk visits.
    base_alcove: the triangle of the identity.
    arrows: (points, kind) with kind cross | fold | bounce | relabel.
    """

    system: str
    rank: int
    viewbox: tuple
    walls: tuple
    wall_labels: tuple
    region: tuple
    alcoves: tuple
    base_alcove: tuple
    arrows: tuple


def _root_name(root) -> str:
    parts = []
    for i, c in enumerate(root, 1):
        if c == 0:
            continue
        parts.append(("" if c == 1 else str(c)) + f"α{i}")
    return "+".join(parts) if parts else "0"


def _wall_name(rs, root) -> str:
    """Label text; a doubled direction shows both the root and its half."""
    if rs.is_nonreduced:
        half = tuple(c // 2 for c in root)
        if all(c % 2 == 0 for c in root) and rs.is_root(half):
            return f"{_root_name(half)}, {_root_name(root)}"
    return _root_name(root)


def build_scene(ctx: JContext, path: JFoldedPath | None = None,
                k_bound: int = 2) -> SvgScene:
    """Lay out the arrangement, the strip, and an optional walk."""
    rs = ctx.rs
    if rs.rank != 2:
        raise FigureError(f"plane pictures need rank 2, got rank {rs.rank}")
    if path is not None and path.ctx != ctx:
        raise ValueError("path belongs to a different strip")
    if k_bound < 1:
        raise ValueError("wall level bound must be at least 1")
    emb = _embedding(rs)

    base = [_cow_vec(emb, v) for v in
            _alcove_corners(rs, aff_identity(rs.rank))]
    pts = list(base)
    alcove_polys = []
    arrows = []
    if path is not None:
        seen = {}
        centers = []
        for w in path.points:
            corners = [_cow_vec(emb, v) for v in _alcove_corners(rs, w)]
            pts.extend(corners)
            key = (w.wt, w.lin)
            if key not in seen:
                seen[key] = corners
                alcove_polys.append(tuple(corners))
            # Nudge repeat visits so stacked arrows stay readable.
            c = _center(corners)
            n = sum(1 for cc in centers if
                    abs(cc[0] - c[0]) + abs(cc[1] - c[1]) < 1e-9)
            shift = 0.10 * n
            c = (c[0] + shift * (corners[0][0] - c[0]),
                 c[1] + shift * (corners[0][1] - c[1]))
            centers.append(c)
        for idx, st in enumerate(path.steps):
            a = centers[idx]
            if st.kind == "cross":
                arrows.append(((a, centers[idx + 1]), "cross"))
                continue
            # Fold and bounce turn back at the wall: aim at the center
            # of the reflected alcove, the wall sits halfway there.
            refl = aff_mul(path.points[idx], simple_aff(rs, st.node))
            rc = _center([_cow_vec(emb, v)
                          for v in _alcove_corners(rs, refl)])
            mid = ((a[0] + rc[0]) / 2, (a[1] + rc[1]) / 2)
            dx, dy = mid[0] - a[0], mid[1] - a[1]
            norm = math.hypot(dx, dy) or 1.0
            off = (-dy / norm * 0.05, dx / norm * 0.05)
            back = (a[0] + off[0] * 2, a[1] + off[1] * 2)
            arrows.append(((a, mid, (mid[0] + off[0], mid[1] + off[1]),
                            back), st.kind))
        if not path.sigma.is_identity():
            arrows.append(((centers[-2], centers[-1]), "relabel"))

    if path is None:
        rmin = min(math.hypot(*_root_vec(emb, r)) for r in rs.phi1_positive)
        half = k_bound / rmin
        minx, miny, maxx, maxy = -half, -half, half, half
    else:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        pad = max(max(xs) - min(xs), max(ys) - min(ys), 1.0) * 0.18
        minx, miny = min(xs) - pad, min(ys) - pad
        maxx, maxy = max(xs) + pad, max(ys) + pad
    box = (minx, miny, maxx, maxy)

    level_max = k_bound
    if path is not None:
        # Make sure walls cover the walk's extent.
        for r in rs.phi1_positive:
            rv = _root_vec(emb, r)
            for cx, cy in ((minx, miny), (minx, maxy),
                           (maxx, miny), (maxx, maxy)):
                level_max = max(level_max,
                                math.ceil(abs(cx * rv[0] + cy * rv[1])))

    boundary = ctx.floor_walls | ctx.ceiling_walls
    walls = []
    labels = []
    for r in rs.phi1_positive:
        rv = _root_vec(emb, r)
        nn = rv[0] * rv[0] + rv[1] * rv[1]
        d = (-rv[1], rv[0])
        for k in range(-level_max, level_max + 1):
            p0 = (k * rv[0] / nn, k * rv[1] / nn)
            seg = _clip_segment(p0, d, box)
            if seg is None:
                continue
            (x1, y1), (x2, y2) = seg
            walls.append(((x1, y1, x2, y2), (r, k) in boundary))
            if k == 1:
                t = 0.88
                labels.append((x1 + t * (x2 - x1), y1 + t * (y2 - y1),
                               _wall_name(rs, r)))

    region = [(minx, miny), (maxx, miny), (maxx, maxy), (minx, maxy)]
    if ctx.J:
        for vec, c in ctx.wall_functionals:
            rv = _root_vec(emb, vec)
            region = _clip_halfplane(region, (-rv[0], -rv[1]), c)
            if not region:
                break
    else:
        region = []

    return SvgScene(
        system=f"{rs.family}{rs.rank}, J={{{','.join(map(str, ctx.J))}}}",
        rank=rs.rank,
        viewbox=(minx, miny, maxx - minx, maxy - miny),
        walls=tuple(walls),
        wall_labels=tuple(labels),
        region=tuple(region),
        alcoves=tuple(alcove_polys),
        base_alcove=tuple(base),
        arrows=tuple(arrows),
    )


_ARROW_COLOR = {"cross": "#1668b0", "fold": "#c2321e",
                "bounce": "#d97f0e", "relabel": "#666666"}


def _fmt(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _pts(points) -> str:
    return " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in points)


def emit_svg(scene: SvgScene) -> str:
    """Serialize a scene; deterministic text, y flipped for screen."""
    if scene.rank != 2:
        raise FigureError("only rank-2 scenes can be drawn")
    minx, miny, w, h = scene.viewbox
    vb = f"{_fmt(minx)} {_fmt(-(miny + h))} {_fmt(w)} {_fmt(h)}"
    px_w = 720
    px_h = int(round(px_w * h / w))
    fs = max(w, h) * 0.022
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{vb}" width="{px_w}" height="{px_h}">',
        "<defs>",
    ]
    for kind, color in _ARROW_COLOR.items():
        out.append(
            f'<marker id="tip-{kind}" viewBox="0 0 10 10" refX="9" '
            f'refY="5" markerWidth="7" markerHeight="7" orient="auto">'
            f'<path d="M0,0 L10,5 L0,10 z" fill="{color}"/></marker>')
    out.append("</defs>")
    out.append(f'<title>{scene.system}</title>')

    if scene.region:
        out.append(f'<polygon points="{_pts(scene.region)}" '
                   f'fill="#f5d76e" fill-opacity="0.45" stroke="none"/>')
    out.append(f'<polygon points="{_pts(scene.base_alcove)}" '
               f'fill="#7f7f7f" fill-opacity="0.25" stroke="none"/>')
    for poly in scene.alcoves:
        out.append(f'<polygon points="{_pts(poly)}" fill="#7fb3d5" '
                   f'fill-opacity="0.18" stroke="none"/>')

    thin = max(w, h) * 0.0018
    for (x1, y1, x2, y2), emphasized in scene.walls:
        sw = thin * (2.6 if emphasized else 1.0)
        color = "#333333" if emphasized else "#999999"
        out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(-y1)}" '
                   f'x2="{_fmt(x2)}" y2="{_fmt(-y2)}" stroke="{color}" '
                   f'stroke-width="{_fmt(sw)}"/>')

    for x, y, text in scene.wall_labels:
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(-y)}" '
                   f'font-size="{_fmt(fs)}" fill="#555555" '
                   f'font-family="sans-serif">{text}</text>')

    aw = thin * 2.2
    for points, kind in scene.arrows:
        color = _ARROW_COLOR[kind]
        dash = ' stroke-dasharray="0.05,0.03"' if kind == "relabel" else ""
        out.append(f'<polyline points="{_pts(points)}" fill="none" '
                   f'stroke="{color}" stroke-width="{_fmt(aw)}"'
                   f'{dash} marker-end="url(#tip-{kind})"/>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
