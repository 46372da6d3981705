"""Barycentric straight-line drawings of sphere maps and their SVG rendering."""

from __future__ import annotations

import colorsys
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import cg

from .combmap import MapError, euler_characteristic, face_census, faces

TOL = 1e-9


class LayoutError(MapError):
    pass


@dataclass
class Drawing:
    coords: np.ndarray  # (V, 2)
    polygons: list  # vertex ids of every face, outer face first
    sizes: list  # face size per polygon
    edges: np.ndarray  # (E, 2) vertex ids
    residual: float
    census: dict

    @property
    def outer(self):
        return self.polygons[0]


def _face_vertices(m, vid):
    return [[vid[d] for d in f.darts] for f in faces(m)]


def barycentric_layout(m, outer=None, tol=TOL, maxiter=10**6):
    """Pin the outer face to a regular polygon and put every other vertex at its neighbours' mean.

    ``outer`` is the index of a face in :func:`faces` order; the default is
    the first largest face.
    """
    chi, orientable = euler_characteristic(m)
    if chi != 2 or not orientable:
        raise LayoutError("only sphere maps can be drawn")
    from .verify import vertex_connectivity_at_least

    if not vertex_connectivity_at_least(m, 3):
        warnings.warn("map is not 3-connected; the drawing may degenerate", stacklevel=2)
    vid, nv = m.vertex_ids()
    polys = _face_vertices(m, vid)
    if outer is None:
        outer = max(range(len(polys)), key=lambda i: (len(polys[i]), -i))
    polys = [polys[outer]] + polys[:outer] + polys[outer + 1 :]
    ring = polys[0]
    if len(set(ring)) != len(ring):
        raise LayoutError("outer face is not a simple cycle")

    edges = np.array(sorted({(min(vid[d], vid[t]), max(vid[d], vid[t])) for d, t in enumerate(m.twin) if t >= 0}))
    xy = np.zeros((nv, 2))
    k = len(ring)
    ang = 2 * math.pi * np.arange(k) / k
    xy[ring, 0] = np.cos(ang)
    xy[ring, 1] = np.sin(ang)

    pinned = np.zeros(nv, dtype=bool)
    pinned[ring] = True
    free = np.flatnonzero(~pinned)
    idx = -np.ones(nv, dtype=int)
    idx[free] = np.arange(len(free))
    u = np.concatenate([edges[:, 0], edges[:, 1]])
    v = np.concatenate([edges[:, 1], edges[:, 0]])
    deg = np.bincount(u, minlength=nv).astype(float)
    if len(free):
        sel = ~pinned[u] & ~pinned[v]
        rows = np.concatenate([idx[u[sel]], np.arange(len(free))])
        cols = np.concatenate([idx[v[sel]], np.arange(len(free))])
        vals = np.concatenate([-np.ones(sel.sum()), deg[free]])
        lap = coo_matrix((vals, (rows, cols)), shape=(len(free),) * 2).tocsr()
        bsel = ~pinned[u] & pinned[v]
        for c in range(2):
            rhs = np.bincount(idx[u[bsel]], weights=xy[v[bsel], c], minlength=len(free))
            sol, info = cg(lap, rhs, x0=np.zeros(len(free)), rtol=1e-15, atol=tol * 1e-3, maxiter=maxiter)
            if info > 0:
                raise LayoutError("barycentric solve did not converge")
            xy[free, c] = sol
    res = residual(xy, edges, pinned)
    if res >= tol:
        raise LayoutError(f"barycentric residual {res:.3g} above {tol:g}")
    return Drawing(xy, polys, [len(p) for p in polys], edges, res, face_census(m))


def residual(xy, edges, pinned):
    """Largest distance, per coordinate, of a free vertex from its neighbours' mean."""
    nv = len(xy)
    u = np.concatenate([edges[:, 0], edges[:, 1]])
    v = np.concatenate([edges[:, 1], edges[:, 0]])
    deg = np.bincount(u, minlength=nv)
    out = 0.0
    for c in range(2):
        mean = np.bincount(u, weights=xy[v, c], minlength=nv) / np.maximum(deg, 1)
        diff = np.abs(mean - xy[:, c])[~pinned]
        if len(diff):
            out = max(out, float(diff.max()))
    return out


def crossing_pairs(xy, edges, block=512):
    """Number of segment pairs crossing at a point interior to both."""
    p, q = xy[edges[:, 0]], xy[edges[:, 1]]
    n = len(edges)
    total = 0
    for s in range(0, n, block):
        a, b = p[s : s + block, None, :], q[s : s + block, None, :]
        c, d = p[None, :, :], q[None, :, :]

        def orient(x, y, z):
            return (y[..., 0] - x[..., 0]) * (z[..., 1] - x[..., 1]) - (y[..., 1] - x[..., 1]) * (z[..., 0] - x[..., 0])

        o1, o2 = orient(a, b, c), orient(a, b, d)
        o3, o4 = orient(c, d, a), orient(c, d, b)
        hit = (o1 * o2 < 0) & (o3 * o4 < 0)
        ea, eb = edges[s : s + block, None, :], edges[None, :, :]
        shared = (ea[..., 0] == eb[..., 0]) | (ea[..., 0] == eb[..., 1]) | (ea[..., 1] == eb[..., 0]) | (ea[..., 1] == eb[..., 1])
        hit &= ~shared
        j = np.arange(n)[None, :]
        i = np.arange(s, min(s + block, n))[:, None]
        total += int((hit & (j > i)).sum())
    return total


PALETTE = {3: "#d7301f", 4: "#fc8d59", 5: "#4575b4", 6: "#ffffbf", 7: "#91cf60", 8: "#984ea3"}


def _color(k):
    if k in PALETTE:
        return PALETTE[k]
    r, g, b = colorsys.hls_to_rgb((k * 47) % 360 / 360, 0.7, 0.6)
    return "#%02x%02x%02x" % (round(255 * r), round(255 * g), round(255 * b))


def render_svg(d, size=800, margin=10):
    """SVG text with one filled polygon per inner face; the outer face is the background."""
    scale = (size - 2 * margin) / 2
    census = " ".join(f"{k}:{v}" for k, v in sorted(d.census.items()))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<!-- census {census} -->",
        f'<rect width="{size}" height="{size}" fill="{_color(d.sizes[0])}"/>',
    ]
    for poly, k in zip(d.polygons[1:], d.sizes[1:]):
        pts = " ".join(f"{margin + scale * (1 + x):.4f},{margin + scale * (1 - y):.4f}" for x, y in d.coords[poly])
        out.append(f'<polygon points="{pts}" fill="{_color(k)}" stroke="black" stroke-width="0.5"><title>{k}</title></polygon>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = ["Drawing", "LayoutError", "barycentric_layout", "crossing_pairs", "render_svg", "residual"]
