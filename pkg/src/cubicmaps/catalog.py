"""Small named maps used as fixtures and as CLI examples."""

from __future__ import annotations

import math

from .combmap import CombMap
from .geometry import PlaneBuilder


def from_rotation(rot, negative=()):
    """Map of a simple graph from cyclic neighbour lists; ``negative`` holds edges ``(u, v)`` with u < v."""
    darts = {}
    for u, nbrs in rot.items():
        for v in nbrs:
            darts[(u, v)] = len(darts)
    n = len(darts)
    twin, nxt, sign = [0] * n, [0] * n, [1] * n
    neg = {(min(e), max(e)) for e in negative}
    for (u, v), d in darts.items():
        twin[d] = darts[(v, u)]
        if (min(u, v), max(u, v)) in neg:
            sign[d] = -1
    for u, nbrs in rot.items():
        for i, v in enumerate(nbrs):
            nxt[darts[(u, v)]] = darts[(u, nbrs[(i + 1) % len(nbrs)])]
    return CombMap(twin, nxt, sign)


def _polar(pb, r, deg):
    a = math.radians(deg)
    return pb.point(r * math.cos(a), r * math.sin(a))


def k4():
    pb = PlaneBuilder()
    c = pb.point(0, 0)
    outer = [_polar(pb, 1, 90 + 120 * i) for i in range(3)]
    for i in range(3):
        pb.edge(outer[i], outer[(i + 1) % 3])
        pb.edge(c, outer[i])
    return pb.build()[0]


def prism(k):
    """Two concentric k-gons joined by spokes (k = 4 is the cube)."""
    pb = PlaneBuilder()
    inner = [_polar(pb, 1, 360 * i / k) for i in range(k)]
    outer = [_polar(pb, 2, 360 * i / k) for i in range(k)]
    for i in range(k):
        pb.edge(inner[i], inner[(i + 1) % k])
        pb.edge(outer[i], outer[(i + 1) % k])
        pb.edge(inner[i], outer[i])
    return pb.build()[0]


def cube():
    return prism(4)


def dodecahedron():
    pb = PlaneBuilder()
    a = [_polar(pb, 1, 90 + 72 * i) for i in range(5)]
    b = [_polar(pb, 2, 90 + 72 * i) for i in range(5)]
    c = [_polar(pb, 3, 126 + 72 * i) for i in range(5)]
    d = [_polar(pb, 4, 126 + 72 * i) for i in range(5)]
    for i in range(5):
        j = (i + 1) % 5
        pb.edge(a[i], a[j])
        pb.edge(a[i], b[i])
        pb.edge(b[i], c[i])
        pb.edge(b[j], c[i])
        pb.edge(c[i], d[i])
        pb.edge(d[i], d[j])
    return pb.build()[0]


def k33_torus():
    """K3,3 on the torus with three hexagonal faces."""
    rot = {u: [3, 4, 5] for u in range(3)}
    rot.update({v: [0, 1, 2] for v in range(3, 6)})
    return from_rotation(rot)


def petersen_projective():
    """Petersen graph in the projective plane with six pentagonal faces."""
    edges = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    adj = {v: [] for v in range(10)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    flip = (0, 0, 1, 0, 1, 1, 0, 0, 1, 0)
    rot = {u: (adj[u] if f == 0 else [adj[u][0], adj[u][2], adj[u][1]]) for u, f in enumerate(flip)}
    return from_rotation(rot, negative=[(0, 4), (5, 8), (6, 9)])


def hex_torus(n=2):
    """Honeycomb on an n x n torus: 2n^2 vertices, n^2 hexagons."""
    def b(x, y):
        return 2 * ((x % n) * n + (y % n))

    def w(x, y):
        return b(x, y) + 1

    rot = {}
    for x in range(n):
        for y in range(n):
            rot[b(x, y)] = [w(x + 1, y), w(x, y + 1), w(x, y)]
            rot[w(x, y)] = [b(x, y), b(x - 1, y), b(x, y - 1)]
    return from_rotation(rot)


def two_cut():
    """Two K4-minus-an-edge gadgets joined by two edges: cubic with a 2-edge cut."""
    pb = PlaneBuilder()
    left = [pb.point(-3, 0), pb.point(-2, 1), pb.point(-2, -1), pb.point(-1, 0)]
    right = [pb.point(1, 0), pb.point(2, 1), pb.point(2, -1), pb.point(3, 0)]
    for g in (left, right):
        p, q, r, s = g
        pb.edge(p, q)
        pb.edge(p, r)
        pb.edge(q, r)
        pb.edge(q, s)
        pb.edge(r, s)
    pb.edge(left[3], right[0])
    pb.edge(left[0], right[3], angle_u=math.radians(90), angle_v=math.radians(90))
    return pb.build()[0]


FIXTURES = {
    "k4": k4,
    "cube": cube,
    "dodecahedron": dodecahedron,
    "k33-torus": k33_torus,
    "petersen-projective": petersen_projective,
    "hex-torus": hex_torus,
    "two-cut": two_cut,
}
