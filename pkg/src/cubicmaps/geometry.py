"""Build plane maps from straight-line drawings (rotation = angular order)."""

from __future__ import annotations

import math

from .combmap import CombMap


class PlaneBuilder:
    def __init__(self, digits=6):
        self.digits = digits
        self.coords = []
        self._index = {}
        self.edges = []  # (u, v, sign, angle_u, angle_v)
        self._edge_set = set()

    def point(self, x, y):
        key = (round(x, self.digits) + 0.0, round(y, self.digits) + 0.0)
        p = self._index.get(key)
        if p is None:
            p = len(self.coords)
            self._index[key] = p
            self.coords.append((x, y))
        return p

    def edge(self, u, v, sign=1, angle_u=None, angle_v=None):
        """Add edge ``u-v`` once; optional angles override the drawn direction."""
        key = (min(u, v), max(u, v))
        if angle_u is None and angle_v is None:
            if key in self._edge_set:
                return
            self._edge_set.add(key)
        self.edges.append((u, v, sign, angle_u, angle_v))

    def _angle(self, a, b):
        (x0, y0), (x1, y1) = self.coords[a], self.coords[b]
        return math.atan2(y1 - y0, x1 - x0)

    def build(self):
        """Returns ``(map, dart_of)`` with ``dart_of[(u, v)]`` the dart from u to v."""
        ne = len(self.edges)
        twin = [0] * (2 * ne)
        sign = [1] * (2 * ne)
        around = [[] for _ in self.coords]
        dart_of = {}
        for i, (u, v, sg, au, av) in enumerate(self.edges):
            d, e = 2 * i, 2 * i + 1
            twin[d], twin[e] = e, d
            sign[d] = sign[e] = sg
            around[u].append((self._angle(u, v) if au is None else au, d))
            around[v].append((self._angle(v, u) if av is None else av, e))
            dart_of[(u, v)] = d
            dart_of[(v, u)] = e
        nxt = [0] * (2 * ne)
        for lst in around:
            lst.sort()
            for j, (_, d) in enumerate(lst):
                nxt[d] = lst[(j + 1) % len(lst)][1]
        self.tail = [0] * (2 * ne)
        for i, (u, v, *_rest) in enumerate(self.edges):
            self.tail[2 * i], self.tail[2 * i + 1] = u, v
        return CombMap(twin, nxt, sign), dart_of

    def signed_area(self, m, walk):
        pts = [self.coords[self.tail[d]] for d in walk]
        s = 0.0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
            s += x0 * y1 - x1 * y0
        return s / 2

    def outer_dart(self, m):
        """A dart on the unbounded face, the only walk with positive signed area."""
        seen = set()
        for d in range(len(m.twin)):
            if d in seen:
                continue
            w = m.walk(d)
            seen.update(w)
            if self.signed_area(m, w) > 0:
                return d
        raise ValueError("no unbounded face found")
