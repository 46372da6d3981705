"""Triarcs: plane patches with three degree-2 corners, and their gluing algebra.

The outer face of a patch is traced with next∘twin.  A triarc stores, for each corner, the outer-walk dart
leaving it, in walk order ``(BL, TOP, BR)``.  With the base drawn at the
bottom the sides are

* ``a``: base, from BR back to BL,
* ``b``: right side, from TOP down to BR,
* ``c``: left side, from BL up to TOP,

and each side length counts the degree-2 vertices strictly between its corners.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .combmap import CombMap, MapError, PreconditionError, face_census
from .geometry import PlaneBuilder


class TriarcKind(str, Enum):
    T224 = "T224"
    T443 = "T443"
    HTILE = "HTILE"
    D888 = "D888"


@dataclass
class Triarc:
    map: CombMap
    corners: tuple
    nuclei: list = field(default_factory=list)
    kind: str = "triarc"

    def walk(self):
        return self.map.walk(self.corners[0])

    def segments(self):
        """Outer walk cut at the corners: walk-order segments BL->TOP, TOP->BR, BR->BL."""
        w = self.walk()
        pos = {d: i for i, d in enumerate(w)}
        idx = [pos[c] for c in self.corners]
        n = len(w)
        segs = []
        for s in range(3):
            i, j = idx[s], idx[(s + 1) % 3]
            length = (j - i) % n
            segs.append([w[(i + t) % n] for t in range(length)])
        return segs

    @property
    def sides(self):
        m = self.map
        c, b, a = (sum(1 for d in seg[1:] if m.degree(d) == 2) for seg in self.segments())
        return (a, b, c)

    def rotated(self, k=1):
        """Relabel corners so that sides ``(a, b, c)`` become ``(b, c, a)`` (k times)."""
        bl, top, br = self.corners
        for _ in range(k % 3):
            bl, top, br = br, bl, top
        return Triarc(self.map, (bl, top, br), self.nuclei, self.kind)

    def nucleus_faces(self):
        return [len(self.map.walk(d)) for d in self.nuclei]

    def interior_census(self):
        census = face_census(self.map)
        outer = len(self.walk())
        census[outer] -= 1
        if census[outer] == 0:
            del census[outer]
        return census


# -- validation -----------------------------------------------------------


@dataclass
class Diagnostics:
    ok: bool
    message: str
    sides: tuple = None

    def __bool__(self):
        return self.ok


def _boundary_checks(m, walk, corner_set, pattern_ok):
    vid, _ = m.vertex_ids()
    verts = [vid[d] for d in walk]
    if len(set(verts)) != len(verts):
        return "outer walk is not a simple cycle"
    on_boundary = set(verts)
    for d, t in enumerate(m.twin):
        if t >= 0 and vid[d] not in on_boundary and m.degree(d) != 3:
            return "interior vertex degree"
    return None


def validate_triarc(t):
    """Check the triarc invariants; returns :class:`Diagnostics` (truthy on success)."""
    if isinstance(t, Parallelogram):
        return validate_parallelogram(t)
    m = t.map
    try:
        m.check()
    except MapError as exc:
        return Diagnostics(False, f"structure: {exc}")
    from .combmap import euler_characteristic

    chi, orientable = euler_characteristic(m)
    if chi != 2 or not orientable:
        return Diagnostics(False, "patch is not a disc")
    if len(set(t.corners)) != 3 or any(m.twin[c] < 0 for c in t.corners):
        return Diagnostics(False, "corner darts")
    walk = t.walk()
    if any(c not in set(walk) for c in t.corners):
        return Diagnostics(False, "corner not on the outer walk")
    for c in t.corners:
        if m.degree(c) != 2:
            return Diagnostics(False, "corner degree")
    problem = _boundary_checks(m, walk, set(t.corners), None)
    if problem:
        return Diagnostics(False, problem)
    for seg in t.segments():
        degs = [m.degree(d) for d in seg[1:]]
        if not degs or len(degs) % 2 == 0:
            return Diagnostics(False, "side does not alternate 2 and 3")
        for i, k in enumerate(degs):
            if k != (2 if i % 2 == 0 else 3):
                return Diagnostics(False, "side does not alternate 2 and 3")
    census = t.interior_census()
    curvature = sum((6 - k) * v for k, v in census.items())
    if curvature != 0:
        return Diagnostics(False, f"not neutral: curvature {curvature}")
    for d in t.nuclei:
        if d in set(walk):
            return Diagnostics(False, "nucleus on the outer face")
    return Diagnostics(True, "ok", t.sides)


# -- low level patch surgery ------------------------------------------------


def _prv(nxt, x):
    y = x
    while nxt[y] != x:
        y = nxt[y]
    return y


def zip_paths(m, a_path, b_path):
    """Identify two boundary paths of the outer face(s) of ``m`` edge by edge.

    ``a_path`` runs along one outer walk from ``u_0`` to ``u_L``; ``b_path``
    runs along another outer walk from ``w_L`` back to ``w_0``.  Vertex
    ``u_i`` is merged with ``w_i`` and the darts of ``b_path`` disappear.
    """
    L = len(a_path)
    if L != len(b_path) or L == 0:
        raise PreconditionError("paths must have the same positive length")
    twin, nxt = m.twin, m.nxt
    beta = b_path[::-1]  # beta[i] runs from w_{i+1} to w_i
    for i in range(1, L):
        a_in = twin[a_path[i - 1]]
        a_out = a_path[i]
        b_back = beta[i - 1]
        b_fwd = twin[beta[i]]
        x1 = nxt[b_back]
        if x1 != b_fwd:
            xr = _prv(nxt, b_fwd)
            nxt[a_in] = x1
            nxt[xr] = a_out
    a0 = a_path[0]
    b0 = twin[beta[0]]
    z1 = nxt[b0]
    if z1 != b0:
        ys = _prv(nxt, a0)
        zq = _prv(nxt, b0)
        nxt[ys] = z1
        nxt[zq] = a0
    al = twin[a_path[-1]]
    bl = beta[-1]
    w1 = nxt[bl]
    if w1 != bl:
        z1 = nxt[al]
        wq = _prv(nxt, bl)
        nxt[al] = w1
        nxt[wq] = z1
    for b in beta:
        tb = twin[b]
        m.kill(b)
        m.kill(tb)


def _walk_from(m, d, length):
    out = [d]
    twin, nxt = m.twin, m.nxt
    for _ in range(length - 1):
        d = nxt[twin[d]]
        out.append(d)
    return out


def _walk_before(m, d, length):
    """The ``length`` outer-walk darts ending just before ``d``."""
    w = m.walk(d)
    return w[len(w) - length:]


def attach_face(m, walk, i, j, s):
    """Glue a new ``s``-gon outside the boundary path ``walk[i] .. walk[i+j-1]``.

    ``walk`` lists the outer-walk darts; the new outer walk is returned,
    starting at the first dart of the new path.
    """
    n = len(walk)
    twin, nxt = m.twin, m.nxt
    w_i = walk[i % n]
    w_end = walk[(i + j) % n]
    in_u = twin[walk[(i - 1) % n]]
    in_v = twin[walk[(i + j - 1) % n]]
    new = []
    prev_end = None
    for _ in range(s - j):
        d, e = m.add_edge()
        if prev_end is not None:
            nxt[prev_end], nxt[d] = d, prev_end
        new.append(d)
        prev_end = e
    first, last = new[0], prev_end
    m.insert_after(in_u, first)
    m.insert_after(in_v, last)
    rest = [walk[(i + j + t) % n] for t in range(n - j)]
    return new + rest


# -- geometric builders ---------------------------------------------------


def _ring_patch(sizes, nucleus=True):
    """A k-gon surrounded by ring faces of the given sizes (each 5 or 7, or any >= 4).

    Ring face ``i`` holds nucleus edge ``i -> i+1``.  Returns the builder, the
    map, the nucleus dart, and for each ring face the list of points on its
    outer path between the two spoke ends.
    """
    k = len(sizes)
    pb = PlaneBuilder()
    nuc = [pb.point(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)]
    for i in range(k):
        pb.edge(nuc[i], nuc[(i + 1) % k])
    spoke = []
    for i in range(k):
        ang = 2 * math.pi * i / k
        spoke.append(pb.point(2 * math.cos(ang), 2 * math.sin(ang)))
        pb.edge(nuc[i], spoke[i])
    paths = []
    for i, size in enumerate(sizes):
        inner = size - 4
        a0 = 2 * math.pi * i / k
        a1 = 2 * math.pi * (i + 1) / k
        pts = []
        for s in range(1, inner + 1):
            ang = a0 + (a1 - a0) * s / (inner + 1)
            pts.append(pb.point(2 * math.cos(ang), 2 * math.sin(ang)))
        chain = [spoke[i]] + pts + [spoke[(i + 1) % k]]
        for u, v in zip(chain, chain[1:]):
            pb.edge(u, v)
        paths.append(pts)
    m, dart_of = pb.build()
    d = dart_of[(nuc[0], nuc[1])]
    if len(m.walk(d)) != k:
        d = m.twin[d]
    return pb, m, d, paths


def _corner_dart(pb, m, walk, point):
    for d in walk:
        if pb.tail[d] == point:
            return d
    raise ValueError("corner not on the outer walk")


def _ring_triarc(k, t, kind):
    """Nucleus k-gon, heptagons separated by t = (t1, t2, t3) pentagons."""
    t1, t2, t3 = t
    sizes = [7] + [5] * t1 + [7] + [5] * t2 + [7] + [5] * t3
    assert len(sizes) == k
    pb, m, nuc, paths = _ring_patch(sizes)
    heps = [0, t1 + 1, t1 + t2 + 2]
    outer = pb.outer_dart(m)
    walk = m.walk(outer)
    mid = [paths[h][1] for h in heps]
    # the walk meets H0, H1, H2 in this order; sides c = t1+2, b = t2+2, a = t3+2
    bl = _corner_dart(pb, m, walk, mid[0])
    top = _corner_dart(pb, m, walk, mid[1])
    br = _corner_dart(pb, m, walk, mid[2])
    return Triarc(m, (bl, top, br), [nuc], kind)


def _basic_split(k):
    """Pentagon counts between the heptagons: equal even legs close to the base."""
    best = None
    for t1 in range(0, k - 2, 2):
        t3 = k - 3 - 2 * t1
        if t3 < 0:
            break
        gap = abs((t3 + 2) - (t1 + 2))
        key = (gap, t1)
        if best is None or key < best[0]:
            best = (key, (t1, t1, t3))
    return best[1]


def basic_triarc(k):
    """Nucleus k-gon in a ring of three heptagons and k-3 pentagons.

    The result is isosceles: sides ``(a, l, l)`` with ``l`` even.
    """
    if k < 3:
        raise PreconditionError("nucleus size must be at least 3")
    return _ring_triarc(k, _basic_split(k), f"basic{k}")


def _t224():
    t = basic_triarc(5)
    t.kind = TriarcKind.T224.value
    t.nuclei = []
    return t


# boundary growth recipe of a (4,4,3)-triarc: start with a pentagon, then
# attach faces (position, path length, size) along the outer walk
_T443_MOVES = [(0, 1, 5), (1, 1, 5), (3, 2, 7), (3, 1, 5), (2, 1, 7), (21, 2, 5), (21, 3, 7), (17, 3, 7), (18, 5, 7)]


def _t443():
    m = CombMap()
    first = []
    prev_end = None
    for _ in range(5):
        d, e = m.add_edge()
        if prev_end is not None:
            m.nxt[prev_end], m.nxt[d] = d, prev_end
        first.append(d)
        prev_end = e
    m.nxt[prev_end], m.nxt[first[0]] = first[0], prev_end
    # the cycle's two faces: pick the walk of the twins as the outer one
    walk = m.walk(m.twin[first[0]])
    for i, j, s in _T443_MOVES:
        walk = attach_face(m, walk, i, j, s)
    degs = [m.degree(d) for d in walk]
    n = len(walk)
    corners = [walk[i] for i in range(n) if degs[i - 1] == 2 and degs[i] == 2 and degs[(i + 1) % n] == 2]
    t = Triarc(m, tuple(corners), [], TriarcKind.T443.value)
    # orient so that sides read (4, 4, 3)
    for r in range(3):
        cand = t.rotated(r)
        if cand.sides == (4, 4, 3):
            return cand
    raise AssertionError("T443 recipe does not give a (4,4,3)-triarc")


# -- parallelograms -------------------------------------------------------


@dataclass
class Parallelogram:
    """A rhombus of hexagons with every 2x2 block turned into an H-tile."""

    map: CombMap
    apex: int  # outer-walk dart leaving the bottom acute corner
    top: int  # outer-walk dart leaving the top acute corner
    nu: int
    nv: int
    kind: str = "parallelogram"

    def walk(self):
        return self.map.walk(self.apex)

    def interior_census(self):
        census = face_census(self.map)
        census[len(self.walk())] -= 1
        return {k: v for k, v in census.items() if v}

    @property
    def sides(self):
        """Side lengths in hexagon widths, starting after the first obtuse corner."""
        return (self.nu, self.nv, self.nu, self.nv)

    def boundary_pattern(self):
        """Expected outer degrees from the apex: acute, side, obtuse, side, ... ."""
        up = [2, 3] * (self.nv - 1) + [2]
        across = [3, 2] * (self.nu - 1)
        return ([2] + up + [2] + across) * 2


def _rhombus(nu, nv, tiles=True):
    """Hexagon rhombus nu x nv (U up-left from the apex, V up-right)."""
    pb = PlaneBuilder()
    r3 = math.sqrt(3)
    U = (r3 * math.cos(2 * math.pi / 3), r3 * math.sin(2 * math.pi / 3))
    V = (r3 * math.cos(math.pi / 3), r3 * math.sin(math.pi / 3))
    corner = {}
    for i in range(nu):
        for j in range(nv):
            cx = i * U[0] + j * V[0]
            cy = i * U[1] + j * V[1]
            pts = []
            for s in range(6):
                ang = math.radians(30 + 60 * s)
                pts.append(pb.point(cx + math.cos(ang), cy + math.sin(ang)))
            corner[(i, j)] = pts
            for s in range(6):
                pb.edge(pts[s], pts[(s + 1) % 6])
    m, dart_of = pb.build()
    apex_pt = corner[(0, 0)][4]  # angle 270
    top_pt = corner[(nu - 1, nv - 1)][1]  # angle 90
    outer = pb.outer_dart(m)
    walk = m.walk(outer)
    apex = _corner_dart(pb, m, walk, apex_pt)
    top = _corner_dart(pb, m, walk, top_pt)
    flips = []
    if tiles:
        for p in range(0, nu - 1, 2):
            for q in range(0, nv - 1, 2):
                # hexes (p+1, q) and (p, q+1) share a vertical edge inside the block
                left = corner[(p + 1, q)]
                e = dart_of[(left[5], left[0])]  # corners at 330 and 30 degrees
                flips.append(e)
    return m, apex, top, flips


def parallelogram(m_, l_):
    """Rhombus of ``2m x 2l`` hexagons turned into ``m*l`` H-tiles."""
    if m_ < 1 or l_ < 1:
        raise PreconditionError("parallelogram dimensions must be positive")
    m, apex, top, flips = _rhombus(2 * m_, 2 * l_)
    for e in flips:
        _flip(m, e)
    return Parallelogram(m, apex, top, 2 * m_, 2 * l_)


def _flip(m, d):
    from .combmap import _flip_in_place

    _flip_in_place(m, d)


def validate_parallelogram(p):
    """Four sides with acute corners [2,2,2] and obtuse corners [2,2], alternating in between."""
    m = p.map
    try:
        m.check()
    except MapError as exc:
        return Diagnostics(False, f"structure: {exc}")
    from .combmap import euler_characteristic

    chi, orientable = euler_characteristic(m)
    if chi != 2 or not orientable:
        return Diagnostics(False, "patch is not a disc")
    walk = p.walk()
    problem = _boundary_checks(m, walk, set(), None)
    if problem:
        return Diagnostics(False, problem)
    degs = [m.degree(d) for d in walk]
    n = len(walk)
    start = walk.index(p.apex)
    got = [degs[(start + i) % n] for i in range(n)]
    if got != p.boundary_pattern():
        return Diagnostics(False, "boundary degree pattern")
    census = face_census(m)
    census[n] -= 1
    inner = {k: v for k, v in census.items() if v}
    if sum((6 - k) * v for k, v in inner.items()) != 0:
        return Diagnostics(False, "not neutral")
    return Diagnostics(True, "ok", p.sides)


# -- gluing ----------------------------------------------------------------


def glue_triarcs(t1, t2):
    """Glue ``t1`` (left) and ``t2`` (right) through an H-tile parallelogram.

    Needs ``b1`` and ``c2`` even; returns an ``(a1+a2, b1+b2, c1+c2)``-triarc.
    ``t1`` is consumed (its map is extended in place).
    """
    a1, b1, c1 = t1.sides
    a2, b2, c2 = t2.sides
    if b1 % 2 or c2 % 2:
        raise PreconditionError(f"gluing needs b1 and c2 even, got b1={b1}, c2={c2}")
    m = t1.map
    bl1, top1, br1 = t1.corners
    off2 = m.append(t2.map)
    bl2, top2, br2 = (c + off2 for c in t2.corners)
    pm, apex, ptop, flips = _rhombus(c2, b1)
    offp = m.append(pm)
    apex += offp
    ptop += offp
    # 1. the parallelogram's lower-left side onto t1's right side above its last port
    w1 = _walk_from(m, top1, 2 * b1)
    a_path = w1[: 2 * b1 - 1]
    last = w1[2 * b1 - 1]  # port -> BR1
    b_path = _walk_from(m, apex, 2 * b1 - 1)
    zip_paths(m, a_path, b_path)
    # 2. t2's left side onto the parallelogram's lower-right side plus the last edge of t1
    a_path = _walk_before(m, last, 2 * c2 - 1) + [last]
    b_path = _walk_from(m, bl2, 2 * c2)
    zip_paths(m, a_path, b_path)
    for e in flips:
        _flip(m, e + offp)
    nuclei = list(t1.nuclei) + [d + off2 for d in t2.nuclei]
    return Triarc(m, (bl1, ptop, br2), nuclei, "glued")


def _copy(t):
    return Triarc(t.map.copy(), t.corners, list(t.nuclei), t.kind)


_FIXED_CACHE = {}


def _build_fixed(kind):
    if kind is TriarcKind.T224:
        t = basic_triarc(5).rotated(1)
        return Triarc(t.map, t.corners, [], kind.value)
    if kind is TriarcKind.T443:
        return _t443()
    if kind is TriarcKind.HTILE:
        p = parallelogram(1, 1)
        p.kind = kind.value
        return p
    t = glue_triarcs(_block("T224", (2, 2, 4)), _block("T224", (2, 4, 2)))
    t = glue_triarcs(t, _block("T224", (4, 2, 2)))
    t.kind = kind.value
    return t


def fixed_triarc(kind):
    """A fresh copy of one of the fixed building blocks."""
    kind = TriarcKind(kind)
    if kind not in _FIXED_CACHE:
        _FIXED_CACHE[kind] = _build_fixed(kind)
    src = _FIXED_CACHE[kind]
    if isinstance(src, Parallelogram):
        return Parallelogram(src.map.copy(), src.apex, src.top, src.nu, src.nv, src.kind)
    return _copy(src)


def _block(kind, sides):
    """Fixed block rotated so that its sides read ``sides``."""
    t = fixed_triarc(kind)
    for r in range(3):
        if t.rotated(r).sides == sides:
            return t.rotated(r)
    raise ValueError(f"{kind} has no rotation with sides {sides}")


def _glue_on_side(t, side, block):
    """Glue ``block`` onto side ``side`` (0=a, 1=b, 2=c) of ``t``; corner roles are kept."""
    r = (side - 1) % 3  # rotate so that the side becomes b
    g = glue_triarcs(t.rotated(r), block)
    g.kind = t.kind
    return g.rotated(-r)


def _isosceles_rotation(t):
    for r in range(3):
        a, b, c = t.rotated(r).sides
        if b == c and b % 2 == 0:
            return r
    return None


def equilateralize(t):
    """Grow an isosceles triarc with even legs into an equilateral one with even sides."""
    r = _isosceles_rotation(t)
    if r is None:
        raise PreconditionError(f"expected an isosceles triarc with even legs, got {t.sides}")
    t = t.rotated(r)
    kind = t.kind
    while True:
        a, b, c = t.sides
        if a == b:
            break
        if a > b:
            t = glue_triarcs(t, _block("T443", (3, 4, 4)))
        else:
            t = glue_triarcs(t, _block("T224", (4, 2, 2)))
    t.kind = kind
    return t


def _plus_ten(t):
    """(s,s,s) -> (s+10,s+10,s+10) with one T224 and two T443 blocks."""
    t = glue_triarcs(t, _block("T224", (4, 2, 2)))
    t = glue_triarcs(t, _block("T443", (3, 4, 4)))
    return glue_triarcs(t, _block("T443", (3, 4, 4)))


def congruence_steps(s):
    """Number of +10 steps taking an even side ``s`` to a multiple of 8 that is 2 mod 3."""
    if s % 2:
        raise PreconditionError("side must be even")
    for k in range(12):
        if (s + 10 * k) % 24 == 8:
            return k
    raise AssertionError("unreachable for even s")


def adjust_congruence(t, extra_steps=0):
    """Equilateral even triarc -> side n with n = 0 (mod 8) and n = 2 (mod 3).

    ``extra_steps`` further +10 steps are added; pass a multiple of 12 to keep
    both congruences.
    """
    a, b, c = t.sides
    if not a == b == c or a % 2:
        raise PreconditionError(f"expected an equilateral triarc with even sides, got {t.sides}")
    kind = t.kind
    for _ in range(congruence_steps(a) + extra_steps):
        t = _plus_ten(t)
    t.kind = kind
    return t


def fill_triarc(n):
    """Equilateral (n,n,n)-triarc glued from n/8 copies of D888."""
    if n <= 0 or n % 8:
        raise PreconditionError(f"side {n} is not a positive multiple of 8")
    t = fixed_triarc("D888")
    for _ in range(n // 8 - 1):
        t = glue_triarcs(t, fixed_triarc("D888"))
    t.kind = "fill"
    return t


# -- hexagon nuclei -----------------------------------------------------------


def _peripheral(N):
    m = (N + 1) // 2
    t = _block("T224", (4, 2, 2))
    for _ in range(m - 1):
        t = glue_triarcs(t, _block("T224", (4, 2, 2)))
    return t


def hexagon_triarc(N):
    """Equilateral triarc around a 6N-gon whose heptagons are 2N apart.

    The ring triarc has odd sides 2N+1; three (2N+2, N+1, N+1) peripheral
    triarcs are zipped onto it, shifted by one vertex, so that together they
    form a triarc with sides 2N+2.
    """
    if N < 1 or N % 2 == 0:
        raise PreconditionError("N must be a positive odd integer")
    core = _ring_triarc(6 * N, (2 * N - 1,) * 3, f"hexagon{N}")
    m = core.map
    segs = core.segments()
    bases, tops = [], []
    for _ in range(3):
        p = _peripheral(N)
        off = m.append(p.map)
        _, top, br = (c + off for c in p.corners)
        bases.append(_walk_from(m, br, 4 * N + 4))
        tops.append(top)
    zip_paths(m, segs[0], bases[0][1:-1])
    zip_paths(m, [bases[0][0]] + segs[1], bases[1][1:])
    zip_paths(m, [bases[1][0]] + segs[2] + [bases[0][-1]], bases[2])
    return Triarc(m, tuple(tops), core.nuclei, core.kind)


# -- nuclei depth -----------------------------------------------------------


def side_distances(t, nucleus=None):
    """Graph distance from the nucleus face's vertices to each side (a, b, c)."""
    m = t.map
    d0 = t.nuclei[0] if nucleus is None else nucleus
    vid, nv = m.vertex_ids()
    dist = [-1] * nv
    q = deque()
    for d in m.walk(d0):
        if dist[vid[d]] < 0:
            dist[vid[d]] = 0
            q.append(vid[d])
    adj = [[] for _ in range(nv)]
    for d, tw in enumerate(m.twin):
        if tw >= 0:
            adj[vid[d]].append(vid[tw])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    c, b, a = (min(dist[vid[x]] for x in seg + [t.map.twin[seg[-1]]]) for seg in t.segments())
    return (a, b, c)


def _make_even(t):
    """Glue one T443 so that all sides become even (at most one side may be odd)."""
    odd = [i for i, s in enumerate(t.sides) if s % 2]
    if not odd:
        return t
    if len(odd) > 1:
        raise PreconditionError(f"cannot repair two odd sides {t.sides}")
    # odd side as a; T443 read as (3,4,4) then fixes its parity
    r = odd[0]
    g = glue_triarcs(t.rotated(r), _block("T443", (3, 4, 4)))
    g.kind = t.kind
    return g.rotated(-r)


def deepen_nucleus(t, z):
    """Surround the nucleus until it is at distance >= z from the boundary and all sides are >= 3z.

    The result is equilateral with even sides when ``z > 0``.
    """
    if z <= 0:
        return t
    t = _make_even(t)
    while True:
        dist = side_distances(t)
        if min(dist) >= z and min(t.sides) >= 3 * z:
            break
        side = min(range(3), key=lambda i: (dist[i], t.sides[i]))
        t = _glue_on_side(t, side, _block("T224", (4, 2, 2)))
    # all sides even: balance with T224 blocks, adding 4 to the shortest side
    while len(set(t.sides)) > 1:
        low = min(range(3), key=lambda i: t.sides[i])
        kind = t.kind
        t = glue_triarcs(t, _block("T224", tuple(4 if i == low else 2 for i in range(3))))
        t.kind = kind
    return t


# -- text format -----------------------------------------------------------


def serialize_triarc(t):
    from .combmap import serialize

    m = t.map.copy()
    remap = m.compact()
    text = serialize(t.map)
    a, b, c = t.sides
    fields = [remap[d] for d in t.corners] + [a, b, c]
    if t.nuclei:
        fields.append(remap[t.nuclei[0]])
    return text + "TRIARC " + " ".join(str(x) for x in fields) + "\n"


def parse_triarc(text):
    from .combmap import ParseError, parse

    m, extra = parse(text, allow_trailer=True)
    if len(extra) != 1:
        raise ParseError(len(text.splitlines()), "expected one TRIARC trailer line")
    parts = extra[0].split()
    line = len(text.splitlines())
    if parts[0] != "TRIARC" or len(parts) not in (7, 8):
        raise ParseError(line, "expected 'TRIARC c0 c1 c2 a b c [nucleus]'")
    try:
        vals = [int(x) for x in parts[1:]]
    except ValueError:
        raise ParseError(line, "non-integer field") from None
    n = len(m.twin)
    for d in vals[:3] + vals[6:]:
        if not 0 <= d < n:
            raise ParseError(line, f"dart id {d} out of range")
    t = Triarc(m, tuple(vals[:3]), vals[6:7])
    if t.sides != tuple(vals[3:6]):
        raise ParseError(line, f"recorded sides {tuple(vals[3:6])} differ from measured {t.sides}")
    return t
