"""Combinatorial maps stored as darts with a twin involution, a rotation and edge signs.

A dart ``d`` leaves its tail vertex.  ``twin[d]`` is the opposite dart of the
same edge, ``nxt[d]`` the counterclockwise successor of ``d`` around its tail
and ``sign[d]`` the signature of the edge (``+1`` or ``-1``).  Deleted darts
keep their slot with ``twin[d] == -1`` until :meth:`CombMap.compact` is run.

Faces are traced with states ``(dart, eps)``: the walk crosses ``dart`` and
turns with ``next`` when ``eps`` is positive and with ``next^-1`` otherwise,
flipping ``eps`` whenever a negative edge is crossed.  Every face is seen as
two state orbits, one per direction.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass


class MapError(ValueError):
    """Structural inconsistency in a map."""


class PreconditionError(ValueError):
    """An operation was called outside its admissible domain."""


class ParseError(MapError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CombMap:
    __slots__ = ("twin", "nxt", "sign")

    def __init__(self, twin=None, nxt=None, sign=None):
        self.twin = list(twin) if twin is not None else []
        self.nxt = list(nxt) if nxt is not None else []
        self.sign = list(sign) if sign is not None else [1] * len(self.twin)

    # -- basic bookkeeping -------------------------------------------------
    def __len__(self):
        return len(self.twin)

    def __repr__(self):
        return f"CombMap(darts={self.num_darts()})"

    def __eq__(self, other):
        if not isinstance(other, CombMap):
            return NotImplemented
        return (self.twin, self.nxt, self.sign) == (other.twin, other.nxt, other.sign)

    def num_darts(self):
        return sum(1 for t in self.twin if t >= 0)

    def num_edges(self):
        return self.num_darts() // 2

    def darts(self):
        return [d for d, t in enumerate(self.twin) if t >= 0]

    def alive(self, d):
        return self.twin[d] >= 0

    def copy(self):
        return CombMap(self.twin, self.nxt, self.sign)

    def add_edge(self, sign=1):
        """Append an isolated edge; each new dart is alone in its rotation."""
        d = len(self.twin)
        self.twin += [d + 1, d]
        self.nxt += [d, d + 1]
        self.sign += [sign, sign]
        return d, d + 1

    def append(self, other):
        """Disjoint union in place; returns the offset added to ``other``'s darts."""
        off = len(self.twin)
        self.twin.extend(t + off if t >= 0 else -1 for t in other.twin)
        self.nxt.extend(n + off if n >= 0 else -1 for n in other.nxt)
        self.sign.extend(other.sign)
        return off

    def kill(self, d):
        self.twin[d] = -1
        self.nxt[d] = -1

    def prev_array(self):
        prev = [-1] * len(self.nxt)
        for d, n in enumerate(self.nxt):
            if n >= 0:
                prev[n] = d
        return prev

    def insert_after(self, d, new):
        """Put ``new`` right after ``d`` in the rotation around the tail of ``d``."""
        self.nxt[new] = self.nxt[d]
        self.nxt[d] = new

    def compact(self):
        """Renumber live darts densely; returns the old-to-new id table (-1 for dead)."""
        remap = [-1] * len(self.twin)
        k = 0
        for d, t in enumerate(self.twin):
            if t >= 0:
                remap[d] = k
                k += 1
        live = [d for d, t in enumerate(self.twin) if t >= 0]
        self.twin = [remap[self.twin[d]] for d in live]
        self.nxt = [remap[self.nxt[d]] for d in live]
        self.sign = [self.sign[d] for d in live]
        return remap

    def check(self):
        """Raise :class:`MapError` unless the map invariants hold."""
        n = len(self.twin)
        if len(self.nxt) != n or len(self.sign) != n:
            raise MapError("array lengths differ")
        seen = [False] * n
        for d in range(n):
            t = self.twin[d]
            if t < 0:
                continue
            if t == d:
                raise MapError(f"fixed point in twin at dart {d}")
            if t >= n or self.twin[t] != d:
                raise MapError(f"twin is not an involution at dart {d}")
            if self.sign[d] not in (1, -1):
                raise MapError(f"bad sign at dart {d}")
            if self.sign[t] != self.sign[d]:
                raise MapError(f"edge signature mismatch at dart {d}")
            e = self.nxt[d]
            if e < 0 or e >= n or self.twin[e] < 0:
                raise MapError(f"next leaves the live darts at dart {d}")
            if seen[e]:
                raise MapError(f"next is not a bijection at dart {e}")
            seen[e] = True
        return True

    # -- vertices ----------------------------------------------------------
    def vertex_ids(self):
        """Vertex index per dart (-1 for dead darts) and the vertex count."""
        vid = [-1] * len(self.nxt)
        nv = 0
        nxt = self.nxt
        for d, t in enumerate(self.twin):
            if t < 0 or vid[d] >= 0:
                continue
            x = d
            while vid[x] < 0:
                vid[x] = nv
                x = nxt[x]
            nv += 1
        return vid, nv

    def vertex_orbits(self):
        vid, nv = self.vertex_ids()
        orbits = []
        done = [False] * nv
        for d, v in enumerate(vid):
            if v < 0 or done[v]:
                continue
            done[v] = True
            orb = [d]
            x = self.nxt[d]
            while x != d:
                orb.append(x)
                x = self.nxt[x]
            orbits.append(tuple(orb))
        return orbits

    def degree(self, d):
        k, x = 1, self.nxt[d]
        while x != d:
            k += 1
            x = self.nxt[x]
        return k

    def walk(self, d):
        """Face walk through ``d`` following next∘twin (an orientable region is assumed)."""
        out = [d]
        twin, nxt = self.twin, self.nxt
        x = nxt[twin[d]]
        while x != d:
            out.append(x)
            x = nxt[twin[x]]
        return out


# -- faces -----------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    """One traversal of a face: the crossed darts and the turning direction at each."""

    darts: tuple
    dirs: tuple

    @property
    def size(self):
        return len(self.darts)

    def __len__(self):
        return len(self.darts)


def _code(d, eps):
    return 2 * d + (eps < 0)


def face_state_orbits(m, prev=None):
    """All state orbits (each face appears twice, once per direction).

    Returns ``(orbit_of, orbits)`` where ``orbit_of`` maps a state code
    ``2*d + (eps < 0)`` to its orbit index.
    """
    if prev is None:
        prev = m.prev_array()
    twin, nxt, sign = m.twin, m.nxt, m.sign
    orbit_of = [-1] * (2 * len(twin))
    orbits = []
    for d0, t0 in enumerate(twin):
        if t0 < 0:
            continue
        for e0 in (1, -1):
            c0 = _code(d0, e0)
            if orbit_of[c0] >= 0:
                continue
            idx = len(orbits)
            orb = []
            d, eps = d0, e0
            while True:
                c = 2 * d + (eps < 0)
                if orbit_of[c] >= 0:
                    break
                orbit_of[c] = idx
                orb.append((d, eps))
                t = twin[d]
                eps = eps * sign[d]
                d = nxt[t] if eps > 0 else prev[t]
            orbits.append(orb)
    return orbit_of, orbits


def _reverse_state(m, d, eps):
    return m.twin[d], -eps * m.sign[d]


def face_index(m, prev=None):
    """Index into :func:`faces` of every face state code, plus the state orbits."""
    orbit_of, orbits = face_state_orbits(m, prev)
    index = [-1] * len(orbits)
    pairs = []
    for i, orb in enumerate(orbits):
        if index[i] >= 0:
            continue
        d, eps = orb[0]
        j = orbit_of[_code(*_reverse_state(m, d, eps))]
        index[i] = index[j] = len(pairs)
        pairs.append((i, j))
    return [index[o] if o >= 0 else -1 for o in orbit_of], orbits, pairs


def faces(m, prev=None):
    """One :class:`Face` per face of ``m``.

    Of the two traversals of a face the one with more positive turns is
    kept, so on an all-positive map every face is a next∘twin walk.
    """
    _, orbits, pairs = face_index(m, prev)
    out = []
    for i, j in pairs:
        orb = pick = orbits[i]
        if j != i:
            other = orbits[j]
            pos_i = sum(1 for _, e in orb if e > 0)
            pos_j = sum(1 for _, e in other if e > 0)
            if pos_j > pos_i or (pos_j == pos_i and min(_code(*s) for s in other) < min(_code(*s) for s in orb)):
                pick = other
        out.append(Face(tuple(s[0] for s in pick), tuple(s[1] for s in pick)))
    return out


def trace_orbits(m):
    """Vertex orbits and face walks of ``m``; returns ``(vertices, faces)``."""
    return m.vertex_orbits(), faces(m)


def count_faces(m, prev=None):
    _, orbits = face_state_orbits(m, prev)
    return len(orbits) // 2


def is_orientable(m):
    vid, nv = m.vertex_ids()
    orient = [0] * nv
    adj = [[] for _ in range(nv)]
    for d, t in enumerate(m.twin):
        if t >= 0:
            adj[vid[d]].append((vid[t], m.sign[d]))
    for s in range(nv):
        if orient[s]:
            continue
        orient[s] = 1
        stack = [s]
        while stack:
            u = stack.pop()
            for v, sg in adj[u]:
                want = orient[u] * sg
                if orient[v] == 0:
                    orient[v] = want
                    stack.append(v)
                elif orient[v] != want:
                    return False
    return True


def euler_characteristic(m):
    """``(chi, orientable)`` with chi = V - E + F."""
    _, nv = m.vertex_ids()
    chi = nv - m.num_edges() + count_faces(m)
    return chi, is_orientable(m)


def face_census(m):
    """Face-size counts as a plain ``{size: count}`` dict."""
    _, orbits = face_state_orbits(m)
    c = Counter(len(o) for o in orbits)
    return {k: v // 2 for k, v in sorted(c.items())}


# -- mutations -------------------------------------------------------------


def _as_dart(f):
    if isinstance(f, Face):
        if any(e < 0 for e in f.dirs):
            raise PreconditionError("face traversal has reversed turns; normalize first")
        return f.darts[0]
    return int(f)


def _flip_in_place(m, d):
    t = m.twin[d]
    nxt = m.nxt
    a = nxt[d]
    b = nxt[a]
    c = nxt[t]
    dd = nxt[c]
    nxt[d], nxt[dd], nxt[a] = dd, a, d
    nxt[t], nxt[b], nxt[c] = b, c, t


def flip_faces(m, d, prev=None):
    """The four face orbits around the edge of ``d``: (incident, incident, opposite, opposite)."""
    if prev is None:
        prev = m.prev_array()
    orbit_of, _ = face_state_orbits(m, prev)
    a = m.nxt[d]
    b = m.nxt[a]
    dd = m.nxt[m.nxt[m.twin[d]]]
    ids = []
    # corners (b, d) and (d, a) sit on the two sides of the edge; (a, b) and
    # the matching corner at the other end face away from it
    for x in (d, a, b, dd):
        i = orbit_of[_code(x, 1)]
        y, e = _reverse_state(m, x, 1)
        j = orbit_of[_code(y, e)]
        ids.append(min(i, j))
    return ids


def check_flippable(m, d):
    t = m.twin[d]
    if t < 0:
        raise PreconditionError("dead dart")
    if m.sign[d] != 1:
        raise PreconditionError("edge has negative signature")
    if m.degree(d) != 3 or m.degree(t) != 3:
        raise PreconditionError("both endpoints must have degree 3")
    if len(set(flip_faces(m, d))) != 4:
        raise PreconditionError("degenerate neighbourhood: faces around the edge repeat")


def flip_edge(m, e):
    """Contract the edge of dart ``e`` and split the vertex the other way (copy)."""
    check_flippable(m, e)
    out = m.copy()
    _flip_in_place(out, e)
    return out


@dataclass
class BoundedMap:
    map: CombMap
    boundary: list


def excise_face(m, f):
    """Mark face ``f`` (a dart on a next∘twin walk or a :class:`Face`) as an open boundary."""
    d = _as_dart(f)
    walk = m.walk(d)
    vid, _ = m.vertex_ids()
    if len({vid[x] for x in walk}) != len(walk):
        raise PreconditionError("face boundary repeats a vertex")
    return BoundedMap(m.copy(), walk)


def _positive_simple_face(m, d, vid):
    walk = m.walk(d)
    if any(m.sign[x] != 1 for x in walk):
        raise PreconditionError("face boundary has negative edges")
    if len({vid[x] for x in walk}) != len(walk):
        raise PreconditionError("face boundary repeats a vertex")
    return walk


def half_twist_in_place(m, da, db, offset=0):
    """Glue face of ``da`` to face of ``db`` with a half twist, in place.

    Vertex ``a_i`` of the first face lands on the midpoint of an edge of the
    second face; the reflection ``i -> c - i`` makes the identification
    orientation reversing.  ``c`` is fixed by matching the smallest darts of
    both boundaries and then shifted by ``offset``.  Returns the merged
    cycle as a list of darts, one per cycle edge.
    """
    vid, _ = m.vertex_ids()
    A = _positive_simple_face(m, da, vid)
    B = _positive_simple_face(m, db, vid)
    k = len(A)
    if len(B) != k:
        raise PreconditionError(f"faces have different sizes {k} and {len(B)}")
    if {vid[x] for x in A} & {vid[x] for x in B}:
        raise PreconditionError("faces share a vertex")
    ia = A.index(min(A))
    jb = B.index(min(B))
    c = (jb + ia + offset) % k
    twin = m.twin
    Dp = [twin[x] for x in A]  # at a_{i+1}, pointing back to a_i
    Ep = [twin[B[(j - 1) % k]] for j in range(k)]  # at b_j, pointing back to b_{j-1}
    cycle = []
    for i in range(k):
        j = (c - i) % k
        d, e = A[i], B[j]
        twin[d], twin[e] = e, d
        twin[Dp[i]], twin[Ep[j]] = Ep[j], Dp[i]
        cycle += [d, Ep[j]]
    return cycle


def glue_half_twist(m, fA, fB, offset=0):
    """Handle surgery on two equal simple faces; returns a new map."""
    out = m.copy()
    half_twist_in_place(out, _as_dart(fA), _as_dart(fB), offset)
    return out


def crosscap_gadget(N):
    """Projective-plane map with a 6N-gon hole, its 7/5 alternating ring and antipodal chords.

    Returns ``(map, hole_dart)``; the hole is a next∘twin walk of positive edges.
    """
    if N < 1 or N % 2 == 0:
        raise PreconditionError("N must be a positive odd integer")
    from .geometry import PlaneBuilder
    import math

    k = 6 * N
    pb = PlaneBuilder()
    hole = [pb.point(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)]
    for i in range(k):
        pb.edge(hole[i], hole[(i + 1) % k])
    ports = []
    spoke_end = []
    for i in range(k):
        ang = 2 * math.pi * i / k
        spoke_end.append(pb.point(2 * math.cos(ang), 2 * math.sin(ang)))
        pb.edge(hole[i], spoke_end[i])
    for i in range(k):
        inner = 3 if i % 2 == 0 else 1  # ring face i is a heptagon or a pentagon
        a0 = 2 * math.pi * i / k
        a1 = 2 * math.pi * (i + 1) / k
        path = [spoke_end[i]]
        for s in range(1, inner + 1):
            ang = a0 + (a1 - a0) * s / (inner + 1)
            p = pb.point(2 * math.cos(ang), 2 * math.sin(ang))
            path.append(p)
            ports.append(p)
        path.append(spoke_end[(i + 1) % k])
        for u, v in zip(path, path[1:]):
            pb.edge(u, v)
    # antipodal ports are joined through the crosscap by negative chords leaving outwards
    half = len(ports) // 2
    for j in range(half):
        u, v = ports[j], ports[j + half]
        au = math.atan2(pb.coords[u][1], pb.coords[u][0])
        av = math.atan2(pb.coords[v][1], pb.coords[v][0])
        pb.edge(u, v, sign=-1, angle_u=au, angle_v=av)
    m, dart_of = pb.build()
    hole_dart = dart_of[(hole[1], hole[0])]
    return m, hole_dart


def insert_crosscap_gadget(m, f, N, offset=0):
    out = m.copy()
    insert_crosscap_in_place(out, _as_dart(f), N, offset)
    return out


def insert_crosscap_in_place(m, d, N, offset=0):
    size = len(m.walk(d))
    if size != 6 * N:
        raise PreconditionError(f"face has size {size}, expected {6 * N}")
    g, hole = crosscap_gadget(N)
    off = m.append(g)
    return half_twist_in_place(m, d, hole + off, offset)


# -- text format -----------------------------------------------------------


def serialize(m):
    c = m.copy()
    c.compact()
    lines = ["CUBMAP 1", f"darts {len(c.twin)}"]
    for d in range(len(c.twin)):
        lines.append(f"{d} {c.twin[d]} {c.nxt[d]} {'+' if c.sign[d] > 0 else '-'}")
    return "\n".join(lines) + "\n"


def parse(text, allow_trailer=False):
    """Parse the CUBMAP text format.

    With ``allow_trailer`` the lines after the dart table are returned as a
    list instead of being rejected: ``(map, extra_lines)``.
    """
    lines = text.splitlines()
    pos = 0

    def content(i):
        return lines[i].strip()

    if not lines or content(0) != "CUBMAP 1":
        raise ParseError(1, "expected header 'CUBMAP 1'")
    if len(lines) < 2:
        raise ParseError(2, "missing dart count")
    head = content(1).split()
    if len(head) != 2 or head[0] != "darts" or not head[1].isdigit():
        raise ParseError(2, "expected 'darts <D>'")
    n = int(head[1])
    if n % 2:
        raise ParseError(2, "odd number of darts")
    twin = [-1] * n
    nxt = [-1] * n
    sign = [0] * n
    pos = 2
    for k in range(n):
        ln = pos + k + 1
        if pos + k >= len(lines):
            raise ParseError(ln, "unexpected end of file")
        parts = content(pos + k).split()
        if len(parts) != 4:
            raise ParseError(ln, "expected '<dart> <twin> <next> <sign>'")
        try:
            d, t, x = (int(p) for p in parts[:3])
        except ValueError:
            raise ParseError(ln, "non-integer field") from None
        if parts[3] not in ("+", "-"):
            raise ParseError(ln, f"bad sign {parts[3]!r}")
        if d != k:
            if 0 <= d < k:
                raise ParseError(ln, f"duplicate dart line {d}")
            raise ParseError(ln, f"dart lines out of order: expected {k}, got {d}")
        for val in (t, x):
            if not 0 <= val < n:
                raise ParseError(ln, f"dart id {val} out of range")
        twin[d], nxt[d] = t, x
        sign[d] = 1 if parts[3] == "+" else -1
    pos += n
    extra = [ln for ln in lines[pos:]]
    if not allow_trailer:
        for i, ln in enumerate(extra):
            if ln.strip():
                raise ParseError(pos + i + 1, "trailing garbage")
    line_of = lambda d: d + 3  # noqa: E731
    for d in range(n):
        if twin[d] == d:
            raise ParseError(line_of(d), "fixed point in twin")
    seen = [False] * n
    for d in range(n):
        t = twin[d]
        if twin[t] != d:
            raise ParseError(line_of(d), "twin is not an involution")
        if sign[t] != sign[d]:
            raise ParseError(line_of(d), "edge signature mismatch")
        if seen[nxt[d]]:
            raise ParseError(line_of(d), "next is not a bijection")
        seen[nxt[d]] = True
    m = CombMap(twin, nxt, sign)
    if allow_trailer:
        return m, [ln for ln in extra if ln.strip()]
    return m


# -- flags -----------------------------------------------------------------


def flag_system(m):
    """The three flag involutions of ``m`` over flags ``2*d + (side < 0)``.

    ``s0`` swaps the vertex, ``s1`` the edge and ``s2`` the face of a flag.
    Only live darts carry flags; other slots hold -1.
    """
    n = len(m.twin)
    prev = m.prev_array()
    s0 = [-1] * (2 * n)
    s1 = [-1] * (2 * n)
    s2 = [-1] * (2 * n)
    for d, t in enumerate(m.twin):
        if t < 0:
            continue
        p, q = 2 * d, 2 * d + 1  # (d,+) sits between d and next(d); (d,-) between prev(d) and d
        s2[p], s2[q] = q, p
        s1[p] = 2 * m.nxt[d] + 1
        s1[q] = 2 * prev[d]
        if m.sign[d] > 0:
            s0[p], s0[q] = 2 * t + 1, 2 * t
        else:
            s0[p], s0[q] = 2 * t, 2 * t + 1
    return s0, s1, s2


def from_flags(s0, s1, s2, with_darts=False):
    """Rebuild a signed map from flag involutions (flags with ``s2 == -1`` are skipped).

    With ``with_darts`` the dart of every flag is returned as well.
    """
    n = len(s0)
    dart = [-1] * n
    nd = 0
    for x in range(n):
        if s2[x] < 0 or dart[x] >= 0:
            continue
        dart[x] = dart[s2[x]] = nd
        nd += 1
    rep = [-1] * nd
    twin = [-1] * nd
    nxt = [-1] * nd
    sign = [1] * nd
    for x in range(n):
        if s2[x] < 0 or rep[dart[x]] >= 0:
            continue
        y = x
        while True:
            rep[dart[y]] = y
            z = s1[s2[y]]
            nxt[dart[y]] = dart[z]
            y = z
            if y == x:
                break
    for d in range(nd):
        r = rep[d]
        o = s0[r]
        t = dart[o]
        twin[d] = t
        sign[d] = 1 if rep[t] == s2[o] else -1
    m = CombMap(twin, nxt, sign)
    return (m, dart) if with_darts else m


def canonical_form(m):
    """Isomorphism invariant of the flag system (mirror images compare equal)."""
    s0, s1, s2 = flag_system(m)
    live = [x for x in range(len(s0)) if s2[x] >= 0]
    best = None
    for start in live:
        label = {start: 0}
        order = [start]
        i = 0
        code = []
        while i < len(order):
            x = order[i]
            i += 1
            for s in (s0, s1, s2):
                y = s[x]
                if y not in label:
                    label[y] = len(order)
                    order.append(y)
                code.append(label[y])
            if best is not None and code > best[: len(code)]:
                break
        else:
            if best is None or code < best:
                best = code
    return tuple(best) if best is not None else ()


def radial_map(m, with_darts=False):
    """Vertex-face incidence map of ``m``.

    Its flags are pairs (flag x of ``m``, end) numbered ``2x + end``, with
    end 0 at the vertex side; ``with_darts`` also returns the dart of every
    such flag.
    """
    s0, s1, s2 = flag_system(m)
    n = len(s0)
    r0 = [-1] * (2 * n)
    r1 = [-1] * (2 * n)
    r2 = [-1] * (2 * n)
    for x in range(n):
        if s2[x] < 0:
            continue
        a, b = 2 * x, 2 * x + 1
        r0[a], r0[b] = b, a
        r1[a] = 2 * s2[x]
        r1[b] = 2 * s0[x] + 1
        r2[a] = 2 * s1[x]
        r2[b] = 2 * s1[x] + 1
    return from_flags(r0, r1, r2, with_darts)
