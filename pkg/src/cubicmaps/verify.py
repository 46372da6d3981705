"""Independent checks on finished maps: degrees, census, connectivity and widths."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .combmap import MapError, euler_characteristic, face_census, face_index, face_state_orbits, radial_map

UNBOUNDED = "unbounded"


# -- basic graph data -------------------------------------------------------


class _Graph:
    """Vertex/edge/face tables of a map, shared by the width searches."""

    def __init__(self, m):
        self.m = m
        self.vid, self.nv = m.vertex_ids()
        twin = m.twin
        self.darts_at = [[] for _ in range(self.nv)]
        for d, t in enumerate(twin):
            if t >= 0:
                self.darts_at[self.vid[d]].append(d)
        self.head = [self.vid[t] if t >= 0 else -1 for t in twin]
        self.prev = m.prev_array()
        orbit_of, orbits = face_state_orbits(m, self.prev)
        # one id per face: the smaller of the two orbit indices
        rev = [0] * len(orbits)
        for i, orb in enumerate(orbits):
            d, e = orb[0]
            t = twin[d]
            rev[i] = orbit_of[2 * t + ((-e * m.sign[d]) < 0)]
        fid_of_orbit = {}
        self.face_of_state = [-1] * len(orbit_of)
        self.face_states = []
        for i in range(len(orbits)):
            key = min(i, rev[i])
            if key not in fid_of_orbit:
                fid_of_orbit[key] = len(self.face_states)
                self.face_states.append(orbits[key])
        for code, i in enumerate(orbit_of):
            if i >= 0:
                self.face_of_state[code] = fid_of_orbit[min(i, rev[i])]
        self.nf = len(self.face_states)
        self.ne = sum(1 for t in twin if t >= 0) // 2
        self.chi = self.nv - self.ne + self.nf

    def edge(self, d):
        t = self.m.twin[d]
        return d if d < t else t

    def face(self, d, eps):
        return self.face_of_state[2 * d + (eps < 0)]


# -- degrees and connectivity ----------------------------------------------------


def check_cubic(m):
    return all(m.degree(d) == 3 for d in m.darts())


def simple_graph(m):
    """Underlying simple graph as adjacency sets, plus counts of loops and parallel edges."""
    vid, nv = m.vertex_ids()
    adj = [set() for _ in range(nv)]
    loops = parallel = 0
    for d, t in enumerate(m.twin):
        if t < 0 or d > t:
            continue
        u, v = vid[d], vid[t]
        if u == v:
            loops += 1
        elif v in adj[u]:
            parallel += 1
        else:
            adj[u].add(v)
            adj[v].add(u)
    return adj, loops, parallel


def _cubic_edge_connectivity(adj):
    """min(edge connectivity, 3) of a connected graph by exact cut-space labels.

    Every non-tree edge gets its own bit; a tree edge carries the XOR of the
    bits of the non-tree edges whose fundamental cycles pass through it.  A
    zero label is a bridge and two equal labels form a 2-edge cut.
    """
    n = len(adj)
    if n == 0:
        return 0
    parent = [-1] * n
    order = [0]
    seen = [False] * n
    seen[0] = True
    for u in order:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
    if len(order) < n:
        return 0
    acc = [0] * n
    labels = []
    bit = 0
    for u in range(n):
        for v in adj[u]:
            if u < v and parent[v] != u and parent[u] != v:
                acc[u] ^= 1 << bit
                acc[v] ^= 1 << bit
                labels.append(1 << bit)
                bit += 1
    for u in reversed(order[1:]):
        acc[parent[u]] ^= acc[u]
        labels.append(acc[u])
    if any(x == 0 for x in labels):
        return 1
    if len(set(labels)) < len(labels):
        return 2
    return 3


def vertex_connectivity(m, cap=3):
    """``min(kappa, cap)`` of the underlying simple graph.

    Cubic graphs have equal vertex and edge connectivity, so they go through
    the cut-space labels; everything else through unit-capacity flows.
    """
    adj, _, _ = simple_graph(m)
    if adj and cap <= 3 and all(len(a) == 3 for a in adj):
        return min(_cubic_edge_connectivity(adj), cap)
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(len(adj)))
    g.add_edges_from((u, v) for u in range(len(adj)) for v in adj[u] if u < v)
    if g.number_of_nodes() == 0 or not nx.is_connected(g):
        return 0
    return min(nx.node_connectivity(g), cap)


def vertex_connectivity_at_least(m, k=3):
    return vertex_connectivity(m, cap=k) >= k


# -- contractibility ------------------------------------------------------------


@dataclass
class WidthResult:
    value: object  # int or UNBOUNDED
    witness: list = field(default_factory=list)

    @property
    def bounded(self):
        return self.value != UNBOUNDED

    def __str__(self):
        return str(self.value)


def _check_cycle(g, cycle):
    m = g.m
    if not cycle:
        raise MapError("empty cycle")
    for d in cycle:
        if d < 0 or d >= len(m.twin) or m.twin[d] < 0:
            raise MapError(f"dart {d} is not live")
    verts = [g.vid[d] for d in cycle]
    for i, d in enumerate(cycle):
        if g.head[d] != verts[(i + 1) % len(cycle)]:
            raise MapError("darts do not form a closed walk")
    if len(set(verts)) != len(verts):
        raise MapError("closed walk is not a simple cycle")
    if len({g.edge(d) for d in cycle}) != len(cycle):
        raise MapError("closed walk repeats an edge")


def _side_faces(g, cycle):
    """Faces touching the cycle from the left and from the right (by corners)."""
    m = g.m
    left, right = set(), set()
    eps = 1
    n = len(cycle)
    for i, d in enumerate(cycle):
        arrive = m.twin[cycle[i - 1]]
        step = m.nxt if eps > 0 else g.prev
        # corners swept from d to the arriving dart lie on the left
        x = d
        while x != arrive:
            left.add(g.face(x, -eps))
            x = step[x]
        while x != d:
            right.add(g.face(x, -eps))
            x = step[x]
        eps *= m.sign[d]
    return left, right


def _side_chi(g, faces, cyc_edges, cyc_verts):
    verts, edges = set(), set()
    for f in faces:
        for d, _ in g.face_states[f]:
            e = g.edge(d)
            if e not in cyc_edges:
                edges.add(e)
            v = g.vid[d]
            if v not in cyc_verts:
                verts.add(v)
    return len(verts) + len(cyc_verts) - len(edges) - len(cyc_edges) + len(faces)


def _separate(g, cycle):
    """Flood both sides of a two-sided cycle in turns.

    Returns ``None`` if the sides meet (non-separating), otherwise the Euler
    characteristic of the side that was exhausted first.
    """
    cyc_edges = {g.edge(d) for d in cycle}
    cyc_verts = {g.vid[d] for d in cycle}
    left, right = _side_faces(g, cycle)
    if left & right:
        return None
    sides = [set(left), set(right)]
    queues = [deque(left), deque(right)]
    while True:
        for s in (0, 1):
            q = queues[s]
            if not q:
                return _side_chi(g, sides[s], cyc_edges, cyc_verts)
            f = q.popleft()
            for d, e in g.face_states[f]:
                if g.edge(d) in cyc_edges:
                    continue
                nb = g.face(d, -e)
                if nb in sides[1 - s]:
                    return None
                if nb not in sides[s]:
                    sides[s].add(nb)
                    q.append(nb)


def _separating_can_be_essential(g, orientable):
    # a separating curve is essential only if neither side is a disc
    return g.chi <= -2 or (not orientable and g.chi <= 0)


def is_contractible(m, cycle, _graph=None):
    """Does the simple cycle (dart list) bound a disc?"""
    g = _graph or _Graph(m)
    _check_cycle(g, cycle)
    sgn = 1
    for d in cycle:
        sgn *= m.sign[d]
    if sgn < 0:
        return False
    chi_side = _separate(g, cycle)
    if chi_side is None:
        return False
    return chi_side == 1 or g.chi - chi_side == 1


# -- widths -----------------------------------------------------------------


class _Homology:
    """Z2 cocycle labels: a closed walk is null-homologous iff its labels XOR to 0."""

    def __init__(self, g, root=0):
        m = g.m
        twin = m.twin
        nv = g.nv
        parent_dart = [-1] * nv
        seen = [False] * nv
        seen[root] = True
        order = [root]
        for u in order:
            for d in g.darts_at[u]:
                v = g.head[d]
                if not seen[v]:
                    seen[v] = True
                    parent_dart[v] = d
                    order.append(v)
        self.connected = len(order) == nv
        tree = {g.edge(parent_dart[v]) for v in order[1:]}
        # spanning tree of the dual through edges outside the tree
        fseen = [False] * g.nf
        fseen[0] = True
        forder = [0]
        fparent_edge = [-1] * g.nf
        fparent = [-1] * g.nf
        cotree = set()
        for f in forder:
            for d, e in g.face_states[f]:
                ed = g.edge(d)
                if ed in tree:
                    continue
                nb = g.face(d, -e)
                if not fseen[nb]:
                    fseen[nb] = True
                    fparent[nb] = f
                    fparent_edge[nb] = ed
                    cotree.add(ed)
                    forder.append(nb)
        label = {}
        self.leftover = []
        for d, t in enumerate(twin):
            if t >= 0 and d < t and d not in tree and d not in cotree:
                label[d] = 1 << len(self.leftover)
                self.leftover.append(d)
        for ed in tree:
            label[ed] = 0
        # solve the cotree labels from the leaves of the dual tree upwards
        for f in reversed(forder[1:]):
            own = fparent_edge[f]
            acc = 0
            for d, _ in g.face_states[f]:
                ed = g.edge(d)
                if ed != own:
                    acc ^= label[ed]
            label[own] = acc
        self.label = label
        self.tree_parent = parent_dart
        self.tree_order = order


def _tree_path(parent_dart, g, v):
    """Darts from the root down to ``v``."""
    path = []
    while parent_dart[v] >= 0:
        d = parent_dart[v]
        path.append(d)
        v = g.vid[d]
    path.reverse()
    return path


def _simple_loop(g, parent_dart, d):
    """Cycle formed by edge ``d`` and the tree paths to its ends, trimmed at their meeting point."""
    u, w = g.vid[d], g.head[d]
    pu = _tree_path(parent_dart, g, u)
    pw = _tree_path(parent_dart, g, w)
    k = 0
    while k < len(pu) and k < len(pw) and pu[k] == pw[k]:
        k += 1
    twin = g.m.twin
    return pu[k:] + [d] + [twin[x] for x in reversed(pw[k:])]


def _cut_graph_vertices(g, hom):
    """Vertices of the tree plus leftover edges after pruning dangling branches."""
    keep_deg = [0] * g.nv
    adj = [[] for _ in range(g.nv)]
    edges = [hom.tree_parent[v] for v in hom.tree_order[1:]] + hom.leftover
    for d in edges:
        u, v = g.vid[d], g.head[d]
        adj[u].append(v)
        adj[v].append(u)
        keep_deg[u] += 1
        keep_deg[v] += 1
    alive = [True] * g.nv
    stack = [v for v in range(g.nv) if keep_deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v] or keep_deg[v] > 1:
            continue
        alive[v] = False
        for w in adj[v]:
            if alive[w]:
                keep_deg[w] -= 1
                if keep_deg[w] <= 1:
                    stack.append(w)
    return [v for v in range(g.nv) if alive[v]]


def _ball_is_disc(g, ball):
    """Is the union of faces around ``ball`` (thickened at pinch points) a disc?"""
    faces = set()
    for v in ball:
        for d in g.darts_at[v]:
            faces.add(g.face(d, 1))
            faces.add(g.face(d, -1))
    twin = g.m.twin
    edges = set()
    corners = {}
    darts = {}
    for f in faces:
        states = g.face_states[f]
        k = len(states)
        for i in range(k):
            d = states[i][0]
            edges.add(g.edge(d))
            nd = states[(i + 1) % k][0]
            v = g.head[d]
            corners[v] = corners.get(v, 0) + 1
            darts.setdefault(v, set()).update((twin[d], nd))
    nvert = 0
    for v, c in corners.items():
        deg = len(g.darts_at[v])
        nvert += 1 if c >= deg else len(darts[v]) - c
    return nvert - len(edges) + len(faces) == 1


def edge_width(m, _graph=None):
    """Length of a shortest non-contractible cycle, with a witness cycle."""
    g = _graph or _Graph(m)
    orientable = euler_characteristic(m)[1]
    if g.chi == 2 and orientable:
        return WidthResult(UNBOUNDED)
    hom = _Homology(g)
    if not hom.connected:
        raise MapError("map is not connected")
    best, witness = math.inf, []
    for d in hom.leftover:
        cyc = _simple_loop(g, hom.tree_parent, d)
        if len(cyc) < best:
            best, witness = len(cyc), cyc
    check_sep = _separating_can_be_essential(g, orientable)
    roots = _cut_graph_vertices(g, hom)
    # search for cycles shorter than a growing bound: small balls are cheap and mostly discs
    bound = 8
    while True:
        bound = min(bound, best)
        found, cyc = _ball_search(g, hom, roots, bound, check_sep)
        if found < bound:
            return WidthResult(found, cyc)
        if bound >= best:
            return WidthResult(best, witness)
        bound *= 2


def _ball_search(g, hom, roots, best, check_sep):
    """Shortest essential cycle through a root that is shorter than ``best``."""
    sign, label, twin = g.m.sign, hom.label, g.m.twin
    witness = []
    for r in roots:
        limit = best // 2  # both tree paths of a shorter cycle stay within this depth
        depth = {r: 0}
        pdart = {r: -1}
        branch = {r: -1}
        par = {r: 1}
        cls = {r: 0}
        q = deque([r])
        ball = [r]
        while q:
            u = q.popleft()
            if depth[u] >= limit:
                continue
            for d in g.darts_at[u]:
                v = g.head[d]
                if v not in depth:
                    depth[v] = depth[u] + 1
                    pdart[v] = d
                    branch[v] = v if u == r else branch[u]
                    par[v] = par[u] * sign[d]
                    cls[v] = cls[u] ^ label[g.edge(d)]
                    q.append(v)
                    ball.append(v)
        if _ball_is_disc(g, ball):
            continue
        for u in ball:
            for d in g.darts_at[u]:
                v = g.head[d]
                if d > twin[d] or v not in depth or pdart[v] == d or pdart[u] == twin[d]:
                    continue
                if depth[u] + depth[v] + 1 >= best:
                    continue
                if u == v and u != r:
                    continue
                if u != r and v != r and branch[u] == branch[v]:
                    continue
                essential = par[u] * par[v] * sign[d] < 0 or (cls[u] ^ cls[v] ^ label[g.edge(d)]) != 0
                cyc = None
                if not essential and check_sep:
                    cyc = _root_cycle(g, pdart, u, v, d)
                    chi_side = _separate(g, cyc)
                    essential = chi_side is None or not _is_disc_split(g, chi_side)
                if essential:
                    best, witness = depth[u] + depth[v] + 1, cyc or _root_cycle(g, pdart, u, v, d)
    return best, witness


def _is_disc_split(g, chi_side):
    return chi_side == 1 or g.chi - chi_side == 1


def _root_cycle(g, pdart, u, v, d):
    twin = g.m.twin
    up = []
    x = u
    while pdart[x] >= 0:
        up.append(pdart[x])
        x = g.vid[pdart[x]]
    down = []
    x = v
    while pdart[x] >= 0:
        down.append(twin[pdart[x]])
        x = g.vid[pdart[x]]
    return list(reversed(up)) + [d] + down


def face_width(m):
    """Minimum number of faces whose boundaries contain a non-contractible cycle."""
    r, dart_of = radial_map(m, with_darts=True)
    res = edge_width(r)
    if not res.bounded:
        return res
    # a radial flag 2x + 1 sits at the face of m holding flag x, which is face state x ^ 1
    fidx, _, _ = face_index(m)
    flag_at = {}
    for y, d in enumerate(dart_of):
        if d >= 0 and y % 2:
            flag_at[d] = y // 2
    faces = sorted({fidx[flag_at[d] ^ 1] for d in res.witness if d in flag_at})
    return WidthResult(res.value // 2, faces)


# -- aggregated report ---------------------------------------------------------


@dataclass
class RealizationReport:
    census: dict
    chi: int
    orientable: bool
    n5: int
    n7: int
    s: int
    connectivity: int
    face_width: object
    edge_width: object
    checks: list = field(default_factory=list)  # (name, ok, detail)

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def lines(self):
        out = [f"CHECK {name} {'PASS' if ok else 'FAIL'} {detail}" for name, ok, detail in self.checks]
        out.append(f"RESULT {'PASS' if self.ok else 'FAIL'}")
        return out

    def text(self):
        return "\n".join(self.lines()) + "\n"


def _fmt(p):
    return "{" + ",".join(f"{k}:{v}" for k, v in sorted(p.items()) if v) + "}"


def realization_report(m, p, S, w=None, widths=True):
    """Run every check of a finished build against the request ``p`` on surface ``S``."""
    from .sphere import compute_deficit

    checks = []
    try:
        m.check()
        checks.append(("structure", True, "valid map"))
    except MapError as exc:
        checks.append(("structure", False, str(exc)))
        return RealizationReport({}, 0, False, 0, 0, 0, 0, UNBOUNDED, UNBOUNDED, checks)
    census = face_census(m)
    chi, orientable = euler_characteristic(m)
    cubic = check_cubic(m)
    checks.append(("cubic", cubic, "all vertices have degree 3" if cubic else "a vertex has degree != 3"))
    want = {k: v for k, v in p.items() if k not in (5, 7) and v}
    got = {k: v for k, v in census.items() if k not in (5, 7)}
    checks.append(("census", got == want, f"faces {_fmt(census)} expected {_fmt(want)} off 5,7"))
    checks.append(("euler", chi == S.chi, f"chi {chi} expected {S.chi}"))
    checks.append(("orientability", orientable == S.orientable, f"orientable {orientable} expected {S.orientable}"))
    s = compute_deficit(p, S)
    n5, n7 = census.get(5, 0), census.get(7, 0)
    checks.append(("deficit", n7 - n5 == s, f"n7-n5 {n7 - n5} expected {s}"))
    _, loops, parallel = simple_graph(m)
    kappa = vertex_connectivity(m)
    detail = f"connectivity {'>=3' if kappa >= 3 else kappa}"
    if loops or parallel:
        detail += f" loops {loops} parallel {parallel}"
    checks.append(("3-connected", kappa >= 3, detail))
    fw = ew = UNBOUNDED
    if widths:
        g = _Graph(m)
        ewr = edge_width(m, g)
        fwr = face_width(m)
        ew, fw = ewr.value, fwr.value
        if w is not None:
            ok = fw == UNBOUNDED or fw >= w
            checks.append(("face-width", ok, f"face-width {fw} required {w}"))
        else:
            checks.append(("face-width", True, f"face-width {fw}"))
        checks.append(("edge-width", True, f"edge-width {ew}"))
        if ew != UNBOUNDED and fw != UNBOUNDED:
            r = max(census)
            ok = ew * 2 <= r * fw
            checks.append(("width-bound", ok, f"edge-width {ew} <= {r}/2 * face-width {fw}"))
        if ewr.bounded:
            ok = not is_contractible(m, ewr.witness, g) and len(ewr.witness) == ew
            checks.append(("witness", ok, f"shortest cycle of length {ew} is non-contractible"))
        poly = kappa >= 3 and (fw == UNBOUNDED or fw >= 3)
        checks.append(("polyhedral", True, f"polyhedral {'yes' if poly else 'no'}"))
    return RealizationReport(census, chi, orientable, n5, n7, s, kappa, fw, ew, checks)


def verify_realization(m, p, S, w=None):
    return realization_report(m, p, S, w)
