import re

import networkx as nx
import pytest

import oracles
from cubicmaps.catalog import FIXTURES, cube, from_rotation, hex_torus, k4, k33_torus, petersen_projective, two_cut
from cubicmaps.combmap import MapError, euler_characteristic, face_census, faces, radial_map
from cubicmaps.sphere import SPHERE, build_sphere_map
from cubicmaps.verify import (
    UNBOUNDED,
    check_cubic,
    edge_width,
    face_width,
    is_contractible,
    realization_report,
    verify_realization,
    vertex_connectivity,
    vertex_connectivity_at_least,
)

SMALL = {
    "k4": k4,
    "cube": cube,
    "k33-torus": k33_torus,
    "petersen-projective": petersen_projective,
    "hex-torus-2": lambda: hex_torus(2),
    "hex-torus-3": lambda: hex_torus(3),
}


def as_darts(m, edges):
    """Order an edge set (keyed by smaller dart) of a simple cycle into a dart walk."""
    _, tail = oracles.rotations(m)
    at = {}
    for e in edges:
        for d in (e, m.twin[e]):
            at.setdefault(tail[d], []).append(d)
    e0 = min(edges)
    out = [e0]
    while True:
        d = out[-1]
        v = tail[m.twin[d]]
        nxt = [x for x in at[v] if x != m.twin[d]]
        if len(edges) == 1:
            return out
        x = nxt[0]
        if x in (e0, m.twin[e0]) or min(x, m.twin[x]) == e0:
            return out
        out.append(x)


# -- cubicity and connectivity ---------------------------------------------------------


def test_check_cubic():
    assert check_cubic(k4())
    assert check_cubic(cube())
    # K4 with one edge subdivided
    rot = {0: [1, 2, 4], 1: [0, 3, 2], 2: [0, 1, 3], 3: [1, 4, 2], 4: [3, 0]}
    assert not check_cubic(from_rotation(rot))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_connectivity_matches_networkx(name):
    m = FIXTURES[name]()
    g = nx.Graph(oracles.graph(m))
    expected = nx.node_connectivity(g)
    assert vertex_connectivity_at_least(m, 3) == (expected >= 3)
    assert min(vertex_connectivity(m), 3) == min(expected, 3)


def test_two_cut_is_not_3_connected():
    assert not vertex_connectivity_at_least(two_cut(), 3)
    assert vertex_connectivity_at_least(k4(), 3)
    assert vertex_connectivity_at_least(cube(), 3)


def test_sphere_build_connectivity():
    m = build_sphere_map({3: 4}).map
    g = nx.Graph(oracles.graph(m))
    assert nx.node_connectivity(g) == 3
    assert vertex_connectivity_at_least(m, 3)
    assert nx.check_planarity(g)[0]


# -- contractibility -----------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(SMALL))
def test_contractibility_matches_oracle(name):
    m = SMALL[name]()
    chains = oracles.face_edge_chains(m)
    limit = 8 if name == "hex-torus-3" else None
    for cyc in oracles.simple_cycles(m, limit):
        darts = as_darts(m, cyc)
        assert is_contractible(m, darts) == oracles.bounds_disc(m, cyc, chains), darts


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_face_boundaries_are_contractible(name):
    m = FIXTURES[name]()
    vid, _ = m.vertex_ids()
    seen = set()
    for d in range(len(m.twin)):
        if d in seen or any(m.sign[x] < 0 for x in m.walk(d)):
            continue
        w = m.walk(d)
        seen.update(w)
        if len({vid[x] for x in w}) == len(w):
            assert is_contractible(m, w)


def test_one_sided_cycle():
    m = petersen_projective()
    found = 0
    for cyc in oracles.simple_cycles(m):
        darts = as_darts(m, cyc)
        p = 1
        for d in darts:
            p *= m.sign[d]
        if p < 0:
            found += 1
            assert not is_contractible(m, darts)
    assert found


def test_k33_four_cycles_are_essential():
    m = k33_torus()
    fours = [c for c in oracles.simple_cycles(m) if len(c) == 4]
    assert len(fours) == 9
    for c in fours:
        assert not is_contractible(m, as_darts(m, c))


def test_contractible_rejects_non_cycle():
    m = k4()
    with pytest.raises(MapError):
        is_contractible(m, [0, 1])


# -- widths ----------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(SMALL))
def test_widths_match_exhaustion(name):
    m = SMALL[name]()
    ew, fw = edge_width(m), face_width(m)
    oe, of = oracles.edge_width(m), oracles.face_width(m)
    assert ew.value == (UNBOUNDED if oe is None else oe)
    assert fw.value == (UNBOUNDED if of is None else of)


def test_width_values():
    assert edge_width(k33_torus()).value == 4
    assert edge_width(petersen_projective()).value == 5
    assert edge_width(k4()).value == UNBOUNDED
    assert face_width(cube()).value == UNBOUNDED


@pytest.mark.parametrize("name", ["k33-torus", "petersen-projective", "hex-torus-2", "hex-torus-3"])
def test_witnesses(name):
    m = SMALL[name]()
    ew = edge_width(m)
    assert len(ew.witness) == ew.value
    assert not is_contractible(m, ew.witness)
    edges = frozenset(min(d, m.twin[d]) for d in ew.witness)
    assert not oracles.bounds_disc(m, edges)
    fw = face_width(m)
    assert len(fw.witness) == fw.value
    fcs = faces(m)
    covered = frozenset(min(d, m.twin[d]) for i in fw.witness for d in fcs[i].darts)
    chains = oracles.face_edge_chains(m)
    assert any(c <= covered and not oracles.bounds_disc(m, c, chains) for c in oracles.simple_cycles(m))


@pytest.mark.parametrize("name", ["k33-torus", "petersen-projective", "hex-torus-2", "hex-torus-3"])
def test_width_inequality(name):
    m = SMALL[name]()
    r = max(face_census(m))
    assert edge_width(m).value <= r / 2 * face_width(m).value


def test_radial_map_of_k4():
    r = radial_map(k4())
    assert euler_characteristic(r) == (2, True)
    _, nv = r.vertex_ids()
    assert nv == 8
    assert face_census(r) == {4: 6}


def test_radial_map_keeps_the_surface():
    for make in (k33_torus, petersen_projective):
        m = make()
        assert euler_characteristic(radial_map(m)) == euler_characteristic(m)


# -- reports ----------------------------------------------------------------------------


def test_report_passes_on_a_sphere_build():
    m = build_sphere_map({3: 4}).map
    rep = realization_report(m, {3: 4}, SPHERE)
    assert rep.ok
    lines = rep.lines()
    assert lines[-1] == "RESULT PASS"
    for ln in lines[:-1]:
        assert re.fullmatch(r"CHECK \S+ (PASS|FAIL) .*", ln)
    assert rep.face_width == UNBOUNDED
    assert rep.n7 - rep.n5 == rep.s == 0


def test_report_flags_a_census_mismatch():
    m = build_sphere_map({3: 4}).map
    rep = verify_realization(m, {3: 5}, SPHERE)
    assert not rep.ok
    assert any(ln.startswith("CHECK census FAIL") for ln in rep.lines())
    assert rep.lines()[-1] == "RESULT FAIL"


def test_report_on_a_torus_fixture():
    from cubicmaps.sphere import SurfaceSpec

    rep = realization_report(k33_torus(), {6: 3}, SurfaceSpec(True, 1, 0), w=3)
    assert not rep.ok
    names = {ln.split()[1]: ln.split()[2] for ln in rep.lines()[:-1]}
    assert names["face-width"] == "FAIL"
    assert names["euler"] == "PASS"
