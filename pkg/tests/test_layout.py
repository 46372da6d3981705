import itertools
import xml.etree.ElementTree as ET

import numpy as np
import pytest

import oracles
from cubicmaps.catalog import cube, dodecahedron, k4, k33_torus, petersen_projective, prism, two_cut
from cubicmaps.combmap import face_census
from cubicmaps.layout import LayoutError, barycentric_layout, crossing_pairs, render_svg
from cubicmaps.sphere import build_sphere_map

SVG = "{http://www.w3.org/2000/svg}"


def brute_crossings(d):
    """Pairs of vertex-disjoint edges whose segments cross, checked one pair at a time."""
    xy = d.coords
    n = 0
    for (a, b), (c, e) in itertools.combinations(d.edges.tolist(), 2):
        if {a, b} & {c, e}:
            continue
        n += oracles.segments_cross(xy[a], xy[b], xy[c], xy[e])
    return n


def neighbour_residual(m, d):
    g = oracles.graph(m)
    vid, _ = m.vertex_ids()
    outer = set(d.outer)
    worst = 0.0
    for v in g.nodes:
        if v in outer:
            continue
        nb = [u for _, u in g.edges(v)]
        worst = max(worst, float(np.abs(d.coords[nb].mean(axis=0) - d.coords[v]).max()))
    return worst


def test_k4_inner_vertex_at_centroid():
    for outer in range(4):
        d = barycentric_layout(k4(), outer=outer)
        inner = (set(range(4)) - set(d.outer)).pop()
        assert np.allclose(d.coords[inner], d.coords[d.outer].mean(axis=0), atol=1e-12)


def test_cube_inner_square():
    d = barycentric_layout(cube())
    inner = sorted(set(range(8)) - set(d.outer))
    r = np.linalg.norm(d.coords[inner], axis=1)
    assert np.allclose(r, r[0]) and 0 < r[0] < 1
    assert brute_crossings(d) == 0 == crossing_pairs(d.coords, d.edges)


def test_outer_face_is_a_regular_polygon():
    d = barycentric_layout(prism(7))
    ring = d.coords[d.outer]
    assert len(ring) == 7
    assert np.allclose(np.linalg.norm(ring, axis=1), 1)
    gaps = np.linalg.norm(np.roll(ring, -1, axis=0) - ring, axis=1)
    assert np.allclose(gaps, gaps[0])


@pytest.mark.parametrize("make", [k4, cube, dodecahedron, lambda: prism(5), lambda: build_sphere_map({3: 4}).map])
def test_no_crossings_and_small_residual(make):
    m = make()
    d = barycentric_layout(m)
    assert brute_crossings(d) == 0
    assert crossing_pairs(d.coords, d.edges) == 0
    assert d.residual < 1e-9
    assert neighbour_residual(m, d) < 1e-9


def test_crossing_count_matches_brute_force():
    rng = np.random.default_rng(3)
    d = barycentric_layout(dodecahedron())
    d.coords = rng.normal(size=d.coords.shape)
    assert crossing_pairs(d.coords, d.edges, block=7) == brute_crossings(d) > 0


@pytest.mark.parametrize("make", [k33_torus, petersen_projective])
def test_rejects_other_surfaces(make):
    with pytest.raises(LayoutError):
        barycentric_layout(make())


def test_warns_on_two_cut():
    with pytest.warns(UserWarning, match="3-connected"):
        try:
            barycentric_layout(two_cut())
        except LayoutError:
            pass


@pytest.mark.parametrize("make", [k4, cube, lambda: build_sphere_map({3: 4}).map])
def test_svg(make):
    m = make()
    text = render_svg(barycentric_layout(m))
    root = ET.fromstring(text.split("\n", 1)[1])
    assert root.tag == SVG + "svg"
    polys = root.findall(SVG + "polygon")
    census = face_census(m)
    assert len(polys) == sum(census.values()) - 1
    assert len(root.findall(SVG + "rect")) == 1
    tag = " ".join(f"{k}:{v}" for k, v in sorted(census.items()))
    assert f"<!-- census {tag} -->" in text
    fills = {}
    for p in polys:
        fills.setdefault(p.find(SVG + "title").text, set()).add(p.get("fill"))
    assert all(len(f) == 1 for f in fills.values())
    if "5" in fills and "7" in fills:
        assert fills["5"] != fills["7"]
