import random

import pytest
from hypothesis import given, strategies as st

import oracles
from cubicmaps.catalog import FIXTURES, cube, dodecahedron, hex_torus, k4, k33_torus, petersen_projective, prism
from cubicmaps.combmap import (
    CombMap,
    MapError,
    ParseError,
    PreconditionError,
    canonical_form,
    check_flippable,
    euler_characteristic,
    excise_face,
    face_census,
    flip_edge,
    flip_faces,
    glue_half_twist,
    insert_crosscap_gadget,
    parse,
    serialize,
    trace_orbits,
)
from cubicmaps.sphere import build_sphere_map


@st.composite
def random_maps(draw, max_edges=12):
    """Arbitrary dart arrays: fixed twin pairing, random rotation and signs."""
    ne = draw(st.integers(1, max_edges))
    n = 2 * ne
    perm = draw(st.permutations(range(n)))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=ne, max_size=ne))
    twin = [d ^ 1 for d in range(n)]
    sign = [signs[d // 2] for d in range(n)]
    return CombMap(twin, list(perm), sign)


# -- tracing ---------------------------------------------------------------


@pytest.mark.parametrize(
    "make, nv, sizes",
    [(k4, 4, {3: 4}), (cube, 8, {4: 6}), (k33_torus, 6, {6: 3})],
)
def test_trace_orbits_examples(make, nv, sizes):
    m = make()
    verts, fcs = trace_orbits(m)
    assert len(verts) == nv
    assert all(len(v) == 3 for v in verts)
    got = {}
    for f in fcs:
        got[f.size] = got.get(f.size, 0) + 1
    assert got == sizes


def test_every_dart_in_one_vertex_orbit_and_twice_in_faces():
    m = petersen_projective()
    verts, fcs = trace_orbits(m)
    assert sorted(d for v in verts for d in v) == list(range(len(m.twin)))
    assert sum(f.size for f in fcs) == len(m.twin)


@pytest.mark.parametrize(
    "make, expected",
    [(k4, (2, True)), (k33_torus, (0, True)), (petersen_projective, (1, False)), (dodecahedron, (2, True))],
)
def test_euler_characteristic_examples(make, expected):
    m = make()
    assert euler_characteristic(m) == expected
    assert (oracles.euler(m), oracles.orientable(m)) == expected


@pytest.mark.parametrize(
    "make, census",
    [(k4, {3: 4}), (dodecahedron, {5: 12}), (lambda: hex_torus(2), {6: 4})],
)
def test_face_census_examples(make, census):
    m = make()
    assert face_census(m) == census
    assert oracles.census(m) == census


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_agree_with_oracle(name):
    m = FIXTURES[name]()
    assert face_census(m) == oracles.census(m)
    assert euler_characteristic(m) == (oracles.euler(m), oracles.orientable(m))


@given(random_maps())
def test_random_maps_trace_like_the_oracle(m):
    m.check()
    census = face_census(m)
    assert sum(k * v for k, v in census.items()) == len(m.twin)
    assert census == oracles.census(m)
    chi, orientable = euler_characteristic(m)
    assert chi == oracles.euler(m)
    assert orientable == oracles.orientable(m)


# -- flips -----------------------------------------------------------------


def test_flip_turns_four_hexagons_into_two_pentagons_and_two_heptagons():
    m = hex_torus(4)
    out = flip_edge(m, 0)
    assert face_census(out) == {5: 2, 6: 12, 7: 2}
    assert oracles.census(out) == {5: 2, 6: 12, 7: 2}


def test_flip_shrinks_incident_and_grows_opposite_faces():
    m = dodecahedron()
    for d in range(0, len(m.twin), 5):
        before = sorted(oracles.census(m).items())
        inc1, inc2, opp1, opp2 = oracles.flip_sizes(m, d)
        out = flip_edge(m, d)
        after = oracles.census(out)
        exp = dict(before)
        for k, delta in ((inc1, -1), (inc2, -1), (opp1, 1), (opp2, 1)):
            exp[k] -= 1
            exp[k + delta] = exp.get(k + delta, 0) + 1
        assert after == {k: v for k, v in sorted(exp.items()) if v}


def test_flip_faces_are_distinct_on_a_prism():
    m = prism(6)
    ids = flip_faces(m, 0)
    assert len(set(ids)) == 4


def test_double_flip_is_isomorphic():
    m = dodecahedron()
    out = flip_edge(flip_edge(m, 3), 3)
    assert canonical_form(out) == canonical_form(m)


def test_flip_rejects_degenerate_neighbourhood():
    # K3,3 on the torus has three faces, so four distinct faces cannot surround an edge
    with pytest.raises(PreconditionError, match="degenerate"):
        flip_edge(k33_torus(), 0)


def test_flip_rejects_negative_edge():
    m = petersen_projective()
    d = next(d for d in range(len(m.twin)) if m.sign[d] < 0)
    with pytest.raises(PreconditionError, match="negative"):
        check_flippable(m, d)


def test_flip_preserves_counts_and_degrees():
    m = build_sphere_map({3: 4}).map
    rng = random.Random(5)
    for _ in range(20):
        d = rng.randrange(len(m.twin))
        try:
            out = flip_edge(m, d)
        except PreconditionError:
            continue
        assert oracles.euler(out) == oracles.euler(m) == 2
        assert oracles.degrees(out) == {3: len(m.twin) // 3}
        assert sum(face_census(out).values()) == sum(face_census(m).values())


# -- surgery ----------------------------------------------------------------


def test_excise_face_of_k4():
    b = excise_face(k4(), 0)
    assert len(b.boundary) == 3


@pytest.mark.parametrize("N, length", [(1, 6), (3, 18)])
def test_excise_nucleus_of_a_sphere_build(N, length):
    build = build_sphere_map({}, aux=1, N=N)
    b = excise_face(build.map, build.nuclei[0])
    assert len(b.boundary) == length


def _dumbbell():
    """Two loops joined by a bridge; the face around the bridge meets both ends twice."""
    return CombMap([1, 0, 3, 2, 5, 4], [1, 4, 3, 5, 0, 2], [1] * 6)


def test_excise_rejects_repeated_vertices():
    m = _dumbbell()
    assert euler_characteristic(m) == (2, True)
    d = next(d for d in range(6) if len(m.walk(d)) == 4)
    with pytest.raises(PreconditionError):
        excise_face(m, d)


@pytest.mark.parametrize("N", [1, 3])
def test_glue_half_twist_makes_a_torus(N):
    build = build_sphere_map({}, aux=2, N=N)
    m = build.map
    a, b = build.nuclei[:2]
    out = glue_half_twist(m, a, b)
    chi, orientable = euler_characteristic(out)
    assert (chi, orientable) == (0, True)
    assert oracles.euler(out) == 0
    assert oracles.degrees(out) == {3: len(out.twin) // 3}
    # the two 6N-gons are gone, every other face survives, and the merged cycle carries 12N edges
    assert sum(face_census(out).values()) == sum(face_census(m).values()) - 2
    from cubicmaps.combmap import half_twist_in_place

    cyc = half_twist_in_place(m.copy(), a, b)
    assert len(cyc) == 12 * N


def test_glue_half_twist_rejects_unequal_faces():
    build = build_sphere_map({}, aux=1, N=1)
    m = build.map
    pent = next(d for d in range(len(m.twin)) if len(m.walk(d)) == 5)
    with pytest.raises(PreconditionError):
        glue_half_twist(m, build.nuclei[0], pent)


@pytest.mark.parametrize("N", [1, 3])
def test_crosscap_gadget_lowers_chi_by_one(N):
    build = build_sphere_map({}, aux=1, N=N)
    out = insert_crosscap_gadget(build.map, build.nuclei[0], N)
    assert euler_characteristic(build.map) == (2, True)
    assert euler_characteristic(out) == (1, False)
    assert (oracles.euler(out), oracles.orientable(out)) == (1, False)
    assert oracles.degrees(out) == {3: len(out.twin) // 3}


def test_crosscap_gadget_rejects_wrong_size():
    build = build_sphere_map({}, aux=1, N=1)
    with pytest.raises(PreconditionError):
        insert_crosscap_gadget(build.map, build.nuclei[0], 3)


# -- text format --------------------------------------------------------------


def test_round_trip_k4():
    m = k4()
    assert parse(serialize(m)) == m


@given(random_maps())
def test_round_trip_random(m):
    assert parse(serialize(m)) == m


def test_serialize_layout():
    lines = serialize(k4()).splitlines()
    assert lines[0] == "CUBMAP 1"
    assert lines[1] == "darts 12"
    assert lines[2].split()[0] == "0"
    assert len(lines) == 14


def _k4_lines():
    return serialize(k4()).splitlines()


def test_parse_fixed_point():
    lines = _k4_lines()
    d, t, x, s = lines[2 + 3].split()
    lines[2 + 3] = f"3 3 {x} {s}"
    with pytest.raises(ParseError, match="fixed point in twin") as exc:
        parse("\n".join(lines))
    assert exc.value.line == 6


def test_parse_sign_mismatch():
    lines = _k4_lines()
    d, t, x, s = lines[2].split()
    lines[2] = f"{d} {t} {x} -"
    with pytest.raises(ParseError, match="edge signature mismatch"):
        parse("\n".join(lines))


def test_parse_trailing_garbage_and_duplicates():
    text = serialize(k4())
    with pytest.raises(ParseError, match="trailing garbage"):
        parse(text + "junk\n")
    lines = text.splitlines()
    lines[3] = lines[2]
    with pytest.raises(ParseError, match="duplicate"):
        parse("\n".join(lines))


def test_parse_header_and_syntax():
    with pytest.raises(ParseError):
        parse("CUBMAP 2\ndarts 0\n")
    with pytest.raises(ParseError, match="non-integer"):
        parse("CUBMAP 1\ndarts 2\n0 x 0 +\n1 0 1 +\n")
    with pytest.raises(ParseError, match="end of file"):
        parse("CUBMAP 1\ndarts 4\n0 1 0 +\n")


def test_check_detects_broken_twin():
    m = k4()
    m.twin[0] = 0
    with pytest.raises(MapError):
        m.check()
