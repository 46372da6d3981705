import pytest
from hypothesis import given, settings, strategies as st

import oracles
from cubicmaps.combmap import PreconditionError, euler_characteristic
from cubicmaps.sphere import (
    SPHERE,
    BuildRequest,
    SurfaceSpec,
    assemble_T,
    build_sphere,
    build_sphere_map,
    close_sphere,
    compute_deficit,
    format_faces,
    parse_faces,
    plausibilize,
    ring_words,
)
from cubicmaps.triarc import fill_triarc, validate_triarc

PROJECTIVE = SurfaceSpec(False, 0, 1)
TORUS = SurfaceSpec(True, 1, 0)


def off57(census):
    return {k: v for k, v in census.items() if k not in (5, 7)}


# -- surfaces and face vectors ----------------------------------------------------


@pytest.mark.parametrize(
    "text, chi, orientable",
    [("sphere", 2, True), ("torus", 0, True), ("og:3", -4, True), ("nog:1", 1, False), ("nog:2", 0, False)],
)
def test_surface_parse(text, chi, orientable):
    S = SurfaceSpec.parse(text)
    assert S.chi == chi and S.orientable == orientable
    assert SurfaceSpec.parse(str(S)) == S


@pytest.mark.parametrize("text", ["klein", "og:", "nog:0", "og:-1", ""])
def test_surface_parse_errors(text):
    with pytest.raises(ValueError):
        SurfaceSpec.parse(text)


def test_parse_faces():
    assert parse_faces("3:4") == {3: 4}
    assert parse_faces("3:4, 9:1,4:0") == {3: 4, 9: 1, 4: 0}
    assert parse_faces("") == {}
    for bad in ("3", "2:1", "3:1,3:2", "a:1"):
        with pytest.raises(ValueError):
            parse_faces(bad)
    assert format_faces({3: 4, 4: 0, 7: 2}) == "{3: 4, 7: 2}"


def test_compute_deficit_examples():
    assert compute_deficit({3: 4}, SPHERE) == 0
    assert compute_deficit({}, TORUS) == 0
    assert compute_deficit({}, PROJECTIVE) == -6
    assert compute_deficit({8: 3}, SPHERE) == -18


def test_plausibilize_examples():
    assert plausibilize({3: 4}, SPHERE) == {3: 4}
    assert plausibilize({}, PROJECTIVE) == {5: 6}
    assert plausibilize({8: 3}, SPHERE) == {8: 3, 5: 18}


@given(st.dictionaries(st.integers(3, 12).filter(lambda k: k not in (5, 7)), st.integers(0, 5), max_size=4))
def test_plausibilized_vectors_satisfy_euler(p):
    for S in (SPHERE, TORUS, PROJECTIVE):
        q = plausibilize(p, S)
        assert sum((6 - k) * v for k, v in q.items()) == 6 * S.chi


def test_build_request_validation():
    with pytest.raises(ValueError):
        BuildRequest({2: 1})
    with pytest.raises(ValueError):
        BuildRequest({3: 1}, growth=-1)


# -- assembling T' -------------------------------------------------------------------


def test_assemble_single_triangle():
    t = assemble_T({3: 1})
    assert validate_triarc(t).ok
    assert t.nucleus_faces() == [3]


@pytest.mark.parametrize("p, k, count", [({3: 4}, 3, 4), ({4: 6}, 4, 6)])
def test_assemble_nuclei(p, k, count):
    t = assemble_T(p)
    assert validate_triarc(t).ok
    assert t.nucleus_faces() == [k] * count
    census = oracles.census(t.map)
    census[len(t.walk())] -= 1
    assert off57({s: v for s, v in census.items() if v}) == {k: count}
    a, b, c = t.sides
    assert b == c and b % 2 == 0


def test_assemble_empty_vector():
    t = assemble_T({})
    assert validate_triarc(t).ok
    assert t.nuclei == []


# -- closing ring -------------------------------------------------------------------


def test_ring_words_letters():
    w1, w2, shift = ring_words(8)
    assert w1.count("T") == 3 * 8 + 3
    assert w2.count("R") == 3 * 8 + 3
    assert w1.count("X") == w2.count("X")
    assert shift == 17


def test_close_two_fillers():
    m = close_sphere(fill_triarc(8), fill_triarc(8))
    census = oracles.census(m)
    assert set(census) == {5, 7}
    assert census[5] == census[7] + 12
    assert euler_characteristic(m) == (2, True)
    assert oracles.euler(m) == 2
    assert oracles.degrees(m) == {3: len(m.twin) // 3}


def test_close_rejects_bad_sides():
    with pytest.raises(PreconditionError):
        close_sphere(fill_triarc(16), fill_triarc(16))
    with pytest.raises(PreconditionError):
        close_sphere(fill_triarc(8), fill_triarc(16))


# -- whole pipeline -------------------------------------------------------------------


@pytest.mark.parametrize("p", [{3: 4}, {4: 6}])
def test_build_sphere(p):
    m, rep = build_sphere(BuildRequest(p))
    assert rep.ok, rep.text()
    census = oracles.census(m)
    assert off57(census) == p
    assert census[5] == census[7] >= 1
    assert oracles.euler(m) == 2 and oracles.orientable(m)
    assert sum((6 - k) * v for k, v in census.items()) == 12


def test_growth_adds_pentagons():
    n = [oracles.census(build_sphere_map({3: 4}, growth=g).map)[5] for g in (0, 1)]
    assert n[0] < n[1]


def test_build_rejects_five_and_seven():
    with pytest.raises(PreconditionError, match="chosen by the builder"):
        build_sphere(BuildRequest({5: 1}))


def test_nuclei_survive():
    b = build_sphere_map({3: 2, 8: 1, 4: 1})
    assert sorted(len(b.map.walk(d)) for d in b.nuclei) == [3, 3, 4, 8]


@settings(max_examples=8)
@given(st.dictionaries(st.sampled_from([3, 4, 6, 8]), st.integers(0, 2), max_size=3))
def test_deficit_relation_on_random_requests(p):
    b = build_sphere_map(p)
    census = oracles.census(b.map)
    assert off57(census) == {k: v for k, v in p.items() if v}
    assert census.get(7, 0) - census.get(5, 0) == compute_deficit(p, SPHERE)
    assert oracles.degrees(b.map) == {3: len(b.map.twin) // 3}
