"""Sphere realizations: nuclei triarc T', filling triarc R and the closing ring."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .combmap import PreconditionError, face_census
from .triarc import (
    Triarc,
    _block,
    adjust_congruence,
    basic_triarc,
    deepen_nucleus,
    equilateralize,
    fill_triarc,
    glue_triarcs,
    hexagon_triarc,
    validate_triarc,
)


@dataclass(frozen=True)
class SurfaceSpec:
    orientable: bool = True
    h: int = 0
    c: int = 0

    def __post_init__(self):
        if self.h < 0 or self.c < 0:
            raise ValueError("handle and crosscap counts must be non-negative")
        if self.orientable and self.c:
            raise ValueError("an orientable surface has no crosscaps")
        if not self.orientable and (self.h or self.c == 0):
            raise ValueError("a non-orientable surface is given by c >= 1 crosscaps")

    @property
    def chi(self):
        return 2 - 2 * self.h if self.orientable else 2 - self.c

    @classmethod
    def parse(cls, text):
        """``sphere``, ``torus``, ``og:<h>`` or ``nog:<c>``."""
        t = text.strip().lower()
        if t == "sphere":
            return cls(True, 0, 0)
        if t == "torus":
            return cls(True, 1, 0)
        mt = re.fullmatch(r"(og|nog):(\d+)", t)
        if not mt:
            raise ValueError(f"unknown surface {text!r}")
        k = int(mt.group(2))
        if mt.group(1) == "og":
            return cls(True, k, 0)
        if k == 0:
            raise ValueError("nog needs at least one crosscap")
        return cls(False, 0, k)

    def __str__(self):
        if self.orientable:
            return {0: "sphere", 1: "torus"}.get(self.h, f"og:{self.h}")
        return f"nog:{self.c}"


SPHERE = SurfaceSpec()


@dataclass
class BuildRequest:
    faces: dict
    growth: int = 0

    def __post_init__(self):
        if self.growth < 0:
            raise ValueError("growth must be non-negative")
        for k, v in self.faces.items():
            if k < 3 or v < 0:
                raise ValueError(f"bad face entry {k}:{v}")


def parse_faces(text):
    """``k:count,...`` into a dict; empty text is the empty vector."""
    out = {}
    text = text.strip()
    if not text:
        return out
    for item in text.split(","):
        mt = re.fullmatch(r"\s*(\d+)\s*:\s*(\d+)\s*", item)
        if not mt:
            raise ValueError(f"malformed face entry {item!r}")
        k, v = int(mt.group(1)), int(mt.group(2))
        if k < 3:
            raise ValueError(f"face size {k} is below 3")
        if k in out:
            raise ValueError(f"face size {k} given twice")
        out[k] = v
    return out


def format_faces(p):
    return "{" + ", ".join(f"{k}: {v}" for k, v in sorted(p.items()) if v) + "}"


def compute_deficit(p, S=SPHERE):
    """The forced value of p7 - p5."""
    return sum((6 - k) * v for k, v in p.items() if k not in (5, 7)) - 6 * S.chi


def plausibilize(p, S=SPHERE):
    s = compute_deficit(p, S)
    out = {k: v for k, v in p.items() if v}
    if s > 0:
        out[7] = out.get(7, 0) + s
    elif s < 0:
        out[5] = out.get(5, 0) - s
    return out


# -- assembling T' -----------------------------------------------------------


def _nucleus_triarc(k):
    return hexagon_triarc(1) if k == 6 else basic_triarc(k)


def _isosceles(t):
    for r in range(3):
        a, b, c = t.rotated(r).sides
        if b == c and b % 2 == 0:
            return t.rotated(r)
    raise AssertionError(f"triarc {t.sides} is not isosceles with even legs")


def assemble_T(p, z=0, aux=0, N=1):
    """One isosceles triarc holding a nucleus per prescribed face.

    Sizes 5 and 7 get no nucleus of their own: they are hosted by the
    pentagons and heptagons of T224 blocks, three per block.  ``aux`` extra
    6N-gon nuclei (hexagon triarcs deepened to ``z``) are listed first in
    ``nuclei`` of the result.
    """
    blocks = [(6 * N, True)] * aux
    blocks += [(k, False) for k in sorted((k for k in p if k not in (5, 7)), reverse=True) for _ in range(p[k])]
    blocks.sort(key=lambda kb: -kb[0])  # stable: ties keep their order
    t = None
    aux_nuclei, plain = [], []
    for k, is_aux in blocks:
        b = deepen_nucleus(hexagon_triarc(N), z) if is_aux else _nucleus_triarc(k)
        b = _isosceles(b)
        off = 0 if t is None else len(t.map.twin)
        (aux_nuclei if is_aux else plain).extend(d + off for d in b.nuclei)
        t = b if t is None else glue_triarcs(t, b)
    hosted = -(-p.get(5, 0) // 3) + -(-p.get(7, 0) // 3)
    if t is None:
        hosted = max(hosted, 1)
    for _ in range(hosted):
        b = _block("T224", (4, 2, 2))
        t = b if t is None else glue_triarcs(t, b)
    t.nuclei = aux_nuclei + plain
    t.kind = "assembled"
    return t


# -- the closing ring ---------------------------------------------------------


def _stub_darts(m, corner):
    """Arriving outer-walk dart at every degree-2 boundary vertex, from ``corner`` on."""
    w = m.walk(corner)
    return [w[i - 1] for i, d in enumerate(w) if m.degree(d) == 2]


def ring_words(n):
    """Letter sequences of the two ring cycles for side ``n``.

    ``T`` and ``R`` vertices take a stub to T' and R, ``X`` vertices a rung
    to the other cycle.
    """
    w1 = ("XTX" + "XXT" * n) * 3
    w2 = ("XXR" + "XRX" * n) * 3
    return w1[1:] + w1[:1], w2[2:] + w2[:2], 2 * n + 1


def close_sphere(tp, r, check_congruence=True):
    """Glue equilateral ``tp`` and ``r`` into a sphere through a ring of 5- and 7-gons.

    Both inputs are consumed.  Returns a compact map.
    """
    return _close(tp, r, check_congruence)[0]


def _close(tp, r, check_congruence):
    n = tp.sides[0]
    if len(set(tp.sides)) != 1 or r.sides != tp.sides:
        raise PreconditionError(f"side mismatch: {tp.sides} and {r.sides}")
    if n < 2:
        raise PreconditionError("sides must be at least 2")
    if check_congruence and (n % 8 or n % 3 != 2):
        raise PreconditionError(f"side {n} violates n = 0 (mod 8), n = 2 (mod 3)")
    m = tp.map
    off = m.append(r.map)
    st = _stub_darts(m, tp.corners[0])
    sr = _stub_darts(m, r.corners[0] + off)
    # seen from T' the boundary of R runs the other way round
    sr = sr[:1] + sr[1:][::-1]
    w1, w2, shift = ring_words(n)

    def cycle(word):
        size = len(word)
        fwd, back = [0] * size, [0] * size
        for i in range(size):
            d, e = m.add_edge()
            fwd[i], back[(i + 1) % size] = d, e
        return fwd, back

    f1, b1 = cycle(w1)
    f2, b2 = cycle(w2)
    x1 = [i for i, ch in enumerate(w1) if ch == "X"]
    x2 = [i for i, ch in enumerate(w2) if ch == "X"]
    k = len(x1)
    third1 = [0] * len(w1)
    third2 = [0] * len(w2)
    for j in range(k):
        d, e = m.add_edge()
        third1[x1[j]], third2[x2[(j + shift) % k]] = d, e
    for word, third, stubs, letter in ((w1, third1, st, "T"), (w2, third2, sr, "R")):
        it = iter(stubs)
        for i, ch in enumerate(word):
            if ch == letter:
                arrive = next(it)
                d, e = m.add_edge()
                third[i] = d
                m.insert_after(m.twin[arrive], e)

    def rotate(seq):
        for a, b in zip(seq, seq[1:] + seq[:1]):
            m.nxt[a] = b

    for i, ch in enumerate(w1):
        rotate([f1[i], third1[i], b1[i]] if ch == "T" else [third1[i], f1[i], b1[i]])
    for i, ch in enumerate(w2):
        rotate([f2[i], third2[i], b2[i]] if ch == "X" else [third2[i], f2[i], b2[i]])
    remap = m.compact()
    return m, remap


# -- pipeline -------------------------------------------------------------


@dataclass
class SphereBuild:
    map: object
    nuclei: list  # nucleus darts in the final map, auxiliary ones first
    side: int


def build_sphere_map(p, growth=0, z=0, aux=0, N=1):
    """T' from the nuclei, made equilateral and congruent, closed against a filling R."""
    t = assemble_T(p, z, aux, N)
    t = equilateralize(t)
    t = adjust_congruence(t, extra_steps=12 * growth)
    n = t.sides[0]
    nuclei = list(t.nuclei)
    m, remap = _close(t, fill_triarc(n), True)
    return SphereBuild(m, [remap[d] for d in nuclei], n)


def build_sphere(req, verify=True):
    """Realize ``req.faces`` (no 5 or 7 keys) on the sphere; returns ``(map, report)``."""
    from .verify import realization_report

    p = dict(req.faces)
    if any(k in (5, 7) and v for k, v in p.items()):
        raise PreconditionError("face sizes 5 and 7 are chosen by the builder")
    build = build_sphere_map(p, req.growth)
    report = realization_report(build.map, p, SPHERE, widths=verify) if verify else None
    return build.map, report


def census_excluding(m, skip=(5, 7)):
    return {k: v for k, v in face_census(m).items() if k not in skip}


__all__ = [
    "BuildRequest",
    "SPHERE",
    "SurfaceSpec",
    "Triarc",
    "assemble_T",
    "build_sphere",
    "build_sphere_map",
    "close_sphere",
    "compute_deficit",
    "format_faces",
    "parse_faces",
    "plausibilize",
    "ring_words",
    "validate_triarc",
]
