"""Command-line front end: ``build``, ``verify``, ``stats`` and ``render``."""

from __future__ import annotations

import argparse
import sys

from .combmap import MapError, PreconditionError, euler_characteristic, face_census, parse, serialize
from .sphere import SPHERE, SurfaceSpec, build_sphere_map, format_faces, parse_faces

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _faces(text):
    try:
        p = parse_faces(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if any(k in (5, 7) for k in p):
        raise InputError("face sizes 5 and 7 are chosen by the builder")
    return p


def _surface(text):
    try:
        return SurfaceSpec.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _read_map(path):
    try:
        with open(path) as fh:
            return parse(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except MapError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _svg(m, path):
    from .layout import barycentric_layout, render_svg

    if euler_characteristic(m) != (2, True):
        raise InputError("only sphere maps can be rendered")
    _write(path, render_svg(barycentric_layout(m)))


def _report(m, p, S, w, out):
    from .verify import realization_report

    rep = realization_report(m, p, S, w if S != SPHERE else None)
    out.write(rep.text())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_build(a):
    p = _faces(a.faces)
    S = _surface(a.surface)
    if a.w < 1:
        raise InputError("--w must be at least 1")
    if a.growth < 0:
        raise InputError("--growth must be non-negative")
    if S == SPHERE:
        m = build_sphere_map(p, a.growth).map
    else:
        from .surface import build_surface

        m = build_surface(p, S, a.w, a.growth, verify=False)[0]
    text = serialize(m)
    _write(a.out, text)
    # the report goes to stderr when the map itself is on stdout
    info = sys.stdout if a.out else sys.stderr
    if a.svg:
        _svg(m, a.svg)
    if a.verify:
        return _report(m, p, S, a.w, info)
    return EXIT_OK


def cmd_verify(a):
    m = _read_map(a.map)
    return _report(m, _faces(a.faces), _surface(a.surface), a.w, sys.stdout)


def cmd_stats(a):
    m = _read_map(a.map)
    vid, nv = m.vertex_ids()
    chi, orientable = euler_characteristic(m)
    census = face_census(m)
    print(f"vertices {nv}")
    print(f"edges {m.num_edges()}")
    print(f"faces {sum(census.values())}")
    print(f"chi {chi}")
    print(f"orientable {'yes' if orientable else 'no'}")
    print(f"census {format_faces(census)}")
    print(f"n7-n5 {census.get(7, 0) - census.get(5, 0)}")
    return EXIT_OK


def cmd_render(a):
    _svg(_read_map(a.map), a.out)
    return EXIT_OK


def parser():
    ap = argparse.ArgumentParser(prog="cubicmaps", description="Cubic maps with prescribed face sizes.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="construct a map")
    b.add_argument("--faces", default="", help="face vector k:count,... (no 5 or 7)")
    b.add_argument("--surface", default="sphere", help="sphere, torus, og:<h> or nog:<c>")
    b.add_argument("--w", type=int, default=3, help="face-width target off the sphere")
    b.add_argument("--growth", type=int, default=0)
    b.add_argument("--out", help="CUBMAP output path (default stdout)")
    b.add_argument("--verify", action="store_true", help="print the verification report")
    b.add_argument("--svg", help="also write a drawing (sphere only)")
    b.add_argument("--seedless", action="store_true", help="no effect: the construction is deterministic")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check a map file against a request")
    v.add_argument("map")
    v.add_argument("--faces", default="")
    v.add_argument("--surface", default="sphere")
    v.add_argument("--w", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="size, Euler characteristic and face census")
    s.add_argument("map")
    s.set_defaults(func=cmd_stats)

    r = sub.add_parser("render", help="draw a sphere map as SVG")
    r.add_argument("map")
    r.add_argument("--out", help="SVG path (default stdout)")
    r.set_defaults(func=cmd_render)
    return ap


def run(argv=None):
    ap = parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return a.func(a)
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


__all__ = ["main", "parser", "run"]
