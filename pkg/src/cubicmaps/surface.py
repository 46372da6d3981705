"""Handles and crosscaps cut into auxiliary 6N-gon nuclei of a sphere build."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .combmap import PreconditionError, _flip_in_place, half_twist_in_place, insert_crosscap_in_place
from .sphere import SPHERE, SurfaceSpec, build_sphere_map, compute_deficit


@dataclass(frozen=True)
class BuildPlan:
    z: int
    N: int
    aux: int
    handles: tuple  # pairs of auxiliary nucleus indices
    crosscaps: tuple  # auxiliary nucleus indices


def plan(p, S, w):
    """Edge-width target z, gon scale N and the use of each auxiliary nucleus."""
    if w < 1:
        raise PreconditionError("face-width target must be at least 1")
    r = max((k for k, v in p.items() if v), default=0)
    rr = max(r, 7)
    z = math.ceil(rr * w / 2)
    N = z // 2 + 1
    if N % 2 == 0:
        N += 1
    h = S.h if S.orientable else 0
    c = 0 if S.orientable else S.c
    handles = tuple((2 * i, 2 * i + 1) for i in range(h))
    crosscaps = tuple(range(2 * h, 2 * h + c))
    return BuildPlan(z, N, 2 * h + c, handles, crosscaps)


@dataclass(frozen=True)
class Surgery:
    cycle: list  # darts of the merged cycle, one per edge
    offset: int  # twist offset that admitted a repair
    flips: list  # repaired edges


def _local_faces(m, darts):
    """Face (as the frozenset of its walk) of each dart; faces here carry positive edges only."""
    return [frozenset(m.walk(x)) for x in darts]


def _choose_flips(m, cycle):
    """Phase of every-fourth-edge flips on ``cycle`` after which all faces along it are 5 or 7.

    Returns the list of darts to flip, or ``None``.
    """
    touched = {}
    for d in cycle:
        for f in _local_faces(m, (d, m.twin[d])):
            touched[f] = len(f)
    for phase in range(4):
        size = dict(touched)
        plan_ok = True
        for j in range(phase, len(cycle), 4):
            d = cycle[j]
            a = m.nxt[d]
            b = m.nxt[a]
            dd = m.nxt[m.nxt[m.twin[d]]]
            fd, fa, fb, fdd = _local_faces(m, (d, a, b, dd))
            if len({fd, fa, fb, fdd}) != 4:
                plan_ok = False
                break
            for f, delta in ((fd, -1), (fa, -1), (fb, 1), (fdd, 1)):
                size[f] = size.get(f, len(f)) + delta
        if plan_ok and all(v in (5, 7) for v in size.values()):
            return [cycle[j] for j in range(phase, len(cycle), 4)]
    return None


def _glue_and_repair(m, glue, darts):
    """Try twist offsets until a flip phase repairs the cycle; undo failed attempts."""
    saved = {}
    for d in darts:
        for x in m.walk(d):
            saved[x] = m.twin[x]
            saved[m.twin[x]] = m.twin[m.twin[x]]
    k = len(m.walk(darts[0]))
    for offset in range(k):
        size_before = len(m.twin)
        cycle = glue(offset)
        flips = _choose_flips(m, cycle)
        if flips is not None:
            for d in flips:
                _flip_in_place(m, d)
            return Surgery(cycle, offset, flips)
        # roll back: restore the twins and drop anything appended
        for x, t in saved.items():
            m.twin[x] = t
        del m.twin[size_before:], m.nxt[size_before:], m.sign[size_before:]
    raise PreconditionError("no twist offset admits a repairing flip phase")


def add_handle(m, fa, fb, N):
    """Replace two 6N-gon faces (given by darts on their walks) by a handle, in place."""
    for d in (fa, fb):
        if len(m.walk(d)) != 6 * N:
            raise PreconditionError(f"face of dart {d} is not a {6 * N}-gon")
    return _glue_and_repair(m, lambda off: half_twist_in_place(m, fa, fb, off), [fa, fb])


def add_crosscap(m, f, N):
    """Replace a 6N-gon face by a crosscap gadget, in place."""
    if len(m.walk(f)) != 6 * N:
        raise PreconditionError(f"face of dart {f} is not a {6 * N}-gon")
    return _glue_and_repair(m, lambda off: insert_crosscap_in_place(m, f, N, off), [f])


def build_surface(p, S, w=3, growth=0, verify=True):
    """Realize ``p`` on ``S`` with face-width at least ``w``; returns ``(map, plan, report)``."""
    from .verify import realization_report

    if any(k in (5, 7) and v for k, v in p.items()):
        raise PreconditionError("face sizes 5 and 7 are chosen by the builder")
    if S == SPHERE:
        pl = plan(p, S, w)
        build = build_sphere_map(p, growth)
        m = build.map
    else:
        pl = plan(p, S, w)
        build = build_sphere_map(p, growth, z=pl.z, aux=pl.aux, N=pl.N)
        m = build.map
        aux = build.nuclei[: pl.aux]
        for i, j in pl.handles:
            add_handle(m, aux[i], aux[j], pl.N)
        for i in pl.crosscaps:
            add_crosscap(m, aux[i], pl.N)
        m.compact()
    report = realization_report(m, p, S, w) if verify else None
    return m, pl, report


__all__ = ["BuildPlan", "Surgery", "SurfaceSpec", "add_crosscap", "add_handle", "build_surface", "compute_deficit", "plan"]
