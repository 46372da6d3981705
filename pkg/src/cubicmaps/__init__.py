"""Cubic maps on closed surfaces with prescribed face sizes, padded by pentagons and heptagons."""

from .combmap import (
    CombMap,
    MapError,
    ParseError,
    PreconditionError,
    euler_characteristic,
    face_census,
    faces,
    flip_edge,
    parse,
    serialize,
)
from .sphere import SPHERE, BuildRequest, SurfaceSpec, build_sphere, build_sphere_map, compute_deficit, plausibilize
from .surface import BuildPlan, add_crosscap, add_handle, build_surface, plan
from .triarc import Triarc, basic_triarc, fixed_triarc, glue_triarcs, hexagon_triarc, validate_triarc
from .verify import edge_width, face_width, is_contractible, realization_report, vertex_connectivity_at_least

__version__ = "0.1.0"
