"""Combinatorics of hyperplanes in finite CAT(0) cube complexes."""

from .complex import Cube, CubeComplex, LinkComplex, build_complex, certify_cat0, is_flag, link
from .generators import generate, grid, hypercube, product, tree
from .hyperplanes import (
    block_components,
    carrier,
    crosses,
    four_point_witness,
    halfspaces,
    helly_cube,
    hyperplanes,
    marked_cube_census,
)
from .median import check_median_axioms, gate_project, interval, median
from .paths import EdgePath, all_geodesics, corner_move, corner_move_available, crossing_sequence, distance, is_geodesic
from .walls import (
    OrientedWallBasis,
    check_cocycle_identity,
    cocycle,
    load_automorphism,
    properness_profile,
    wall_metric,
    wall_space,
)

__all__ = [
    "Cube",
    "CubeComplex",
    "EdgePath",
    "LinkComplex",
    "OrientedWallBasis",
    "all_geodesics",
    "block_components",
    "build_complex",
    "carrier",
    "certify_cat0",
    "check_cocycle_identity",
    "check_median_axioms",
    "cocycle",
    "corner_move",
    "corner_move_available",
    "crosses",
    "crossing_sequence",
    "distance",
    "four_point_witness",
    "gate_project",
    "generate",
    "grid",
    "halfspaces",
    "helly_cube",
    "hypercube",
    "hyperplanes",
    "interval",
    "is_flag",
    "is_geodesic",
    "link",
    "load_automorphism",
    "marked_cube_census",
    "median",
    "product",
    "properness_profile",
    "tree",
    "wall_metric",
    "wall_space",
]

__version__ = "0.1.0"
