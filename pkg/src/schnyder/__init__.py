"""Generalized Schnyder woods on orientable surfaces."""

from .surface_map import Orientation, SurfaceMap, build_map, validate_assumptions
from .homology import characteristic_flow, face_potential, homology_coordinates, tree_cotree_basis
from .completion import (
    classify,
    complete,
    extract_labeling,
    gamma,
    is_schnyder_orientation,
    labeling_to_orientation,
    to_colored_wood,
    wood_to_labeling,
)
from .lattice import enumerate_lattice, extremes, join, meet, rigid_edges
from .toroidal import crossing_class, find_3_orientation, middle_walk, schnyderize
from .generators import gen_grid

__all__ = [
    "Orientation",
    "SurfaceMap",
    "build_map",
    "validate_assumptions",
    "characteristic_flow",
    "face_potential",
    "homology_coordinates",
    "tree_cotree_basis",
    "classify",
    "complete",
    "extract_labeling",
    "gamma",
    "is_schnyder_orientation",
    "labeling_to_orientation",
    "to_colored_wood",
    "wood_to_labeling",
    "enumerate_lattice",
    "extremes",
    "join",
    "meet",
    "rigid_edges",
    "crossing_class",
    "find_3_orientation",
    "middle_walk",
    "schnyderize",
    "gen_grid",
]
