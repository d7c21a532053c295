"""Antiflags of V(n, 2) and nonsingular points of the hyperbolic quadric O+(2n, 2)."""

from .correspondence import (
    Antiflag,
    Frame,
    antiflags,
    crossing_line,
    forward,
    inverse,
    nonsingular_points,
    sigma_coordinates,
    standard_frame,
)
from .gf2 import Subspace, contains, enumerate_points, hyperplanes_of, span
from .quadric import (
    FormClass,
    QuadraticSpace,
    classify_restriction,
    perp,
    standard_form,
)
from .relations import (
    RelationGraph,
    RelationLabel,
    SrgParams,
    build_graph,
    classify_antiflag_pair,
    classify_nonsingular_pair_B,
    classify_nonsingular_pair_C,
    srg_params,
)

__version__ = "0.1.0"
