"""Exact lattice-point, sumset and GAP-intersection computations with reproducible checks."""

from .enumeration import (
    Ball,
    VPolytope,
    ball_volume,
    count_points_in_ball,
    counterexample_body,
    integer_points_in_polytope,
    lattice_points_in_polytope,
    points_in_ball,
)
from .gap import (
    Gap,
    GapTooLarge,
    gap_as_lattice_image,
    gap_points,
    gap_size_multiset,
    intersect_count,
    restrict_gap,
    sort_dims_nonincreasing,
)
from .kernels import BACKEND
from .lattice import (
    DimensionError,
    LatticeBasis,
    Subspace,
    determinant,
    lll_reduce,
    membership,
    sublattice_in_subspace,
)
from .pointset import PointSet
from .random_lattice import (
    RandomLatticeConfig,
    min_subdet_statistics,
    sample_random_lattice,
    siegel_mean_value_check,
)
from .reports import ExperimentReport
from .sumset import doubling_factor, minkowski_sum

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Ball",
    "DimensionError",
    "ExperimentReport",
    "Gap",
    "GapTooLarge",
    "LatticeBasis",
    "PointSet",
    "RandomLatticeConfig",
    "Subspace",
    "VPolytope",
    "ball_volume",
    "count_points_in_ball",
    "counterexample_body",
    "determinant",
    "doubling_factor",
    "gap_as_lattice_image",
    "gap_points",
    "gap_size_multiset",
    "integer_points_in_polytope",
    "intersect_count",
    "lattice_points_in_polytope",
    "lll_reduce",
    "membership",
    "min_subdet_statistics",
    "minkowski_sum",
    "points_in_ball",
    "restrict_gap",
    "sample_random_lattice",
    "siegel_mean_value_check",
    "sort_dims_nonincreasing",
    "sublattice_in_subspace",
]
