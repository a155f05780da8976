"""Polytope lattices, nets, color representations and triadic fractals."""

from fractions import Fraction

from . import _core
from ._core import (
    DimensionUnsupported,
    Error,
    FaceLattice,
    InvalidArgument,
    IoError,
    LatticeInconsistent,
    Net,
    anchor_multiplicities,
    build_cube,
    build_simplex,
    cartesian_product,
    count_via_net,
    cube_corner,
    cube_f_vector,
    euler_boundary,
    facet_incidence_divisor,
    fiber_rep,
    fractal_dimension,
    iterate,
    kept_per_step,
    lift_matches_iterate,
    run_cli,
    run_star,
    sha256_hex,
    simplex_f_vector,
    truncate_vertices,
    unfold,
)


def measure_proxy(d, m, k, level):
    """Total k-volume of the level boxes of rule (d, m), as an exact Fraction."""
    return Fraction(*_core.measure_proxy(d, m, k, level))


__all__ = [name for name in dir() if not name.startswith("_") and name != "Fraction"]
