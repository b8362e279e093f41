"""Exact polytopes built from signed-volume systems."""

from .hpoly import (INFEASIBLE, UNBOUNDED, AffineForm, HPolytope, RadialChart, affine_dimension,
                    canonical_direction, centroid, feasible_interior, is_bounded, lp_extremum,
                    max_margin, radial_chart, radial_to_boundary, strictly_feasible,
                    unbounded_directions, vertices)
from .volume import VolumeSystem, box_forms, build_system, star_kernel, triangle_form
from .fibers import (ApexSetup, FiberReport, ProjectionReport, apex_setup, fiber_polytopes,
                     membership, projection_equality_check, sample_x)
from .sampling import sample_embeddings

__all__ = [
    "ApexSetup", "FiberReport", "ProjectionReport", "apex_setup", "fiber_polytopes", "membership",
    "projection_equality_check", "sample_embeddings", "sample_x",
    "AffineForm", "HPolytope", "INFEASIBLE", "UNBOUNDED", "RadialChart", "VolumeSystem",
    "affine_dimension", "box_forms", "build_system", "canonical_direction", "centroid",
    "feasible_interior", "is_bounded", "lp_extremum", "max_margin", "radial_chart",
    "radial_to_boundary", "star_kernel", "strictly_feasible", "triangle_form",
    "unbounded_directions", "vertices",
]
