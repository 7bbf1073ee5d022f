"""Covers by boxes, their nerves, and grid digitization of surfaces."""

from .box import Box, frac, frac_text
from .cover import (
    Cover,
    CoverError,
    SegmentedKind,
    compress_cover,
    intersect,
    is_disk_union,
    is_lcl,
    is_lump,
    merge_cover,
    nerve,
    segmented_kind,
)
from .covers import (
    brick_tiling_patch,
    cube_boundary_cover,
    grid_cover,
    refined_sphere_cover,
    torus_cover_4x4,
)
from .digitize import (
    SHAPES,
    DigitizeError,
    ImplicitSurface,
    box_boundary,
    circle,
    digitize,
    plane_patch,
    refinement_sequence,
    sphere,
    torus,
)

__all__ = [
    "Box",
    "Cover",
    "CoverError",
    "DigitizeError",
    "ImplicitSurface",
    "SHAPES",
    "SegmentedKind",
    "box_boundary",
    "brick_tiling_patch",
    "circle",
    "compress_cover",
    "cube_boundary_cover",
    "digitize",
    "frac",
    "frac_text",
    "grid_cover",
    "intersect",
    "is_disk_union",
    "is_lcl",
    "is_lump",
    "merge_cover",
    "nerve",
    "plane_patch",
    "refined_sphere_cover",
    "refinement_sequence",
    "segmented_kind",
    "sphere",
    "torus",
    "torus_cover_4x4",
]
