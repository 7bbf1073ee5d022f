"""Digital topology on graphs: homotopy moves, manifold and sphere recognition,
disk transformations, clique-complex invariants and box covers."""

from . import canon
from .canon import canonical_form, canonical_key, is_isomorphic
from .classify import (
    DiskSpec,
    RecognizerDisagreement,
    bounds_disk,
    disk_containment_hypothesis,
    enumerate_one_spheres,
    is_minimal_sphere,
    is_n_disk,
    is_n_manifold,
    is_n_manifold_with_boundary,
    is_n_sphere,
    is_normal_space,
    minimal_disk,
    minimal_sphere,
    sphere_bounding_hypothesis,
)
from .dtransform import (
    ClassReport,
    DiskError,
    class_number,
    compress,
    find_disk,
    is_compressed,
    merge_disk,
    split_vertex,
)
from .graph import Graph, GraphError, ball, connected_sum, joint_rim, join, rim
from .homotopy import Budget, Move, MoveError, Trace, apply_move, is_contractible, reduce, validate_move
from .invariants import betti_mod2, cliques, euler_characteristic, invariants_report
from .verdict import ManifoldVerdict, Outcome, Verdict

__version__ = "0.1.0"

__all__ = sorted(
    name for name, obj in globals().items()
    if not name.startswith("_") and not isinstance(obj, type(canon))
)
