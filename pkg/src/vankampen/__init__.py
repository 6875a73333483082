"""Mod-2 van Kampen embedding obstructions for finite simplicial complexes.

Decides nonvanishing of the degree-r obstruction class by pairing an exact
intersection cochain against cycles of the quotient deleted product, and
constructively transports witness cycles across bistellar moves on skeleta.
"""

__version__ = "0.1.0"

from .complexes import (
    Chain,
    Complex,
    boundary_of_simplex,
    complex_from_dict,
    complex_from_json,
    complex_from_text,
    complex_to_dict,
    complex_to_json,
    complex_to_text,
    delete_vertices,
    euler_characteristic,
    f_vector,
    full_simplex,
    h_vector,
    induced,
    intersect,
    join,
    join_chains,
    link,
    missing_faces,
    simplex,
    skeleton,
    standard_sphere,
    star,
    vk_skeleton,
    with_face,
)
from .deleted_product import (
    CellBudgetExceeded,
    DeletedProduct,
    PairChain,
    boundary_cell,
    build_deleted_product,
    is_pair_cycle,
    pair_boundary,
    pair_cell,
    pair_chain_of,
    slice_at,
)
from .geometry import (
    DegeneratePositionError,
    GeomMap,
    IntersectionCochain,
    find_odd_pair,
    intersection_cochain,
    intersection_number,
    moment_map,
    parameter_schedules,
    schlegel_map,
    verify_general_position,
)
from .gf2 import Gf2Matrix, smith_normal_form
from .homology import (
    betti_gf2,
    betti_int,
    boundary_matrix_gf2,
    boundary_matrix_int,
    chain_boundary,
    is_cycle,
    solve_boundary,
)
from .obstruction import ObstructionReport, evaluate, obstruction, vk_witness
from .pachner import (
    MoveDescriptor,
    applicable_moves,
    apply_move,
    apply_trace,
    cyclic_sphere,
    random_walk,
    stellar_subdivide,
    stellar_trace,
    trace_from_dict,
    trace_states,
    trace_to_dict,
    triangle_subdivision_trace,
)
from .planarity import is_planar
from .reconstruction import non_skeleton_check, reconstruct
from .surgery import (
    AssumptionReport,
    ConingOracle,
    SkeletonMoveContext,
    SurgeryError,
    check_assumptions,
    fresh_face_context,
    missing_face_witness,
    skeleton_move_context,
    transport_context,
    transport_witness,
    verify_missing_face_theorem,
)
