"""Turn-regular orthogonal representations of planar 4-graphs.

Plane-graph data model, corner calculus (turn/rot, kitty corners),
constructive drawing algorithms, turn-regular tree recognition, and a
max-flow decision procedure for rectilinear turn-regular representations.
"""

from .constructors import construct_3graph, construct_hamiltonian, construct_spiral
from .errors import (
    BudgetExceeded,
    DegreeTooHigh,
    EulerViolation,
    FaceTooLarge,
    InconsistentRotation,
    IndexOutOfFace,
    Infeasible,
    InvalidDrawing,
    InvalidRepresentation,
    NotBiconnected,
    NotDirectional,
    NotHamiltonianCycle,
    NotSimple,
    ParseError,
    PreconditionUnmet,
    TurnRegError,
)
from .geometry import (
    CornerDirection,
    GridDrawing,
    bounding_area,
    corner_direction,
    extract_representation,
    render_svg,
    validate_drawing,
)
from .graph_core import (
    FaceBoundary,
    PlaneGraph,
    StOrdering,
    build_plane_graph,
    faces,
    is_biconnected,
    st_ordering,
)
from .ortho_rep import (
    Corner,
    CornerSeq,
    OrthoRep,
    RectImage,
    RegularityReport,
    is_turn_regular,
    kitty_pairs,
    lemma1_witness,
    rectilinear_image,
    rot,
    rot_cycle,
    turn,
)
from .rectflow import (
    FlowAssignment,
    FlowNetwork,
    build_network,
    extract_rect_rep,
    max_flow,
    potential_kitty_pairs,
    rect_turn_regular,
)
from .trees import (
    TreeClass,
    classify,
    convexity_check,
    draw_tree,
    find_forks,
    find_splitters,
    smooth,
)
from .verify import (
    EnumerationBudget,
    brute_force_intersections,
    brute_force_kitty,
    enumerate_rect_reps,
)

__version__ = "0.1.0"
