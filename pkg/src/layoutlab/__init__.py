"""Graph-layout scoring, annealing, clue generation, and game orchestration."""

from .annealing import (
    AnnealResult,
    AnnealSchedule,
    SegmentKind,
    acceptance_probability,
    propose_move,
    run_repeated,
    run_schedule,
)
from .clues import Clue, clue_for, dp_clue, ec_clue, el_clue, nd_clue, ned_clue
from .errors import ContractViolation, DocumentError, PathCountCapExceeded
from .geometry import (
    in_bounds,
    is_downward_edge,
    point_segment_distance,
    scale_selection,
    segments_cross,
)
from .model import (
    BoundingBox,
    Edge,
    Layout,
    Network,
    Node,
    NodeRole,
    Point,
    network_from_edges,
    random_layout,
)
from .scoring import (
    CRITERIA,
    Criterion,
    Priorities,
    ScoreBreakdown,
    ScoringParams,
    count_downward_paths,
    count_simple_paths,
    dp_score,
    ec_score,
    el_score,
    engine_for,
    nd_score,
    ned_score,
    overall_score,
)
from .sessions import (
    ActorKind,
    AgentPolicy,
    Approach,
    BestLayoutRegistry,
    GameConfig,
    ModeStrategy,
    Session,
    TurnKind,
    assign_modes,
    compute_bonus,
    finalize_session,
    next_actor,
    run_scripted_agent,
    run_sequence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
