"""Xi Gua Qi: a sliding-capture board game engine.

Provides the board graph, rules engine, min-max solver, per-move
transition-matrix verification, a self-play dataset pipeline, and a
JSON-over-HTTP service.  The ``xigua`` CLI exposes all workflows.
"""

from .board import BoardGraph, PieceAlphabet, build_custom_board, build_xigua_board
from .rules import (
    CaptureSet,
    GameState,
    Move,
    Outcome,
    RuleConfig,
    RuleViolationError,
    apply_move,
    blocked_groups,
    degrees_of_freedom,
    initial_state,
    legal_moves,
    terminal_status,
)
from .records import GameRecord, TrajectoryClass, classify_trajectory
from .algebra import (
    TransitionMatrix,
    build_transition_matrix_q,
    build_transition_matrix_y,
    check_ring_axioms,
    classify_matrix,
    nonclosure_witnesses,
)
from .search import SearchConfig, SearchResult, evaluate, minmax_search, play_game

__version__ = "0.1.0"
