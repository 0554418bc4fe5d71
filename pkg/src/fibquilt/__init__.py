"""Fibonacci Quilt sequence, decompositions, and the two-player quilt game."""

from .sequence import QuiltSequence, generate, index_of_value, verify_identities
from .decomposition import (
    Decomposition,
    enumerate_decompositions,
    extremal_counts,
    is_fq_legal,
    sequence_from_definition,
)
from .engine import (
    GameRecord,
    GameState,
    IllegalMoveError,
    Move,
    apply_move,
    initial_state,
    is_terminal,
    legal_moves,
    monovariant,
    parse_move,
    parse_state,
    replay,
    serialize_move,
    serialize_state,
)
from .analysis import (
    GameGraphSummary,
    SearchBudgetExceeded,
    enumerate_games,
    game_graph_summary,
    min_game_length,
    reachable_parities,
    shortest_game,
    solve_winner,
    two_term_split_check,
)
from .simulation import (
    DEFAULT_SEED,
    LengthDistribution,
    gaussian_moment_diffs,
    random_playout,
    run_distribution,
)

__version__ = "0.1.0"
