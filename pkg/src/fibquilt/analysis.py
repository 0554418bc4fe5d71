"""Exhaustive game analysis: shortest games, parities, optimal-play winner.

All searches run over the graph of reachable states keyed by the canonical
(index, multiplicity) form.  The graph is acyclic: every move except R2a
strictly lowers the monovariant, and a cycle through R2a would need R2a
twice on one path, which the gate forbids.  Budgets are counted in states,
not in n, since state growth is irregular.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass, field

from .decomposition import is_fq_legal
from .engine import (
    GameRecord,
    GameState,
    Move,
    apply_move,
    initial_state,
    legal_moves,
)
from .sequence import generate

DEFAULT_MAX_STATES = 5_000_000


class SearchBudgetExceeded(Exception):
    """State-count budget hit; carries the number of states completed."""

    def __init__(self, states_seen: int, max_states: int):
        self.states_seen = states_seen
        self.max_states = max_states
        super().__init__(
            f"search exceeded budget of {max_states} states ({states_seen} completed)"
        )


StateKey = tuple[tuple[int, int], ...]


def _expand(key: StateKey, total: int) -> list[tuple[Move, StateKey]]:
    state = GameState(counts=dict(key), total=total)
    return [(m, apply_move(state, m).key()) for m in legal_moves(state)]


def min_game_length(n: int, max_states: int = DEFAULT_MAX_STATES) -> int:
    """Fewest moves from the opening to any terminal state (BFS depth)."""
    return len(shortest_game(n, max_states).moves)


def shortest_game(n: int, max_states: int = DEFAULT_MAX_STATES) -> GameRecord:
    """A witness shortest game, reconstructed from BFS parent pointers.

    A shortest game has n - L(n) moves, so every move must shed a term:
    the witness never uses the two-terms-to-two-terms rules.
    """
    start = initial_state(n).key()
    parent: dict[StateKey, tuple[StateKey, Move] | None] = {start: None}
    frontier = deque([start])
    while frontier:
        key = frontier.popleft()
        succ = _expand(key, n)
        if not succ:
            moves: list[Move] = []
            cur = key
            while parent[cur] is not None:
                cur, m = parent[cur]
                moves.append(m)
            moves.reverse()
            final = tuple(sorted((i for i, _ in key), reverse=True))
            return GameRecord(n=n, moves=tuple(moves), final=final)
        for m, child in succ:
            if child not in parent:
                if len(parent) >= max_states:
                    raise SearchBudgetExceeded(len(parent), max_states)
                parent[child] = (key, m)
                frontier.append(child)
    raise AssertionError("no terminal state reached")  # monovariant forces termination


@dataclass
class EnumeratedGames:
    """All maximal move sequences on n, possibly cut off at cap."""

    n: int
    games: list[GameRecord]
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.games)


def enumerate_games(n: int, cap: int = 100_000) -> EnumeratedGames:
    """Every distinct complete game on n, in lexicographic move order.

    Distinct games are distinct move sequences; the count grows factorially,
    hence the n <= 10 limit.
    """
    if n > 10:
        raise ValueError("game enumeration is limited to n <= 10")
    result = EnumeratedGames(n=n, games=[])

    def walk(state: GameState, path: list[Move]) -> bool:
        moves = legal_moves(state)
        if not moves:
            if len(result.games) >= cap:
                result.truncated = True
                return False
            final = tuple(sorted(state.counts, reverse=True))
            result.games.append(GameRecord(n=n, moves=tuple(path), final=final))
            return True
        for m in moves:
            path.append(m)
            keep_going = walk(apply_move(state, m), path)
            path.pop()
            if not keep_going:
                return False
        return True

    walk(initial_state(n), [])
    return result


def reachable_parities(n: int, max_states: int = DEFAULT_MAX_STATES) -> frozenset[str]:
    """Which game-length parities occur on n.

    Different routes can reach one state in differing move counts (the
    two-to-two rules keep the term count), so the search runs over
    (state, parity) pairs rather than bare states.
    """
    start = (initial_state(n).key(), 0)
    seen = {start}
    frontier = deque([start])
    found: set[str] = set()
    while frontier:
        key, parity = frontier.popleft()
        succ = _expand(key, n)
        if not succ:
            found.add("even" if parity == 0 else "odd")
            if len(found) == 2:
                break
            continue
        for _, child in succ:
            nxt = (child, parity ^ 1)
            if nxt not in seen:
                if len(seen) >= max_states:
                    raise SearchBudgetExceeded(len(seen), max_states)
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(found)


def solve_winner(
    n: int, max_states: int = DEFAULT_MAX_STATES
) -> tuple[str, dict[StateKey, Move]]:
    """Optimal-play winner plus one winning move per mover-win state.

    Backward induction over the acyclic reachable graph: a state wins for
    the mover iff some move reaches a state that loses for its mover;
    terminal states lose (no move, last-mover-wins).
    """
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 1000))
    strategy: dict[StateKey, Move] = {}
    memo: dict[StateKey, bool] = {}

    def wins(key: StateKey) -> bool:
        cached = memo.get(key)
        if cached is not None:
            return cached
        if len(memo) >= max_states:
            raise SearchBudgetExceeded(len(memo), max_states)
        memo[key] = False  # graph is acyclic; placeholder never read back
        result = False
        for m, child in _expand(key, n):
            if not wins(child):
                strategy[key] = m
                result = True
                break
        memo[key] = result
        return result

    first = wins(initial_state(n).key())
    return ("Player1" if first else "Player2"), strategy


def two_term_split_check(i: int) -> list[tuple[int, int]]:
    """All FQ-legal index pairs (a, b) with q_a + q_b = 2 * q_i, by brute force.

    For i >= 7 the unique answer is (i-5, i+2); i = 4 and i = 6 each admit
    two splits (the player-choice rules R3d and R3f).
    """
    if not 3 <= i <= 30:
        raise ValueError("split check supports 3 <= i <= 30")
    seq = generate(i + 5)
    target = 2 * seq.value(i)
    pairs = []
    for a in range(1, seq.max_index + 1):
        for b in range(a + 1, seq.max_index + 1):
            if seq.value(a) + seq.value(b) == target and is_fq_legal((a, b)):
                pairs.append((a, b))
    return pairs


@dataclass
class GameGraphSummary:
    """Shape of the game on n: state count, length range, parities, winner."""

    n: int
    reachable_states: int | None = None
    min_length: int | None = None
    max_length: int | None = None
    max_length_kind: str | None = None  # "exact" from search, "observed" from sampling
    parities: list[str] = field(default_factory=list)
    winner_optimal: str | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "reachable_states": self.reachable_states,
            "min_length": self.min_length,
            "max_length": self.max_length,
            "max_length_kind": self.max_length_kind,
            "parities": self.parities,
            "winner_optimal": self.winner_optimal,
        }


def longest_game_length(n: int, max_states: int = DEFAULT_MAX_STATES) -> tuple[int, int]:
    """(max game length, reachable state count) by DP over the acyclic graph."""
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 1000))
    memo: dict[StateKey, int] = {}

    def longest(key: StateKey) -> int:
        cached = memo.get(key)
        if cached is not None:
            return cached
        if len(memo) >= max_states:
            raise SearchBudgetExceeded(len(memo), max_states)
        memo[key] = 0
        best = 0
        for _, child in _expand(key, n):
            best = max(best, 1 + longest(child))
        memo[key] = best
        return best

    result = longest(initial_state(n).key())
    return result, len(memo)


def game_graph_summary(
    n: int,
    max_states: int = DEFAULT_MAX_STATES,
    include: tuple[str, ...] = ("min-length", "max-length", "parities", "winner"),
    observed_samples: int = 200,
) -> GameGraphSummary:
    """Assemble the summary, computing only the requested sections.

    When the exact longest-path search blows the state budget, max_length
    falls back to the longest of `observed_samples` random games and is
    labeled "observed"; there is no proven upper bound on game length.
    """
    summary = GameGraphSummary(n=n)
    if "min-length" in include:
        summary.min_length = min_game_length(n, max_states)
    if "max-length" in include:
        try:
            summary.max_length, summary.reachable_states = longest_game_length(n, max_states)
            summary.max_length_kind = "exact"
        except SearchBudgetExceeded:
            from .simulation import DEFAULT_SEED, random_playout, trial_seed

            summary.max_length = max(
                random_playout(n, trial_seed(DEFAULT_SEED, t)).length
                for t in range(observed_samples)
            )
            summary.max_length_kind = "observed"
    if "parities" in include:
        summary.parities = sorted(reachable_parities(n, max_states))
    if "winner" in include:
        summary.winner_optimal, _ = solve_winner(n, max_states)
    return summary

