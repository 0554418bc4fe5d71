"""Two-player quilt game engine: states, legal moves, and the monovariant.

A game on n starts from n copies of q1 = 1.  Each move removes a pair of
terms that could not legally coexist (equal, consecutive, distance 3 or 4,
or the {q1,q3} pair) and replaces it with one or two terms of the same
total value.  The game ends when the remaining multiset is an FQ-legal
decomposition of n; the player who made the last move wins.

The full move table, one row per rule tag:

    R1a          q1 ^ q2          -> q3
    R1b (i>=2)   qi ^ q(i+1)      -> q(i+3)
    R2a          q1 ^ q5          -> q2 ^ q4     (only when no other move exists)
    R2b (i>=2)   qi ^ q(i+4)      -> q(i+5)
    R3a          q1 ^ q1          -> q2
    R3b          q2 ^ q2          -> q4
    R3c          q3 ^ q3          -> q2 ^ q4
    R3d          q4 ^ q4          -> q1 ^ q6  (A)  or  q3 ^ q5  (B)
    R3e          q5 ^ q5          -> q1 ^ q7
    R3f          q6 ^ q6          -> q2 ^ q8  (A)  or  q5 ^ q7  (B)
    R3g (i>=7)   qi ^ qi          -> q(i-5) ^ q(i+2)
    R4a (i=1,2)  qi ^ q(i+3)      -> q(i+4)
    R4b          q3 ^ q6          -> q1 ^ q7
    R4c (i=4,5)  qi ^ q(i+3)      -> q1 ^ q(i+4)
    R4d          q6 ^ q9          -> q2 ^ q10
    R4e (i>=7)   qi ^ q(i+3)      -> q(i-5) ^ q(i+4)
    R5           q1 ^ q3          -> q4

Correction note (R3f variant B): the source rule set pairs q6^2 with
q3 ^ q7, which maps total value 14 to 12 and breaks conservation of n.
This engine instead uses q5 ^ q7 (5 + 9 = 14, index distance 2, legal),
the only other two-term split of 14; brute force over all index pairs
confirms {2,8} and {5,7} are the only legal splits.  The correction is
flagged wherever the rules are listed.

Every move except R2a strictly decreases the sum of sqrt(index) over the
list (the termination monovariant); R2a raises it by exactly
sqrt(2) + 2 - 1 - sqrt(5) and can fire at most once per game, because it
is only legal when no other move exists.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .decomposition import is_fq_legal

R3F_CORRECTION_NOTE = (
    "R3f variant B replaces the published alternative q6^2 -> q3 ^ q7 "
    "(which maps 14 to 12, breaking value conservation) with the only "
    "other sum-preserving legal two-term split, q6^2 -> q5 ^ q7."
)


class Move(NamedTuple):
    """One rule application: tag, optional index parameter, optional variant."""

    rule: str
    i: int | None = None
    variant: str | None = None


class IllegalMoveError(Exception):
    """Raised by apply_move; reason is 'not-applicable' or 'gated'."""

    def __init__(self, move: Move, reason: str):
        self.move = move
        self.reason = reason
        super().__init__(f"illegal move {serialize_move(move)}: {reason}")


class MoveFormatError(ValueError):
    pass


# rules with a free index parameter, and their allowed range check
_PARAM_RULES = {
    "R1b": lambda i: i >= 2,
    "R2b": lambda i: i >= 2,
    "R3g": lambda i: i >= 7,
    "R4a": lambda i: i in (1, 2),
    "R4c": lambda i: i in (4, 5),
    "R4e": lambda i: i >= 7,
}
_VARIANT_RULES = ("R3d", "R3f")
_FIXED_RULES = ("R1a", "R2a", "R3a", "R3b", "R3c", "R3e", "R4b", "R4d", "R5")
ALL_RULE_TAGS = (
    "R1a", "R1b", "R2a", "R2b", "R3a", "R3b", "R3c", "R3d", "R3e", "R3f",
    "R3g", "R4a", "R4b", "R4c", "R4d", "R4e", "R5",
)


def validate_move(m: Move) -> None:
    if m.rule in _PARAM_RULES:
        if m.i is None or not _PARAM_RULES[m.rule](m.i):
            raise MoveFormatError(f"{m.rule} requires a valid index parameter, got i={m.i}")
        if m.variant is not None:
            raise MoveFormatError(f"{m.rule} carries no variant")
    elif m.rule in _VARIANT_RULES:
        if m.variant not in ("A", "B") or m.i is not None:
            raise MoveFormatError(f"{m.rule} requires variant A or B and no index")
    elif m.rule in _FIXED_RULES:
        if m.i is not None or m.variant is not None:
            raise MoveFormatError(f"{m.rule} carries no parameters")
    else:
        raise MoveFormatError(f"unknown rule tag {m.rule!r}")


def move_effect(m: Move) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(consumed indices, produced indices) for a validated move."""
    r, i = m.rule, m.i
    if r == "R1a":
        return (1, 2), (3,)
    if r == "R1b":
        return (i, i + 1), (i + 3,)
    if r == "R2a":
        return (1, 5), (2, 4)
    if r == "R2b":
        return (i, i + 4), (i + 5,)
    if r == "R3a":
        return (1, 1), (2,)
    if r == "R3b":
        return (2, 2), (4,)
    if r == "R3c":
        return (3, 3), (2, 4)
    if r == "R3d":
        return (4, 4), (1, 6) if m.variant == "A" else (3, 5)
    if r == "R3e":
        return (5, 5), (1, 7)
    if r == "R3f":
        return (6, 6), (2, 8) if m.variant == "A" else (5, 7)
    if r == "R3g":
        return (i, i), (i - 5, i + 2)
    if r == "R4a":
        return (i, i + 3), (i + 4,)
    if r == "R4b":
        return (3, 6), (1, 7)
    if r == "R4c":
        return (i, i + 3), (1, i + 4)
    if r == "R4d":
        return (6, 9), (2, 10)
    if r == "R4e":
        return (i, i + 3), (i - 5, i + 4)
    if r == "R5":
        return (1, 3), (4,)
    raise MoveFormatError(f"unknown rule tag {r!r}")


def monovariant_delta(m: Move) -> float:
    """Change in sum(sqrt(index)); negative for every rule except R2a."""
    consumed, produced = move_effect(m)
    return sum(math.sqrt(j) for j in produced) - sum(math.sqrt(j) for j in consumed)


# Moves that take two terms to one; a shortest game uses only these.
REDUCING_RULES = frozenset({"R1a", "R1b", "R2b", "R3a", "R3b", "R4a", "R5"})


@dataclass(frozen=True)
class GameState:
    """Multiset of quilt indices with a conserved total value.

    counts maps index -> multiplicity (> 0).  Value types: apply_move
    returns a fresh state, so instances can be shared freely.
    """

    counts: dict[int, int]
    total: int

    def key(self) -> tuple[tuple[int, int], ...]:
        """Canonical hashable form: sorted (index, multiplicity) pairs."""
        return tuple(sorted(self.counts.items()))

    def multiplicity(self, i: int) -> int:
        return self.counts.get(i, 0)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.counts))

    def __str__(self) -> str:
        return serialize_state(self)


def initial_state(n: int) -> GameState:
    """The opening list: n copies of index 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return GameState(counts={1: n}, total=n)


def state_from_counts(counts: dict[int, int], seq_values=None) -> GameState:
    """Build a state from an index->multiplicity map, deriving the total."""
    if any(c < 1 for c in counts.values()) or any(i < 1 for i in counts):
        raise ValueError("indices and multiplicities must be >= 1")
    from .sequence import generate

    top = max(counts)
    seq = generate(max(top, 5))
    total = sum(seq.value(i) * c for i, c in counts.items())
    return GameState(counts=dict(counts), total=total)


def legal_moves(state: GameState) -> list[Move]:
    """All applicable moves, in canonical (tag, i, variant) order.

    Each (rule, i, variant) appears once regardless of how many copies of
    the consumed terms are present.  R2a is gated: it is listed only when
    nothing else is, which is what bounds it to once per game.
    """
    counts = state.counts
    has = counts.__contains__
    idxs = sorted(counts)
    out: list[Move] = []
    if has(1) and has(2):
        out.append(Move("R1a"))
    for i in idxs:
        if i >= 2 and has(i + 1):
            out.append(Move("R1b", i))
    for i in idxs:
        if i >= 2 and has(i + 4):
            out.append(Move("R2b", i))
    if counts.get(1, 0) >= 2:
        out.append(Move("R3a"))
    if counts.get(2, 0) >= 2:
        out.append(Move("R3b"))
    if counts.get(3, 0) >= 2:
        out.append(Move("R3c"))
    if counts.get(4, 0) >= 2:
        out.append(Move("R3d", variant="A"))
        out.append(Move("R3d", variant="B"))
    if counts.get(5, 0) >= 2:
        out.append(Move("R3e"))
    if counts.get(6, 0) >= 2:
        out.append(Move("R3f", variant="A"))
        out.append(Move("R3f", variant="B"))
    for i in idxs:
        if i >= 7 and counts[i] >= 2:
            out.append(Move("R3g", i))
    for i in (1, 2):
        if has(i) and has(i + 3):
            out.append(Move("R4a", i))
    if has(3) and has(6):
        out.append(Move("R4b"))
    for i in (4, 5):
        if has(i) and has(i + 3):
            out.append(Move("R4c", i))
    if has(6) and has(9):
        out.append(Move("R4d"))
    for i in idxs:
        if i >= 7 and has(i + 3):
            out.append(Move("R4e", i))
    if has(1) and has(3):
        out.append(Move("R5"))
    if not out and has(1) and has(5):
        out.append(Move("R2a"))
    return out


def apply_move(state: GameState, m: Move) -> GameState:
    """Apply a legal move, returning the successor state.

    Raises IllegalMoveError with reason 'gated' when R2a is attempted
    while other moves exist, 'not-applicable' otherwise.
    """
    validate_move(m)
    consumed, produced = move_effect(m)
    counts = state.counts
    need: dict[int, int] = {}
    for j in consumed:
        need[j] = need.get(j, 0) + 1
    if any(counts.get(j, 0) < c for j, c in need.items()):
        raise IllegalMoveError(m, "not-applicable")
    if m.rule == "R2a":
        others = legal_moves(state)
        if others != [Move("R2a")]:
            raise IllegalMoveError(m, "gated")
    new_counts = dict(counts)
    for j in consumed:
        left = new_counts[j] - 1
        if left:
            new_counts[j] = left
        else:
            del new_counts[j]
    for j in produced:
        new_counts[j] = new_counts.get(j, 0) + 1
    return GameState(counts=new_counts, total=state.total)


def is_terminal(state: GameState) -> bool:
    """No move applies; equivalently the list is an FQ-legal decomposition."""
    return not legal_moves(state)


def monovariant(state: GameState) -> float:
    """Sum of multiplicity * sqrt(index); drives termination."""
    return sum(c * math.sqrt(i) for i, c in state.counts.items())


def terminal_decomposition(state: GameState) -> tuple[int, ...]:
    """The final index tuple (decreasing) of a terminal state."""
    if not is_terminal(state):
        raise ValueError("state is not terminal")
    assert all(c == 1 for c in state.counts.values())
    return tuple(sorted(state.counts, reverse=True))


# --- serialization -----------------------------------------------------------

_MOVE_RE = re.compile(r"^(R[1-5][a-g]?)(?::i=(\d+))?(?::([AB]))?$")


def serialize_move(m: Move) -> str:
    s = m.rule
    if m.i is not None:
        s += f":i={m.i}"
    if m.variant is not None:
        s += f":{m.variant}"
    return s


def parse_move(text: str) -> Move:
    match = _MOVE_RE.match(text.strip())
    if not match:
        raise MoveFormatError(f"cannot parse move {text!r}")
    rule, i, variant = match.groups()
    m = Move(rule, int(i) if i is not None else None, variant)
    validate_move(m)
    return m


def serialize_state(state: GameState) -> str:
    inner = ",".join(f"{i}^{c}" for i, c in sorted(state.counts.items()))
    return "{" + inner + "}"


_STATE_ITEM_RE = re.compile(r"^(\d+)\^(\d+)$")


def parse_state(text: str) -> GameState:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"cannot parse state {text!r}")
    counts: dict[int, int] = {}
    for item in text[1:-1].split(","):
        match = _STATE_ITEM_RE.match(item.strip())
        if not match:
            raise ValueError(f"cannot parse state item {item!r}")
        i, c = int(match.group(1)), int(match.group(2))
        if i in counts:
            raise ValueError(f"duplicate index {i} in state {text!r}")
        counts[i] = c
    return state_from_counts(counts)


def rewrite_text(m: Move) -> str:
    """Human-readable rewrite, e.g. 'q2 ^ q3 -> q5'."""
    consumed, produced = move_effect(m)
    lhs = " ^ ".join(f"q{j}" for j in consumed)
    rhs = " ^ ".join(f"q{j}" for j in produced)
    return f"{lhs} -> {rhs}"


def rule_table() -> list[dict]:
    """Structured rule listing for the CLI and the service /meta/rules."""
    rows = [
        {"rule": "R1a", "pattern": "q1 ^ q2 -> q3", "parameter": None},
        {"rule": "R1b", "pattern": "qi ^ q(i+1) -> q(i+3)", "parameter": "i >= 2"},
        {"rule": "R2a", "pattern": "q1 ^ q5 -> q2 ^ q4",
         "parameter": None, "gated": "legal only when no other move exists"},
        {"rule": "R2b", "pattern": "qi ^ q(i+4) -> q(i+5)", "parameter": "i >= 2"},
        {"rule": "R3a", "pattern": "q1 ^ q1 -> q2", "parameter": None},
        {"rule": "R3b", "pattern": "q2 ^ q2 -> q4", "parameter": None},
        {"rule": "R3c", "pattern": "q3 ^ q3 -> q2 ^ q4", "parameter": None},
        {"rule": "R3d", "pattern": "q4 ^ q4 -> q1 ^ q6 (A) | q3 ^ q5 (B)",
         "parameter": "variant A|B"},
        {"rule": "R3e", "pattern": "q5 ^ q5 -> q1 ^ q7", "parameter": None},
        {"rule": "R3f", "pattern": "q6 ^ q6 -> q2 ^ q8 (A) | q5 ^ q7 (B)",
         "parameter": "variant A|B", "note": R3F_CORRECTION_NOTE},
        {"rule": "R3g", "pattern": "qi ^ qi -> q(i-5) ^ q(i+2)", "parameter": "i >= 7"},
        {"rule": "R4a", "pattern": "qi ^ q(i+3) -> q(i+4)", "parameter": "i in {1,2}"},
        {"rule": "R4b", "pattern": "q3 ^ q6 -> q1 ^ q7", "parameter": None},
        {"rule": "R4c", "pattern": "qi ^ q(i+3) -> q1 ^ q(i+4)", "parameter": "i in {4,5}"},
        {"rule": "R4d", "pattern": "q6 ^ q9 -> q2 ^ q10", "parameter": None},
        {"rule": "R4e", "pattern": "qi ^ q(i+3) -> q(i-5) ^ q(i+4)", "parameter": "i >= 7"},
        {"rule": "R5", "pattern": "q1 ^ q3 -> q4", "parameter": None},
    ]
    return rows


# --- records and replay ------------------------------------------------------


@dataclass(frozen=True)
class GameRecord:
    """A complete play: moves from {q1^n} to a terminal decomposition."""

    n: int
    moves: tuple[Move, ...]
    final: tuple[int, ...]
    seed: int | None = None

    @property
    def length(self) -> int:
        return len(self.moves)

    @property
    def winner(self) -> str:
        # last mover wins; a zero-move game means Player1 has no move and loses
        return "Player1" if self.length % 2 == 1 else "Player2"


def replay(n: int, moves: Iterable[Move], require_terminal: bool = True) -> GameRecord:
    """Validate a move sequence from the opening; raises on the first illegal move."""
    state = initial_state(n)
    applied: list[Move] = []
    for m in moves:
        try:
            state = apply_move(state, m)
        except IllegalMoveError as exc:
            raise IllegalMoveError(m, f"{exc.reason} at move {len(applied) + 1}") from exc
        applied.append(m)
    if require_terminal and not is_terminal(state):
        raise ValueError(f"sequence ends at non-terminal state {serialize_state(state)}")
    final = tuple(sorted(state.counts, reverse=True)) if is_terminal(state) else ()
    if final and not is_fq_legal(final):
        raise AssertionError(f"terminal state {final} is not FQ-legal")
    return GameRecord(n=n, moves=tuple(applied), final=final)
