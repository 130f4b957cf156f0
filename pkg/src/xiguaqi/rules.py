"""Rules engine: states, sliding moves, capture resolution, termination.

A move slides one piece along a single edge onto an empty node.  After
the slide, every opponent group without an empty adjacent node (a group
with zero liberties) is removed from the board.  A player to move loses
when out of pieces or out of legal moves; repeating a position three
times or exhausting the ply cap draws the game.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .board import BoardGraph, BoardError, build_xigua_board

# Default Xi Gua Qi setup: yellow holds the lower outer-ring arc, red the
# upper arc, and red moves first.
DEFAULT_PLACEMENT = {node: 2 for node in range(9, 15)}
DEFAULT_PLACEMENT.update({node: 1 for node in range(15, 21)})
DEFAULT_FIRST_PLAYER = 1


class RuleViolationError(ValueError):
    """Raised when a move or setup breaks a rule precondition."""


class Move(NamedTuple):
    from_node: int
    to_node: int


class CaptureSet(NamedTuple):
    """Cells removed by one move: sorted indices and their prior values."""

    indices: tuple[int, ...]
    values: tuple[int, ...]

    @staticmethod
    def empty() -> "CaptureSet":
        return CaptureSet((), ())


@dataclass(frozen=True)
class RuleConfig:
    """Tunable rule knobs; defaults give the classic game."""

    repetition_limit: int = 3
    ply_cap: int = 200
    min_pieces: int = 1
    allow_suicide: bool = False


DEFAULT_RULES = RuleConfig()


@dataclass(frozen=True)
class Outcome:
    """Terminal result: winner is None for a draw."""

    winner: int | None
    reason: str

    @property
    def is_draw(self) -> bool:
        return self.winner is None


# ---------------------------------------------------------------------------
# Canonical hashing.  One random 64-bit key per (node, value) pair plus one
# per side to move; a state's hash is the XOR of its active keys.  Ply is
# deliberately excluded so repeated positions collide.

_ZOBRIST_CACHE: dict[tuple[int, int], tuple[tuple[tuple[int, ...], ...], tuple[int, int]]] = {}


def _zobrist_tables(n: int, num_values: int):
    key = (n, num_values)
    cached = _ZOBRIST_CACHE.get(key)
    if cached is None:
        rng = random.Random(0x5EED ^ (n << 20) ^ num_values)
        piece_keys = tuple(
            tuple(rng.getrandbits(64) for _ in range(num_values + 1))
            for _ in range(n)
        )
        side_keys = (rng.getrandbits(64), rng.getrandbits(64))
        cached = (piece_keys, side_keys)
        _ZOBRIST_CACHE[key] = cached
    return cached


def canonical_hash(board: BoardGraph, cells: tuple[int, ...], to_move: int) -> int:
    """Full (non-incremental) hash of (cells, to_move)."""
    piece_keys, side_keys = _zobrist_tables(board.n, board.alphabet.empty)
    h = side_keys[to_move - 1]
    for node, value in enumerate(cells):
        h ^= piece_keys[node][value]
    return h


@dataclass(frozen=True)
class GameState:
    board: BoardGraph
    cells: tuple[int, ...]
    to_move: int
    ply: int = 0
    state_hash: int = field(default=-1, compare=False)

    def __post_init__(self) -> None:
        if self.state_hash == -1:
            object.__setattr__(
                self, "state_hash", canonical_hash(self.board, self.cells, self.to_move)
            )

    @property
    def opponent(self) -> int:
        return 3 - self.to_move


def initial_state(
    board: BoardGraph | None = None,
    placement: Mapping[int, int] | Iterable[tuple[int, int]] | None = None,
    to_move: int = DEFAULT_FIRST_PLAYER,
) -> GameState:
    """Set up a game.

    With no arguments, builds the classic board and opening placement
    (six yellow on 9-14, six red on 15-20, red to move).  An explicit
    placement maps node index to cell value and must give each player at
    least one piece; pass pairs rather than a dict to surface duplicate
    node assignments as errors.
    """
    if board is None:
        board = build_xigua_board()
    if placement is None:
        if board.name != "xigua":
            raise RuleViolationError(
                f"board {board.name!r} has no default placement; pass one explicitly"
            )
        placement = DEFAULT_PLACEMENT
    if to_move not in (1, 2):
        raise RuleViolationError(f"to_move must be 1 or 2, got {to_move}")

    pairs = placement.items() if isinstance(placement, Mapping) else placement
    alphabet = board.alphabet
    cells = [alphabet.empty] * board.n
    assigned: set[int] = set()
    for node, value in pairs:
        if not 0 <= node < board.n:
            raise RuleViolationError(f"placement node {node} outside 0..{board.n - 1}")
        if node in assigned:
            raise RuleViolationError(f"placement assigns node {node} twice")
        try:
            owner = alphabet.owner(value)
        except BoardError as exc:
            raise RuleViolationError(str(exc)) from exc
        if owner is None:
            raise RuleViolationError(
                f"placement value {value} at node {node} is the empty marker"
            )
        assigned.add(node)
        cells[node] = value

    for player in (1, 2):
        if not any(alphabet.owner(v) == player for v in cells if v != alphabet.empty):
            raise RuleViolationError(f"placement gives player {player} no pieces")
    return GameState(board=board, cells=tuple(cells), to_move=to_move, ply=0)


def degrees_of_freedom(state: GameState, player: int) -> int:
    """Piece count for one side; the positional currency of the game."""
    values = state.board.alphabet.values_for(player)
    cells = state.cells
    return sum(cells.count(v) for v in values)


def legal_moves(state: GameState) -> list[Move]:
    """All (from, to) slides for the side to move, sorted ascending.

    A slide vacates its source, and source and destination are adjacent,
    so the moved piece always keeps the source as a liberty: no slide is
    ever suicide.  The suicide prohibition therefore filters nothing.
    """
    alphabet = state.board.alphabet
    empty = alphabet.empty
    own = alphabet.values_for(state.to_move)
    cells = state.cells
    adjacency = state.board.adjacency
    moves = []
    for node, value in enumerate(cells):
        if value in own:
            for nbr in adjacency[node]:
                if cells[nbr] == empty:
                    moves.append(Move(node, nbr))
    return moves


def has_any_legal_move(state: GameState) -> bool:
    """Early-exit form of legal_moves for terminal checks."""
    alphabet = state.board.alphabet
    empty = alphabet.empty
    own = alphabet.values_for(state.to_move)
    cells = state.cells
    adjacency = state.board.adjacency
    for node, value in enumerate(cells):
        if value in own:
            for nbr in adjacency[node]:
                if cells[nbr] == empty:
                    return True
    return False


def _group_and_liberties(
    board: BoardGraph, cells: list[int] | tuple[int, ...], start: int, owner: int
) -> tuple[list[int], int]:
    """Flood-fill the connected same-owner group at start.

    Returns (group nodes, liberty count), where liberties are distinct
    empty nodes adjacent to the group.
    """
    alphabet = board.alphabet
    empty = alphabet.empty
    own = alphabet.values_for(owner)
    seen = {start}
    group = [start]
    liberties: set[int] = set()
    stack = [start]
    while stack:
        node = stack.pop()
        for nbr in board.adjacency[node]:
            value = cells[nbr]
            if value == empty:
                liberties.add(nbr)
            elif value in own and nbr not in seen:
                seen.add(nbr)
                group.append(nbr)
                stack.append(nbr)
    return group, len(liberties)


def blocked_groups(state: GameState, player: int) -> list[tuple[int, ...]]:
    """Maximal connected groups of player's pieces with zero liberties.

    Each group is returned as a sorted node tuple; the list is sorted by
    lowest member.
    """
    return _blocked_groups_in(state.board, state.cells, player)


def _blocked_groups_in(
    board: BoardGraph, cells: list[int] | tuple[int, ...], player: int
) -> list[tuple[int, ...]]:
    alphabet = board.alphabet
    own = alphabet.values_for(player)
    visited: set[int] = set()
    blocked = []
    for node, value in enumerate(cells):
        if value in own and node not in visited:
            group, libs = _group_and_liberties(board, cells, node, player)
            visited.update(group)
            if libs == 0:
                blocked.append(tuple(sorted(group)))
    blocked.sort()
    return blocked


def apply_move(
    state: GameState, move: Move, config: RuleConfig = DEFAULT_RULES
) -> tuple[GameState, CaptureSet]:
    """Execute a slide and resolve captures.

    Raises RuleViolationError naming the failed precondition.  Opponent
    groups left without liberties are removed first; with allow_suicide
    the mover's own blocked groups (possible only via unusual custom
    placements) are then removed as well.
    """
    board = state.board
    alphabet = board.alphabet
    from_node, to_node = move
    if not (0 <= from_node < board.n and 0 <= to_node < board.n):
        raise RuleViolationError(f"move {move} outside board 0..{board.n - 1}")
    value = state.cells[from_node]
    if alphabet.owner(value) != state.to_move:
        raise RuleViolationError(
            f"source {from_node} does not hold a player-{state.to_move} piece"
        )
    if state.cells[to_node] != alphabet.empty:
        raise RuleViolationError(f"destination {to_node} is not empty")
    if to_node not in board.adjacency[from_node]:
        raise RuleViolationError(f"nodes {from_node} and {to_node} are not adjacent")

    cells = list(state.cells)
    cells[from_node] = alphabet.empty
    cells[to_node] = value

    captured: dict[int, int] = {}
    mover = state.to_move
    for group in _blocked_groups_in(board, cells, 3 - mover):
        for node in group:
            captured[node] = cells[node]
            cells[node] = alphabet.empty
    if config.allow_suicide:
        for group in _blocked_groups_in(board, cells, mover):
            for node in group:
                captured[node] = cells[node]
                cells[node] = alphabet.empty

    indices = tuple(sorted(captured))
    captures = CaptureSet(indices, tuple(captured[i] for i in indices))

    piece_keys, side_keys = _zobrist_tables(board.n, alphabet.empty)
    h = state.state_hash
    h ^= piece_keys[from_node][value] ^ piece_keys[from_node][alphabet.empty]
    h ^= piece_keys[to_node][alphabet.empty] ^ piece_keys[to_node][value]
    for node, old in captured.items():
        h ^= piece_keys[node][old] ^ piece_keys[node][alphabet.empty]
    h ^= side_keys[mover - 1] ^ side_keys[2 - mover]

    new_state = GameState(
        board=board,
        cells=tuple(cells),
        to_move=3 - mover,
        ply=state.ply + 1,
        state_hash=h,
    )
    return new_state, captures


REASON_NO_PIECES = "no-pieces"
REASON_NO_MOVES = "no-moves"
REASON_REPETITION = "repetition"
REASON_PLY_CAP = "ply-cap"


def terminal_status(
    state: GameState,
    history: Mapping[int, int] | None = None,
    config: RuleConfig = DEFAULT_RULES,
) -> Outcome | None:
    """Outcome if the game is over, else None.

    history maps canonical hash to occurrence count and must include the
    current state.  Loss conditions are checked before draw conditions,
    so a player with no pieces loses even at the ply cap.
    """
    if degrees_of_freedom(state, state.to_move) < config.min_pieces:
        return Outcome(winner=state.opponent, reason=REASON_NO_PIECES)
    if not has_any_legal_move(state):
        return Outcome(winner=state.opponent, reason=REASON_NO_MOVES)
    if history is not None and history.get(state.state_hash, 0) >= config.repetition_limit:
        return Outcome(winner=None, reason=REASON_REPETITION)
    if state.ply >= config.ply_cap:
        return Outcome(winner=None, reason=REASON_PLY_CAP)
    return None
