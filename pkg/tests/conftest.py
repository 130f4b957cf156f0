"""Shared fixtures and independent oracles used across the suite."""

from __future__ import annotations

import random
from collections import Counter

import pytest

from xiguaqi.board import BoardGraph, build_xigua_board
from xiguaqi.rules import (
    GameState,
    apply_move,
    initial_state,
    legal_moves,
    terminal_status,
)


@pytest.fixture(scope="session")
def xigua() -> BoardGraph:
    return build_xigua_board()


@pytest.fixture()
def start_state() -> GameState:
    return initial_state()


def tree_blocked_groups(board: BoardGraph, cells, player: int) -> list[tuple[int, ...]]:
    """Independent capture oracle: expand each group as a tree of nodes.

    Same-owner neighbors become internal nodes, everything else becomes a
    leaf carrying its cell value.  A group is captured exactly when no
    leaf is an empty cell.  Deliberately written as recursion over leaf
    values rather than liberty counting so it shares no code path with
    the engine's flood-fill.
    """
    alphabet = board.alphabet
    own = set(alphabet.values_for(player))
    empty = alphabet.empty
    visited: set[int] = set()
    blocked: list[tuple[int, ...]] = []

    def expand(node: int, group: set[int], leaves: list[int]) -> None:
        group.add(node)
        for nb in board.adjacency[node]:
            if cells[nb] in own:
                if nb not in group:
                    expand(nb, group, leaves)
            else:
                leaves.append(cells[nb])

    for start in range(board.n):
        if cells[start] in own and start not in visited:
            group: set[int] = set()
            leaves: list[int] = []
            expand(start, group, leaves)
            visited |= group
            if all(value != empty for value in leaves):
                blocked.append(tuple(sorted(group)))
    return sorted(blocked)


def random_cells(board: BoardGraph, rng: random.Random, fill: float) -> tuple[int, ...]:
    """Arbitrary occupancy vector (not necessarily reachable by play)."""
    alphabet = board.alphabet
    piece_values = list(range(1, alphabet.two_max + 1))
    cells = []
    for _ in range(board.n):
        if rng.random() < fill:
            cells.append(rng.choice(piece_values))
        else:
            cells.append(alphabet.empty)
    return tuple(cells)


def random_playout_position(seed: int, min_plies: int = 30, max_plies: int = 120) -> GameState | None:
    """A reachable non-terminal midgame position, or None if play ended."""
    rng = random.Random(seed)
    state = initial_state()
    history: Counter[int] = Counter([state.state_hash])
    for _ in range(rng.randrange(min_plies, max_plies + 1)):
        if terminal_status(state, history) is not None:
            return None
        state, _ = apply_move(state, rng.choice(legal_moves(state)))
        history[state.state_hash] += 1
    return state if terminal_status(state, history) is None else None


def reachable_positions(count: int, seed0: int = 0) -> list[GameState]:
    positions = []
    seed = seed0
    while len(positions) < count:
        position = random_playout_position(seed)
        seed += 1
        if position is not None:
            positions.append(position)
    return positions
