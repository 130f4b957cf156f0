"""Min-max solver over piece mobility, plus self-play policies.

The evaluation is the degrees-of-freedom balance (own piece count minus
the opponent's by default) with large sentinel scores for decided
positions, scaled by remaining depth so the solver prefers quick wins
and slow losses.  Search is negamax with optional alpha-beta pruning
and an exact-value transposition table; both options are guaranteed not
to change the chosen (move, score) at the root.  Ties break toward the
lowest (from, to) pair unless randomized tie-breaking is requested.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .board import BoardGraph
from .records import GameRecord
from .rules import (
    DEFAULT_RULES,
    GameState,
    Move,
    RuleConfig,
    apply_move,
    degrees_of_freedom,
    has_any_legal_move,
    initial_state,
    legal_moves,
    terminal_status,
)

SENTINEL = 10**6


class SearchError(ValueError):
    """Raised for unsearchable inputs such as a terminal root."""


@dataclass(frozen=True)
class SearchConfig:
    depth: int = 2
    use_alpha_beta: bool = True
    use_transposition: bool = False
    dof_weight_own: int = 1
    dof_weight_opp: int = -1
    randomize_ties: bool = False
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise SearchError(f"depth must be >= 1, got {self.depth}")


@dataclass(frozen=True)
class SearchResult:
    best_move: Move
    score: int
    nodes_visited: int
    depth: int
    elapsed: float


def _losing_side_to_move(state: GameState, rules: RuleConfig) -> bool:
    if degrees_of_freedom(state, state.to_move) < rules.min_pieces:
        return True
    return not has_any_legal_move(state)


def evaluate(
    state: GameState,
    perspective: int,
    config: SearchConfig = SearchConfig(),
    rules: RuleConfig = DEFAULT_RULES,
    depth_remaining: int = 0,
) -> int:
    """Static score of a position from one player's point of view.

    Decided positions return +/-SENTINEL * (depth_remaining + 1); the
    ply cap scores 0; everything else is the weighted mobility balance.
    Repetition draws are invisible here because they need game history.
    """
    if _losing_side_to_move(state, rules):
        winner = state.opponent
        magnitude = SENTINEL * (depth_remaining + 1)
        return magnitude if winner == perspective else -magnitude
    if state.ply >= rules.ply_cap:
        return 0
    own = degrees_of_freedom(state, perspective)
    opp = degrees_of_freedom(state, 3 - perspective)
    return config.dof_weight_own * own + config.dof_weight_opp * opp


class _Searcher:
    def __init__(self, config: SearchConfig, rules: RuleConfig):
        self.config = config
        self.rules = rules
        self.nodes = 0
        self.table: dict[tuple[int, int], int] = {}

    def negamax(self, state: GameState, depth_remaining: int, alpha: int, beta: int) -> int:
        self.nodes += 1
        if _losing_side_to_move(state, self.rules):
            return -SENTINEL * (depth_remaining + 1)
        if state.ply >= self.rules.ply_cap:
            return 0
        if depth_remaining == 0:
            return evaluate(state, state.to_move, self.config, self.rules)

        key = (state.state_hash, depth_remaining)
        if self.config.use_transposition:
            cached = self.table.get(key)
            if cached is not None:
                return cached

        original_alpha = alpha
        best = None
        for move in legal_moves(state):
            child, _ = apply_move(state, move, self.rules)
            value = -self.negamax(child, depth_remaining - 1, -beta, -alpha)
            if best is None or value > best:
                best = value
            if value > alpha:
                alpha = value
            if self.config.use_alpha_beta and alpha >= beta:
                break
        assert best is not None  # legal_moves nonempty past the terminal check

        # Only exact values enter the table; fail-high/low bounds would
        # poison later lookups and break the pruning-invariance contract.
        if self.config.use_transposition and original_alpha < best < beta:
            self.table[key] = best
        return best


def minmax_search(
    state: GameState,
    config: SearchConfig = SearchConfig(),
    rules: RuleConfig = DEFAULT_RULES,
    tie_rng: random.Random | None = None,
) -> SearchResult:
    """Pick the best move for the side to move at fixed depth.

    Deterministic for a given config: ties resolve to the lowest
    (from, to) move, or via the supplied/seeded RNG when
    config.randomize_ties is set.
    """
    if _losing_side_to_move(state, rules) or state.ply >= rules.ply_cap:
        raise SearchError("cannot search a terminal position")
    started = time.perf_counter()
    searcher = _Searcher(config, rules)
    searcher.nodes += 1  # the root itself

    randomize = config.randomize_ties
    if randomize and tie_rng is None:
        tie_rng = random.Random(config.seed)

    alpha = None
    best_move = None
    tied: list[Move] = []
    for move in legal_moves(state):
        child, _ = apply_move(state, move, rules)
        if randomize:
            # Full window per root child so equal-scoring moves surface
            # as exact ties instead of pruned bounds.
            value = -searcher.negamax(child, config.depth - 1, -SENTINEL * 64, SENTINEL * 64)
        else:
            hi = SENTINEL * 64
            value = -searcher.negamax(child, config.depth - 1, -hi, -(alpha if alpha is not None else -hi))
        if alpha is None or value > alpha:
            alpha = value
            best_move = move
            tied = [move]
        elif randomize and value == alpha:
            tied.append(move)

    assert best_move is not None and alpha is not None
    if randomize and len(tied) > 1:
        best_move = tie_rng.choice(tied)
    return SearchResult(
        best_move=best_move,
        score=alpha,
        nodes_visited=searcher.nodes,
        depth=config.depth,
        elapsed=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# Policies and self-play.


@dataclass(frozen=True)
class Policy:
    name: str
    choose: Callable[[GameState, random.Random], Move]


def random_policy() -> Policy:
    def choose(state: GameState, rng: random.Random) -> Move:
        return rng.choice(legal_moves(state))

    return Policy("random", choose)


def greedy_policy(
    randomize_ties: bool = False, rules: RuleConfig = DEFAULT_RULES
) -> Policy:
    """One-ply lookahead: argmax of evaluate over the children.

    With default symmetric weights this matches depth-1 minmax move for
    move under the same tie-break rule.
    """
    config = SearchConfig(depth=1)

    def choose(state: GameState, rng: random.Random) -> Move:
        best_score = None
        tied: list[Move] = []
        for move in legal_moves(state):
            child, _ = apply_move(state, move, rules)
            score = evaluate(child, state.to_move, config, rules)
            if best_score is None or score > best_score:
                best_score = score
                tied = [move]
            elif randomize_ties and score == best_score:
                tied.append(move)
        if not tied:
            raise SearchError("no legal moves for greedy policy")
        return rng.choice(tied) if randomize_ties else tied[0]

    return Policy("greedy+rt" if randomize_ties else "greedy", choose)


def minmax_policy(
    depth: int,
    use_alpha_beta: bool = True,
    use_transposition: bool = False,
    randomize_ties: bool = False,
    rules: RuleConfig = DEFAULT_RULES,
) -> Policy:
    config = SearchConfig(
        depth=depth,
        use_alpha_beta=use_alpha_beta,
        use_transposition=use_transposition,
        randomize_ties=randomize_ties,
    )
    name = f"minmax:{depth}"
    if not use_alpha_beta:
        name += "+noab"
    if use_transposition:
        name += "+tt"
    if randomize_ties:
        name += "+rt"

    def choose(state: GameState, rng: random.Random) -> Move:
        return minmax_search(state, config, rules, tie_rng=rng).best_move

    return Policy(name, choose)


def parse_policy(spec: str, rules: RuleConfig = DEFAULT_RULES) -> Policy:
    """Parse a policy spec: random | greedy[+rt] | minmax:<depth>[+noab][+tt][+rt]."""
    head, _, tail = spec.partition(":")
    flags = set()
    if head != "minmax":
        parts = head.split("+")
        head, flags = parts[0], set(parts[1:])
    else:
        parts = tail.split("+")
        tail, flags = parts[0], set(parts[1:])
    allowed = {"random": set(), "greedy": {"rt"}, "minmax": {"rt", "noab", "tt"}}
    unknown = flags - allowed.get(head, set())
    if unknown:
        raise SearchError(f"unknown policy flags {sorted(unknown)} in {spec!r}")
    if head == "random":
        return random_policy()
    if head == "greedy":
        return greedy_policy(randomize_ties="rt" in flags, rules=rules)
    if head == "minmax":
        try:
            depth = int(tail)
        except ValueError:
            raise SearchError(f"minmax policy needs a depth, got {spec!r}") from None
        return minmax_policy(
            depth,
            use_alpha_beta="noab" not in flags,
            use_transposition="tt" in flags,
            randomize_ties="rt" in flags,
            rules=rules,
        )
    raise SearchError(f"unknown policy {spec!r}")


def play_game(
    policy_one: Policy,
    policy_two: Policy,
    board: BoardGraph | None = None,
    placement=None,
    to_move: int = 1,
    seed: int = 0,
    rules: RuleConfig = DEFAULT_RULES,
) -> GameRecord:
    """Run one complete game and return its record.

    Fully deterministic for fixed seeds and policies; each player draws
    from an independent RNG derived from the game seed.
    """
    state = initial_state(board, placement, to_move)
    rngs = {1: random.Random(seed * 2 + 1), 2: random.Random(seed * 2 + 2)}
    policies = {1: policy_one, 2: policy_two}

    history: Counter[int] = Counter([state.state_hash])
    states = [state]
    moves = []
    while True:
        outcome = terminal_status(state, history, rules)
        if outcome is not None:
            break
        side = state.to_move
        move = policies[side].choose(state, rngs[side])
        state, captures = apply_move(state, move, rules)
        history[state.state_hash] += 1
        moves.append((move, captures))
        states.append(state)

    return GameRecord(
        board=states[0].board,
        placement={i: v for i, v in enumerate(states[0].cells) if v != states[0].board.alphabet.empty},
        first_to_move=to_move,
        moves=moves,
        outcome=outcome,
        seed=seed,
        policies=(policy_one.name, policy_two.name),
        rules=rules,
        states=states,
    )


def _selfplay_one(args: tuple) -> str:
    """Worker for parallel self-play; returns the serialized record."""
    from .records import record_to_json

    policy_a, policy_b, seed, rules = args
    record = play_game(
        parse_policy(policy_a, rules), parse_policy(policy_b, rules), seed=seed, rules=rules
    )
    return record_to_json(record)


def selfplay_serialized(
    games: int,
    policy_a: str,
    policy_b: str,
    base_seed: int = 0,
    rules: RuleConfig = DEFAULT_RULES,
    jobs: int = 1,
) -> list[str]:
    """Self-play on the default board, returned as JSONL lines in game order."""
    tasks = [(policy_a, policy_b, base_seed + i, rules) for i in range(games)]
    if jobs <= 1:
        return [_selfplay_one(task) for task in tasks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_selfplay_one, tasks))
