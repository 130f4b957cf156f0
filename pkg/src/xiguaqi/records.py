"""Game records: JSONL serialization, replay, and trajectory classes.

A record stores the setup plus the move list; intermediate states are
reconstructed by replay, and recorded captures are cross-checked against
the rules engine on the way back in.  Serialization is canonical (sorted
keys, fixed separators) so a record round-trips bit-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

from .board import BoardGraph, build_xigua_board, XIGUA_BOARD_NAME
from .rules import (
    CaptureSet,
    DEFAULT_RULES,
    GameState,
    Move,
    Outcome,
    RuleConfig,
    RuleViolationError,
    apply_move,
    initial_state,
)


class RecordError(ValueError):
    """Raised for records that fail to parse or to replay consistently."""


TRAJECTORY_ACYCLIC = "DAG"
TRAJECTORY_CYCLIC = "CG"


@dataclass(frozen=True)
class TrajectoryClass:
    """Whether a game's state walk revisits a vertex.

    kind is "DAG" when every canonical state hash is distinct and "CG"
    when some hash repeats; first_repeat_ply is the ply at which the
    first revisit happens (None for DAG).
    """

    kind: str
    first_repeat_ply: int | None


@dataclass
class GameRecord:
    board: BoardGraph
    placement: dict[int, int]
    first_to_move: int
    moves: list[tuple[Move, CaptureSet]]
    outcome: Outcome | None
    seed: int | None = None
    policies: tuple[str, str] = ("unknown", "unknown")
    rules: RuleConfig = DEFAULT_RULES
    states: list[GameState] = field(default_factory=list)

    def final_state(self) -> GameState:
        if not self.states:
            raise RecordError("record has no states; replay it first")
        return self.states[-1]


def classify_trajectory(record: GameRecord) -> TrajectoryClass:
    """Classify the state walk by canonical-hash repetition."""
    seen: set[int] = set()
    for index, state in enumerate(record.states):
        if state.state_hash in seen:
            return TrajectoryClass(kind=TRAJECTORY_CYCLIC, first_repeat_ply=index)
        seen.add(state.state_hash)
    return TrajectoryClass(kind=TRAJECTORY_ACYCLIC, first_repeat_ply=None)


def _board_to_json(board: BoardGraph):
    if board.name == XIGUA_BOARD_NAME and board.n == 21:
        return XIGUA_BOARD_NAME
    return board.to_dict()


def _board_from_json(data) -> BoardGraph:
    if data == XIGUA_BOARD_NAME:
        return build_xigua_board()
    return BoardGraph.from_dict(data)


def record_to_json(record: GameRecord) -> str:
    """One canonical JSON line (no trailing newline)."""
    payload = {
        "board": _board_to_json(record.board),
        "seed": record.seed,
        "policies": list(record.policies),
        "placement": {str(node): value for node, value in record.placement.items()},
        "first_to_move": record.first_to_move,
        "moves": [
            {"from": move.from_node, "to": move.to_node, "captures": list(caps.indices)}
            for move, caps in record.moves
        ],
        "outcome": None if record.outcome is None else ("draw" if record.outcome.is_draw else "win"),
        "winner": None if record.outcome is None else record.outcome.winner,
        "termination_reason": None if record.outcome is None else record.outcome.reason,
    }
    if record.rules != DEFAULT_RULES:
        payload["rules"] = {
            "repetition_limit": record.rules.repetition_limit,
            "ply_cap": record.rules.ply_cap,
            "min_pieces": record.rules.min_pieces,
            "allow_suicide": record.rules.allow_suicide,
        }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def record_from_json(line: str) -> GameRecord:
    """Parse one JSONL line and replay it, validating recorded captures."""
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"unparseable record line: {exc}") from exc
    try:
        board = _board_from_json(payload["board"])
        placement = {int(node): value for node, value in payload["placement"].items()}
        first_to_move = payload["first_to_move"]
        rules = DEFAULT_RULES
        if "rules" in payload:
            rules = RuleConfig(**payload["rules"])
        outcome = None
        if payload["outcome"] is not None:
            outcome = Outcome(winner=payload["winner"], reason=payload["termination_reason"])
        raw_moves = [
            (Move(m["from"], m["to"]), tuple(m["captures"])) for m in payload["moves"]
        ]
        seed = payload.get("seed")
        policies = tuple(payload.get("policies", ["unknown", "unknown"]))
    except (KeyError, TypeError) as exc:
        raise RecordError(f"record missing field: {exc}") from exc

    state = initial_state(board, placement, first_to_move)
    states = [state]
    moves: list[tuple[Move, CaptureSet]] = []
    for ply, (move, recorded_captures) in enumerate(raw_moves):
        try:
            state, captures = apply_move(state, move, rules)
        except RuleViolationError as exc:
            raise RecordError(f"ply {ply}: move does not replay: {exc}") from exc
        if captures.indices != recorded_captures:
            raise RecordError(
                f"ply {ply}: recorded captures {list(recorded_captures)} disagree "
                f"with replay {list(captures.indices)}"
            )
        moves.append((move, captures))
        states.append(state)

    return GameRecord(
        board=board,
        placement=placement,
        first_to_move=first_to_move,
        moves=moves,
        outcome=outcome,
        seed=seed,
        policies=policies,  # type: ignore[arg-type]
        rules=rules,
        states=states,
    )


def write_records(records: Iterable[GameRecord], stream: TextIO) -> int:
    count = 0
    for record in records:
        stream.write(record_to_json(record) + "\n")
        count += 1
    return count


def read_records(stream: TextIO) -> Iterator[GameRecord]:
    """Yield records from a JSONL stream; RecordError carries the line number."""
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield record_from_json(line)
        except RecordError as exc:
            raise RecordError(f"line {lineno}: {exc}") from exc
