"""JSON-over-HTTP game service.

Holds live sessions in memory (one lock per session), answers every
human move with the engine reply in the same response unless asked not
to, attaches a transition-matrix check to each applied move, and
appends finished games to a JSONL archive interchangeable with
self-play logs.
"""

from __future__ import annotations

import random
import secrets
import threading
from collections import Counter
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .algebra import DOMAIN_Q, DOMAIN_Y
from .board import BoardError, BoardGraph, build_xigua_board
from .records import GameRecord, classify_trajectory, record_to_json
from .rules import (
    CaptureSet,
    DEFAULT_RULES,
    GameState,
    Move,
    Outcome,
    RuleConfig,
    RuleViolationError,
    apply_move,
    degrees_of_freedom,
    initial_state,
    legal_moves,
    terminal_status,
)
from .search import Policy, SearchError, parse_policy
from .verification import check_move

DEFAULT_ENGINE_POLICY = "minmax:2+rt"


@dataclass
class _Session:
    game_id: str
    human_plays: int
    engine: Policy
    rng: random.Random
    rules: RuleConfig
    seed: int
    placement: dict[int, int]
    first_to_move: int
    states: list[GameState]
    moves: list[tuple[Move, CaptureSet]] = field(default_factory=list)
    history: Counter = field(default_factory=Counter)
    outcome: Outcome | None = None
    archived: bool = False
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def state(self) -> GameState:
        return self.states[-1]


def _bad_request(field_path: str, message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"field": field_path, "error": message})


def _outcome_view(outcome: Outcome | None) -> dict | None:
    if outcome is None:
        return None
    return {
        "kind": "draw" if outcome.is_draw else "win",
        "winner": outcome.winner,
        "reason": outcome.reason,
    }


def _state_view(session: _Session) -> dict:
    state = session.state
    moves = [] if session.outcome else legal_moves(state)
    return {
        "cells": list(state.cells),
        "to_move": state.to_move,
        "ply": state.ply,
        "legal_moves": [{"from": m.from_node, "to": m.to_node} for m in moves],
        "dof": {
            "1": degrees_of_freedom(state, 1),
            "2": degrees_of_freedom(state, 2),
        },
        "outcome": _outcome_view(session.outcome),
    }


def _session_record(session: _Session) -> GameRecord:
    policies = ["human", "human"]
    policies[2 - session.human_plays] = session.engine.name
    return GameRecord(
        board=session.state.board,
        placement=session.placement,
        first_to_move=session.first_to_move,
        moves=list(session.moves),
        outcome=session.outcome,
        seed=session.seed,
        policies=(policies[0], policies[1]),
        rules=session.rules,
        states=list(session.states),
    )


def _parse_rules(payload: dict) -> RuleConfig:
    allowed = {"repetition_limit", "ply_cap", "min_pieces", "allow_suicide"}
    unknown = set(payload) - allowed
    if unknown:
        raise _bad_request(f"rules.{sorted(unknown)[0]}", "unknown rule option")
    try:
        return RuleConfig(**{**DEFAULT_RULES.__dict__, **payload})
    except TypeError as exc:
        raise _bad_request("rules", str(exc)) from exc


def create_app(archive_path: str | None = None, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="xiguaqi service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    sessions: dict[str, _Session] = {}
    sessions_lock = threading.Lock()
    archive_lock = threading.Lock()

    def _archive(session: _Session) -> None:
        if session.archived or archive_path is None:
            return
        session.archived = True
        line = record_to_json(_session_record(session))
        with archive_lock:
            with open(archive_path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def _get_session(game_id: str) -> _Session:
        session = sessions.get(game_id)
        if session is None:
            raise HTTPException(status_code=404, detail={"error": f"no game {game_id}"})
        return session

    def _refresh_outcome(session: _Session) -> None:
        session.outcome = terminal_status(session.state, session.history, session.rules)
        if session.outcome is not None:
            _archive(session)

    def _apply_checked(session: _Session, move: Move) -> dict:
        """Apply one move and return its view with the matrix check."""
        before = session.state
        state, captures = apply_move(before, move, session.rules)
        domain = DOMAIN_Y if before.board.alphabet.empty == 3 else DOMAIN_Q
        check = check_move(
            before, move, captures, state, domain=domain, ply=before.ply
        )
        session.states.append(state)
        session.moves.append((move, captures))
        session.history[state.state_hash] += 1
        _refresh_outcome(session)
        return {
            "from": move.from_node,
            "to": move.to_node,
            "captures": list(captures.indices),
            "matrix_check": {
                "domain": check.domain,
                "matrix_nnz": check.matrix_nnz,
                "in_D": check.in_D,
                "exact_match": check.exact_match,
            },
        }

    def _engine_reply(session: _Session) -> dict | None:
        if session.outcome is not None or session.state.to_move == session.human_plays:
            return None
        move = session.engine.choose(session.state, session.rng)
        return _apply_checked(session, move)

    @app.post("/games", status_code=201)
    def create_game(payload: dict | None = None) -> dict:
        payload = payload or {}

        human_plays = payload.get("human_plays", 1)
        if human_plays not in (1, 2):
            raise _bad_request("human_plays", "must be 1 or 2")
        to_move = payload.get("to_move", 1)
        if to_move not in (1, 2):
            raise _bad_request("to_move", "must be 1 or 2")

        board = build_xigua_board()
        if "board" in payload:
            try:
                board = BoardGraph.from_dict(payload["board"])
            except (BoardError, KeyError, TypeError) as exc:
                raise _bad_request("board", str(exc)) from exc

        placement = None
        if payload.get("placement") is not None:
            raw = payload["placement"]
            if not isinstance(raw, dict):
                raise _bad_request("placement", "must be an object of node -> value")
            placement = {}
            for key, value in raw.items():
                try:
                    node = int(key)
                except ValueError:
                    raise _bad_request(f"placement.{key}", "node index must be an integer")
                if not 0 <= node < board.n:
                    raise _bad_request(
                        f"placement.{key}", f"node outside 0..{board.n - 1}"
                    )
                if (
                    not isinstance(value, int)
                    or not 1 <= value <= board.alphabet.two_max
                ):
                    raise _bad_request(
                        f"placement.{key}",
                        f"value must be a piece value 1..{board.alphabet.two_max}",
                    )
                placement[node] = value

        rules = _parse_rules(payload.get("rules", {}))

        engine_spec = payload.get("engine", {})
        if not isinstance(engine_spec, dict):
            raise _bad_request("engine", "must be an object")
        policy_name = engine_spec.get("policy", DEFAULT_ENGINE_POLICY)
        try:
            engine = parse_policy(policy_name, rules)
        except SearchError as exc:
            raise _bad_request("engine.policy", str(exc)) from exc
        seed = engine_spec.get("seed")
        if seed is None:
            seed = secrets.randbits(32)

        try:
            state = initial_state(board, placement, to_move)
        except RuleViolationError as exc:
            raise _bad_request("placement", str(exc)) from exc

        session = _Session(
            game_id=secrets.token_hex(8),
            human_plays=human_plays,
            engine=engine,
            rng=random.Random(seed),
            rules=rules,
            seed=seed,
            placement={i: v for i, v in enumerate(state.cells) if v != board.alphabet.empty},
            first_to_move=to_move,
            states=[state],
            history=Counter([state.state_hash]),
        )
        with sessions_lock:
            sessions[session.game_id] = session

        with session.lock:
            _refresh_outcome(session)
            engine_move = None
            if payload.get("auto_reply", True):
                engine_move = _engine_reply(session)
            return {
                "game_id": session.game_id,
                "board": board.to_dict(),
                "human_plays": human_plays,
                "engine_policy": engine.name,
                "seed": seed,
                "state": _state_view(session),
                "engine_move": engine_move,
            }

    @app.post("/games/{game_id}/moves")
    def post_move(game_id: str, payload: dict | None = None) -> dict:
        payload = payload or {}
        session = _get_session(game_id)
        with session.lock:
            if session.outcome is not None:
                raise HTTPException(
                    status_code=409,
                    detail={"error": "game is over", "outcome": _outcome_view(session.outcome)},
                )
            if session.state.to_move != session.human_plays:
                raise HTTPException(
                    status_code=409, detail={"error": "not your turn; engine to move"}
                )
            try:
                move = Move(int(payload["from"]), int(payload["to"]))
            except (KeyError, TypeError, ValueError):
                raise _bad_request("from/to", "move needs integer from and to fields")
            try:
                applied = _apply_checked(session, move)
            except RuleViolationError as exc:
                raise HTTPException(status_code=422, detail={"error": str(exc)}) from exc

            engine_move = None
            if payload.get("auto_reply", True):
                engine_move = _engine_reply(session)
            return {
                "game_id": session.game_id,
                "move": applied,
                "engine_move": engine_move,
                "state": _state_view(session),
            }

    @app.get("/games/{game_id}")
    def get_game(game_id: str) -> dict:
        session = _get_session(game_id)
        with session.lock:
            return {
                "game_id": session.game_id,
                "board": session.state.board.to_dict(),
                "human_plays": session.human_plays,
                "engine_policy": session.engine.name,
                "seed": session.seed,
                "moves_played": len(session.moves),
                "state": _state_view(session),
            }

    @app.get("/games/{game_id}/trajectory")
    def get_trajectory(game_id: str) -> dict:
        session = _get_session(game_id)
        with session.lock:
            trajectory = classify_trajectory(_session_record(session))
            return {
                "game_id": session.game_id,
                "kind": trajectory.kind,
                "first_repeat_ply": trajectory.first_repeat_ply,
            }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
