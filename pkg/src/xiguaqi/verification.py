"""Per-move matrix verification over recorded games.

Replays each game and, for every move, rebuilds the transition matrix,
reapplies it to the pre-move cell vector, and compares against the
post-move vector in exact arithmetic.  Moves with no valid matrix in
the requested domain are flagged rather than silently skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .algebra import (
    DOMAIN_Y,
    MatrixConstructionError,
    build_transition_matrix_q,
    build_transition_matrix_y,
    classify_matrix,
)
from .records import GameRecord
from .rules import CaptureSet, GameState, Move


@dataclass(frozen=True)
class MoveCheck:
    game_id: int
    ply: int
    domain: str
    matrix_nnz: int
    in_D: bool
    exact_match: bool
    error: str | None = None

    def to_dict(self) -> dict:
        out = {
            "game_id": self.game_id,
            "ply": self.ply,
            "domain": self.domain,
            "matrix_nnz": self.matrix_nnz,
            "in_D": self.in_D,
            "exact_match": self.exact_match,
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    @property
    def passed(self) -> bool:
        return self.exact_match and self.in_D


def check_move(
    before: GameState,
    move: Move,
    captures: CaptureSet,
    after: GameState,
    domain: str = DOMAIN_Y,
    game_id: int = 0,
    ply: int = 0,
) -> MoveCheck:
    """Verify one move: M in the domain, M in D, and M . before == after."""
    builder = build_transition_matrix_y if domain == DOMAIN_Y else build_transition_matrix_q
    try:
        matrix = builder(before, move, captures)
    except MatrixConstructionError as exc:
        return MoveCheck(
            game_id=game_id,
            ply=ply,
            domain=domain,
            matrix_nnz=0,
            in_D=False,
            exact_match=False,
            error=str(exc),
        )
    produced = matrix.apply(before.cells)
    exact = list(produced) == [Fraction(v) for v in after.cells]
    return MoveCheck(
        game_id=game_id,
        ply=ply,
        domain=domain,
        matrix_nnz=matrix.nnz,
        in_D=classify_matrix(matrix).in_D,
        exact_match=exact,
    )


def verify_record(record: GameRecord, game_id: int = 0, domain: str = DOMAIN_Y) -> list[MoveCheck]:
    checks = []
    for ply, (move, captures) in enumerate(record.moves):
        checks.append(
            check_move(
                before=record.states[ply],
                move=move,
                captures=captures,
                after=record.states[ply + 1],
                domain=domain,
                game_id=game_id,
                ply=ply,
            )
        )
    return checks


def verify_records(
    records: Iterable[GameRecord], domain: str = DOMAIN_Y
) -> Iterator[MoveCheck]:
    for game_id, record in enumerate(records):
        yield from verify_record(record, game_id=game_id, domain=domain)


def summarize(checks: Iterable[MoveCheck]) -> dict:
    total = passed = 0
    for check in checks:
        total += 1
        if check.passed:
            passed += 1
    return {"moves": total, "passed": passed, "failed": total - passed}
