"""Game record serialization, replay validation, and trajectory classes."""

import io
import json

import pytest

from xiguaqi.board import build_grid_board
from xiguaqi.records import (
    TRAJECTORY_ACYCLIC,
    TRAJECTORY_CYCLIC,
    GameRecord,
    RecordError,
    classify_trajectory,
    read_records,
    record_from_json,
    record_to_json,
    write_records,
)
from xiguaqi.rules import (
    CaptureSet,
    Move,
    Outcome,
    RuleConfig,
    apply_move,
    initial_state,
)
from xiguaqi.search import parse_policy, play_game

CAPTURE_PLACEMENT = {1: 1, 2: 1, 3: 1, 8: 1, 0: 2, 12: 2}


def play_random(seed: int, **kwargs):
    policy = parse_policy("random")
    return play_game(policy, policy, seed=seed, **kwargs)


class TestRoundTrip:
    @pytest.mark.parametrize("seed", [0, 1, 7])
    def test_bit_exact(self, seed):
        record = play_random(seed)
        line = record_to_json(record)
        clone = record_from_json(line)
        assert record_to_json(clone) == line
        assert clone.final_state().cells == record.final_state().cells
        assert clone.final_state().state_hash == record.final_state().state_hash
        assert len(clone.states) == len(record.moves) + 1

    def test_default_board_stored_by_name(self):
        payload = json.loads(record_to_json(play_random(0)))
        assert payload["board"] == "xigua"

    def test_custom_board_round_trip(self):
        grid = build_grid_board(3, 3)
        record = play_random(2, board=grid, placement={0: 1, 8: 2})
        payload = json.loads(record_to_json(record))
        assert payload["board"]["n"] == 9
        clone = record_from_json(record_to_json(record))
        assert clone.board == grid
        assert record_to_json(clone) == record_to_json(record)

    def test_non_default_rules_round_trip(self):
        rules = RuleConfig(ply_cap=6)
        record = play_random(3, rules=rules)
        payload = json.loads(record_to_json(record))
        assert payload["rules"]["ply_cap"] == 6
        clone = record_from_json(record_to_json(record))
        assert clone.rules == rules
        assert len(clone.moves) <= 6

    def test_default_rules_omitted(self):
        payload = json.loads(record_to_json(play_random(0)))
        assert "rules" not in payload

    def test_canonical_formatting(self):
        line = record_to_json(play_random(4))
        assert line == json.dumps(json.loads(line), sort_keys=True, separators=(",", ":"))

    def test_capture_game_round_trip(self):
        policy = parse_policy("greedy")
        record = play_game(policy, policy, placement=CAPTURE_PLACEMENT, seed=0)
        assert record.moves[0][0] == Move(8, 4)
        assert record.moves[0][1].indices == (0,)
        clone = record_from_json(record_to_json(record))
        assert clone.moves[0][1] == record.moves[0][1]


class TestReplayValidation:
    def _capture_line(self):
        policy = parse_policy("greedy")
        record = play_game(policy, policy, placement=CAPTURE_PLACEMENT, seed=0)
        return record_to_json(record)

    def test_dropped_capture_detected(self):
        payload = json.loads(self._capture_line())
        payload["moves"][0]["captures"] = []
        with pytest.raises(RecordError, match="ply 0"):
            record_from_json(json.dumps(payload))

    def test_phantom_capture_detected(self):
        record = play_random(0)
        payload = json.loads(record_to_json(record))
        payload["moves"][1]["captures"] = [9]
        with pytest.raises(RecordError, match="ply 1"):
            record_from_json(json.dumps(payload))

    def test_illegal_move_detected(self):
        payload = json.loads(record_to_json(play_random(0)))
        payload["moves"][0] = {"from": 0, "to": 1, "captures": []}
        with pytest.raises(RecordError):
            record_from_json(json.dumps(payload))

    def test_missing_field(self):
        payload = json.loads(record_to_json(play_random(0)))
        del payload["placement"]
        with pytest.raises(RecordError, match="missing"):
            record_from_json(json.dumps(payload))

    def test_unparseable_line(self):
        with pytest.raises(RecordError, match="unparseable"):
            record_from_json("{not json")


class TestStreams:
    def test_write_then_read(self):
        records = [play_random(seed) for seed in range(3)]
        buffer = io.StringIO()
        assert write_records(records, buffer) == 3
        buffer.seek(0)
        clones = list(read_records(buffer))
        assert [record_to_json(r) for r in clones] == [record_to_json(r) for r in records]

    def test_blank_lines_skipped(self):
        buffer = io.StringIO()
        write_records([play_random(0)], buffer)
        buffer.write("\n")
        write_records([play_random(1)], buffer)
        buffer.seek(0)
        assert len(list(read_records(buffer))) == 2

    def test_error_carries_line_number(self):
        buffer = io.StringIO()
        write_records([play_random(0), play_random(1)], buffer)
        buffer.write("{broken\n")
        buffer.seek(0)
        with pytest.raises(RecordError, match="line 3"):
            list(read_records(buffer))


class TestTrajectory:
    def test_fresh_game_states_are_distinct(self):
        record = play_random(0, rules=RuleConfig(ply_cap=12))
        trajectory = classify_trajectory(record)
        assert trajectory.kind == TRAJECTORY_ACYCLIC
        assert trajectory.first_repeat_ply is None

    def test_shuttle_revisits_start(self):
        state = initial_state()
        states = [state]
        moves = []
        for move in [Move(20, 5), Move(12, 6), Move(5, 20), Move(6, 12)]:
            state, captures = apply_move(state, move)
            states.append(state)
            moves.append((move, captures))
        record = GameRecord(
            board=state.board,
            placement={n: v for n, v in enumerate(states[0].cells) if v != 3},
            first_to_move=1,
            moves=moves,
            outcome=None,
            states=states,
        )
        trajectory = classify_trajectory(record)
        assert trajectory.kind == TRAJECTORY_CYCLIC
        assert trajectory.first_repeat_ply == 4

    def test_repetition_outcome_implies_cycle(self):
        # a full repetition-terminated game must revisit a state
        record = play_random(0)
        if record.outcome is not None and record.outcome.reason == "repetition":
            assert classify_trajectory(record).kind == TRAJECTORY_CYCLIC

    def test_final_state_requires_states(self):
        record = GameRecord(
            board=initial_state().board,
            placement={},
            first_to_move=1,
            moves=[],
            outcome=None,
        )
        with pytest.raises(RecordError):
            record.final_state()


class TestOutcomeSerialization:
    def test_decisive_fields(self):
        policy = parse_policy("greedy")
        record = play_game(
            policy, policy, placement={1: 1, 2: 1, 3: 1, 8: 1, 0: 2}, seed=0
        )
        payload = json.loads(record_to_json(record))
        assert payload["outcome"] == "win"
        assert payload["winner"] == 1
        assert payload["termination_reason"] == "no-pieces"

    def test_draw_fields(self):
        record = play_random(0, rules=RuleConfig(ply_cap=4))
        payload = json.loads(record_to_json(record))
        assert payload["outcome"] == "draw"
        assert payload["winner"] is None
        assert payload["termination_reason"] == "ply-cap"

    def test_open_game_fields(self):
        record = play_random(0)
        record.outcome = None
        payload = json.loads(record_to_json(record))
        assert payload["outcome"] is None
        assert payload["winner"] is None
        assert payload["termination_reason"] is None

    def test_outcome_survives_round_trip(self):
        record = play_random(0)
        clone = record_from_json(record_to_json(record))
        assert clone.outcome == record.outcome
        assert isinstance(clone.outcome, Outcome)
