"""Per-move matrix checks across whole recorded games."""

from xiguaqi.algebra import DOMAIN_Q, DOMAIN_Y
from xiguaqi.rules import Move, RuleConfig, apply_move, initial_state
from xiguaqi.search import parse_policy, play_game
from xiguaqi.verification import check_move, summarize, verify_record, verify_records


def random_game(seed):
    policy = parse_policy("random")
    return play_game(policy, policy, seed=seed)


class TestCheckMove:
    def test_opening_move_passes(self, start_state):
        move = Move(15, 7)
        after, captures = apply_move(start_state, move)
        check = check_move(start_state, move, captures, after)
        assert check.passed
        assert check.domain == DOMAIN_Y
        assert check.matrix_nnz == 23
        assert check.in_D and check.exact_match
        assert check.error is None

    def test_mismatched_after_state_fails(self, start_state):
        move = Move(15, 7)
        _, captures = apply_move(start_state, move)
        wrong_after, _ = apply_move(start_state, Move(16, 7))
        check = check_move(start_state, move, captures, wrong_after)
        assert not check.exact_match
        assert not check.passed

    def test_unbuildable_matrix_is_flagged(self, xigua):
        placement = {0: 1, 20: 1, 1: 2, 2: 2, 3: 2, 4: 2}
        state = initial_state(xigua, placement)
        config = RuleConfig(allow_suicide=True)
        after, captures = apply_move(state, Move(20, 5), config)
        flagged = check_move(state, Move(20, 5), captures, after, domain=DOMAIN_Y)
        assert not flagged.passed
        assert flagged.error is not None
        assert flagged.matrix_nnz == 0
        # the same move has an exact rational matrix
        rational = check_move(state, Move(20, 5), captures, after, domain=DOMAIN_Q)
        assert rational.passed

    def test_dict_shape(self, start_state):
        move = Move(15, 7)
        after, captures = apply_move(start_state, move)
        data = check_move(start_state, move, captures, after).to_dict()
        assert data["exact_match"] is True
        assert "error" not in data


class TestWholeRecords:
    def test_every_move_of_a_game_passes(self):
        record = random_game(0)
        checks = verify_record(record)
        assert len(checks) == len(record.moves)
        assert all(check.passed for check in checks)

    def test_rational_mode_also_passes(self):
        record = random_game(1)
        assert all(check.passed for check in verify_record(record, domain=DOMAIN_Q))

    def test_game_ids_enumerated(self):
        records = [random_game(0), random_game(1)]
        checks = list(verify_records(records))
        assert {check.game_id for check in checks} == {0, 1}
        plies = [check.ply for check in checks if check.game_id == 0]
        assert plies == list(range(len(records[0].moves)))

    def test_summary_counts(self):
        record = random_game(2)
        summary = summarize(verify_record(record))
        assert summary == {
            "moves": len(record.moves),
            "passed": len(record.moves),
            "failed": 0,
        }
