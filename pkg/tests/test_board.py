"""Board graph construction, validation, and serialization."""

import json
from pathlib import Path

import pytest

from xiguaqi.board import (
    TRI_VALUED,
    BoardError,
    PieceAlphabet,
    build_custom_board,
    build_grid_board,
    build_xigua_board,
)

DATA = Path(__file__).parent / "data"
GOLDEN_DIRECTED = [tuple(p) for p in json.loads((DATA / "xigua_directed_pairs.json").read_text())]


class TestXiguaGraph:
    def test_size(self, xigua):
        assert xigua.n == 21
        assert len(xigua.undirected_edges()) == 36
        assert len(xigua.directed_pairs()) == 72

    def test_directed_pairs_match_golden(self, xigua):
        assert sorted(xigua.directed_pairs()) == sorted(GOLDEN_DIRECTED)

    def test_adjacency_is_symmetric(self, xigua):
        for u in range(xigua.n):
            for v in xigua.neighbors(u):
                assert u in xigua.neighbors(v)

    def test_neighbor_sets(self, xigua):
        assert xigua.neighbors(0) == (1, 2, 3, 4)
        assert xigua.neighbors(5) == (1, 9, 10, 20)
        assert xigua.neighbors(20) == (5, 9, 19)
        assert xigua.neighbors(12) == (6, 11, 13)

    def test_degrees(self, xigua):
        degrees = [xigua.degree(i) for i in range(xigua.n)]
        assert degrees[:9] == [4] * 9
        assert degrees[9:] == [3] * 12

    def test_connected(self, xigua):
        seen = {0}
        frontier = [0]
        while frontier:
            node = frontier.pop()
            for nb in xigua.neighbors(node):
                if nb not in seen:
                    seen.add(nb)
                    frontier.append(nb)
        assert seen == set(range(21))

    def test_repo_golden_file(self, xigua):
        golden = json.loads(Path("boards/xigua.json").read_text())
        assert golden == xigua.to_dict()


class TestPieceAlphabet:
    def test_tri_valued(self):
        assert TRI_VALUED.one_max == 1
        assert TRI_VALUED.two_max == 2
        assert TRI_VALUED.empty == 3
        assert TRI_VALUED.values_for(1) == (1,)
        assert TRI_VALUED.values_for(2) == (2,)

    def test_wider_alphabet(self):
        alphabet = PieceAlphabet(one_max=2, two_max=4)
        assert alphabet.values_for(1) == (1, 2)
        assert alphabet.values_for(2) == (3, 4)
        assert alphabet.empty == 5
        assert alphabet.owner(1) == 1
        assert alphabet.owner(4) == 2
        assert alphabet.owner(5) is None

    @pytest.mark.parametrize("one_max,two_max", [(0, 2), (2, 2), (3, 1), (-1, 1)])
    def test_invalid_bounds(self, one_max, two_max):
        with pytest.raises(BoardError):
            PieceAlphabet(one_max=one_max, two_max=two_max)

    def test_owner_out_of_range(self):
        with pytest.raises(BoardError):
            TRI_VALUED.owner(4)
        with pytest.raises(BoardError):
            TRI_VALUED.values_for(3)


class TestCustomBoards:
    def test_path_board(self):
        board = build_custom_board(3, [(0, 1), (1, 2)], name="path3")
        assert board.neighbors(1) == (0, 2)
        assert board.degree(0) == 1

    def test_duplicate_edges_collapse(self):
        with pytest.raises(BoardError):
            build_custom_board(3, [(0, 1), (1, 0)])

    def test_self_loop_rejected(self):
        with pytest.raises(BoardError):
            build_custom_board(3, [(1, 1)])

    def test_endpoint_out_of_range(self):
        with pytest.raises(BoardError):
            build_custom_board(3, [(0, 3)])
        with pytest.raises(BoardError):
            build_custom_board(3, [(-1, 0)])

    def test_too_few_nodes(self):
        with pytest.raises(BoardError):
            build_custom_board(0, [])

    def test_grid_board(self):
        board = build_grid_board(2, 3)
        assert board.n == 6
        # corner, edge, and row-wrap absence
        assert board.neighbors(0) == (1, 3)
        assert board.neighbors(1) == (0, 2, 4)
        assert 3 not in board.neighbors(2)
        assert len(board.undirected_edges()) == 7

    def test_grid_alphabet_passthrough(self):
        alphabet = PieceAlphabet(one_max=2, two_max=4)
        board = build_grid_board(3, 3, alphabet=alphabet)
        assert board.alphabet.empty == 5


class TestSerialization:
    def test_round_trip(self, xigua):
        from xiguaqi.board import BoardGraph

        clone = BoardGraph.from_dict(xigua.to_dict())
        assert clone == xigua
        assert clone.to_dict() == xigua.to_dict()

    def test_round_trip_custom_alphabet(self):
        from xiguaqi.board import BoardGraph

        board = build_grid_board(2, 2, alphabet=PieceAlphabet(one_max=3, two_max=6), name="g22")
        clone = BoardGraph.from_dict(board.to_dict())
        assert clone == board

    def test_from_dict_rejects_missing_fields(self):
        from xiguaqi.board import BoardGraph

        with pytest.raises(BoardError):
            BoardGraph.from_dict({"n": 3})
