"""Board topology: undirected game graphs and piece alphabets.

A board is a simple undirected graph over nodes 0..n-1.  Pieces sit on
nodes and slide along edges.  Cell contents are small integers: player
one owns values 1..one_max, player two owns one_max+1..two_max, and
two_max+1 marks an empty cell.  The classic Xi Gua Qi board is the
21-node wheel built by :func:`build_xigua_board` with the tri-valued
alphabet (red=1, yellow=2, empty=3).
"""

from __future__ import annotations

from dataclasses import dataclass, field

XIGUA_BOARD_NAME = "xigua"

# Undirected edge list of the 21-node board: node 0 is the hub, 1-4 the
# inner square, 5-8 the spoke junctions, 9-20 the outer ring.
_XIGUA_EDGES = (
    (0, 1), (0, 2), (0, 3), (0, 4),
    (1, 2), (1, 4), (1, 5),
    (2, 3), (2, 6),
    (3, 4), (3, 7),
    (4, 8),
    (5, 9), (5, 10), (5, 20),
    (6, 11), (6, 12), (6, 13),
    (7, 14), (7, 15), (7, 16),
    (8, 17), (8, 18), (8, 19),
    (9, 10), (9, 20),
    (10, 11), (11, 12), (12, 13), (13, 14), (14, 15),
    (15, 16), (16, 17), (17, 18), (18, 19), (19, 20),
)


class BoardError(ValueError):
    """Raised for malformed boards or alphabets."""


@dataclass(frozen=True)
class PieceAlphabet:
    """Value ranges for the two sides plus the empty marker.

    Player 1 owns piece values 1..one_max, player 2 owns values
    one_max+1..two_max, and two_max+1 denotes an empty cell.
    """

    one_max: int = 1
    two_max: int = 2

    def __post_init__(self) -> None:
        if not 1 <= self.one_max < self.two_max:
            raise BoardError(
                f"alphabet requires 1 <= one_max < two_max, got ({self.one_max}, {self.two_max})"
            )

    @property
    def empty(self) -> int:
        return self.two_max + 1

    def values_for(self, player: int) -> tuple[int, ...]:
        if player == 1:
            return tuple(range(1, self.one_max + 1))
        if player == 2:
            return tuple(range(self.one_max + 1, self.two_max + 1))
        raise BoardError(f"player must be 1 or 2, got {player}")

    def owner(self, value: int) -> int | None:
        """Owning player of a cell value, or None for the empty marker."""
        if 1 <= value <= self.one_max:
            return 1
        if self.one_max < value <= self.two_max:
            return 2
        if value == self.empty:
            return None
        raise BoardError(f"value {value} outside alphabet 1..{self.empty}")


TRI_VALUED = PieceAlphabet(1, 2)


@dataclass(frozen=True)
class BoardGraph:
    """Immutable undirected board graph with its piece alphabet."""

    name: str
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    alphabet: PieceAlphabet = field(default=TRI_VALUED)

    def neighbors(self, node: int) -> tuple[int, ...]:
        return self.adjacency[node]

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])

    def undirected_edges(self) -> tuple[tuple[int, int], ...]:
        """Sorted (i, j) pairs with i < j, each edge listed once."""
        return tuple(
            (i, j) for i in range(self.n) for j in self.adjacency[i] if i < j
        )

    def directed_pairs(self) -> tuple[tuple[int, int], ...]:
        """Every adjacency as an ordered pair; twice the undirected count."""
        return tuple(
            (i, j) for i in range(self.n) for j in self.adjacency[i]
        )

    def to_dict(self) -> dict:
        out: dict = {
            "name": self.name,
            "n": self.n,
            "edges": [list(e) for e in self.undirected_edges()],
        }
        if self.alphabet != TRI_VALUED:
            out["alphabet"] = [self.alphabet.one_max, self.alphabet.two_max]
        return out

    @staticmethod
    def from_dict(data: dict) -> "BoardGraph":
        alphabet = TRI_VALUED
        if "alphabet" in data:
            alphabet = PieceAlphabet(*data["alphabet"])
        try:
            n = data["n"]
            edges = [tuple(e) for e in data["edges"]]
        except KeyError as exc:
            raise BoardError(f"board dict missing field {exc.args[0]!r}") from exc
        return build_custom_board(
            n=n,
            edges=edges,
            alphabet=alphabet,
            name=data.get("name", "custom"),
        )


def build_custom_board(
    n: int,
    edges: list[tuple[int, int]] | tuple[tuple[int, int], ...],
    alphabet: PieceAlphabet = TRI_VALUED,
    name: str = "custom",
) -> BoardGraph:
    """Build a validated board from an undirected edge list.

    Rejects out-of-range endpoints, self-loops, and duplicate edges.
    """
    if n < 2:
        raise BoardError(f"board needs at least 2 nodes, got {n}")
    seen: set[tuple[int, int]] = set()
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise BoardError(f"edge ({i}, {j}) endpoint outside 0..{n - 1}")
        if i == j:
            raise BoardError(f"self-loop at node {i}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise BoardError(f"duplicate edge {key}")
        seen.add(key)
        adj[i].append(j)
        adj[j].append(i)
    return BoardGraph(
        name=name,
        n=n,
        adjacency=tuple(tuple(sorted(nbrs)) for nbrs in adj),
        alphabet=alphabet,
    )


def build_xigua_board() -> BoardGraph:
    """The 21-node Xi Gua Qi wheel with the tri-valued alphabet."""
    return build_custom_board(
        n=21, edges=_XIGUA_EDGES, alphabet=TRI_VALUED, name=XIGUA_BOARD_NAME
    )


def build_grid_board(
    rows: int,
    cols: int,
    alphabet: PieceAlphabet = TRI_VALUED,
    name: str = "grid",
) -> BoardGraph:
    """Orthogonal rows x cols grid; handy for alternate-alphabet games."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            node = r * cols + c
            if c + 1 < cols:
                edges.append((node, node + 1))
            if r + 1 < rows:
                edges.append((node, node + cols))
    return build_custom_board(rows * cols, edges, alphabet=alphabet, name=name)
