"""Move algebra: one exact linear map per move, plus ring-structure checks.

Every slide-and-capture move corresponds to a sparse n x n matrix M with
M . a = b, where a and b are the cell vectors before and after the move.
For the tri-valued game the entries stay in Y = {-1, 0, 1}; for wider
alphabets the entries are rationals with small denominators.  Matrices
are stored sparsely ({(row, col): Fraction}); dense n^2 storage never
appears, so large boards stay cheap.

The distinguished family D excludes the identity, the zero matrix, and
any matrix with an all-zero row.  D is closed under neither addition nor
multiplication, which :func:`nonclosure_witnesses` demonstrates with
explicit pairs; the ambient matrix ring axioms are checked by sampling
in :func:`check_ring_axioms`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .rules import CaptureSet, GameState, Move

DOMAIN_Y = "Y"
DOMAIN_Q = "Q"

_Y_VALUES = (Fraction(-1), Fraction(0), Fraction(1))


class MatrixConstructionError(ValueError):
    """Raised when no valid transition matrix exists for a move."""


class AlgebraError(ValueError):
    """Raised for invalid algebra-check parameters."""


@dataclass(eq=False)
class TransitionMatrix:
    """Sparse square matrix over exact rationals.

    entries holds only nonzero coefficients.  domain is a label: "Y"
    promises every entry lies in {-1, 0, 1}, "Q" makes no promise.
    """

    n: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    domain: str = DOMAIN_Q

    def __post_init__(self) -> None:
        cleaned = {}
        for (i, j), value in self.entries.items():
            value = Fraction(value)
            if value:
                cleaned[(i, j)] = value
        self.entries = cleaned
        if self.domain == DOMAIN_Y and not all(
            v in _Y_VALUES for v in self.entries.values()
        ):
            raise MatrixConstructionError("matrix labeled Y has entries outside {-1,0,1}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def entry(self, row: int, col: int) -> Fraction:
        return self.entries.get((row, col), Fraction(0))

    def apply(self, vector: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        """Exact matrix-vector product."""
        if len(vector) != self.n:
            raise AlgebraError(f"vector length {len(vector)} != dimension {self.n}")
        out = [Fraction(0)] * self.n
        for (i, j), coeff in self.entries.items():
            out[i] += coeff * vector[j]
        return tuple(out)

    def __add__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        if self.n != other.n:
            raise AlgebraError("dimension mismatch in matrix addition")
        summed = dict(self.entries)
        for key, value in other.entries.items():
            summed[key] = summed.get(key, Fraction(0)) + value
        return TransitionMatrix(self.n, summed, domain=self._result_domain(other, summed))

    def __neg__(self) -> "TransitionMatrix":
        flipped = {key: -value for key, value in self.entries.items()}
        return TransitionMatrix(self.n, flipped, domain=self.domain)

    def __sub__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        return self + (-other)

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        if self.n != other.n:
            raise AlgebraError("dimension mismatch in matrix product")
        rows_of_other: dict[int, list[tuple[int, Fraction]]] = {}
        for (k, j), value in other.entries.items():
            rows_of_other.setdefault(k, []).append((j, value))
        product: dict[tuple[int, int], Fraction] = {}
        for (i, k), left in self.entries.items():
            for j, right in rows_of_other.get(k, ()):
                key = (i, j)
                product[key] = product.get(key, Fraction(0)) + left * right
        return TransitionMatrix(self.n, product, domain=self._result_domain(other, product))

    def transpose(self) -> "TransitionMatrix":
        flipped = {(j, i): value for (i, j), value in self.entries.items()}
        return TransitionMatrix(self.n, flipped, domain=self.domain)

    def _result_domain(self, other: "TransitionMatrix", entries: Mapping) -> str:
        if self.domain == other.domain == DOMAIN_Y and all(
            v in _Y_VALUES for v in entries.values() if v
        ):
            return DOMAIN_Y
        return DOMAIN_Q

    @staticmethod
    def identity(n: int, domain: str = DOMAIN_Y) -> "TransitionMatrix":
        return TransitionMatrix(n, {(i, i): Fraction(1) for i in range(n)}, domain=domain)

    @staticmethod
    def zero(n: int, domain: str = DOMAIN_Y) -> "TransitionMatrix":
        return TransitionMatrix(n, {}, domain=domain)

    @staticmethod
    def all_ones(n: int, domain: str = DOMAIN_Y) -> "TransitionMatrix":
        entries = {(i, j): Fraction(1) for i in range(n) for j in range(n)}
        return TransitionMatrix(n, entries, domain=domain)

    @staticmethod
    def cyclic_shift(n: int, domain: str = DOMAIN_Y) -> "TransitionMatrix":
        return TransitionMatrix(
            n, {(i, (i + 1) % n): Fraction(1) for i in range(n)}, domain=domain
        )


@dataclass(frozen=True)
class MatrixClass:
    """Classification against the distinguished family D."""

    is_identity: bool
    is_zero: bool
    has_zero_row: bool
    in_D: bool


def classify_matrix(matrix: TransitionMatrix) -> MatrixClass:
    """Membership test for D: not identity, not zero, no all-zero row."""
    is_zero = matrix.nnz == 0
    is_identity = matrix.nnz == matrix.n and all(
        matrix.entries.get((i, i)) == 1 for i in range(matrix.n)
    )
    populated_rows = {i for (i, _j) in matrix.entries}
    has_zero_row = len(populated_rows) < matrix.n
    return MatrixClass(
        is_identity=is_identity,
        is_zero=is_zero,
        has_zero_row=has_zero_row,
        in_D=not (is_identity or is_zero or has_zero_row),
    )


def _expected_after(
    cells: Sequence[int], move: Move, captures: CaptureSet, empty: int
) -> list[int]:
    after = list(cells)
    after[move.to_node] = cells[move.from_node]
    after[move.from_node] = empty
    for node in captures.indices:
        after[node] = empty
    return after


def _lowest_opponent_cell(cells: Sequence[int], owner, mover: int) -> int | None:
    for node, value in enumerate(cells):
        if owner(value) == 3 - mover:
            return node
    return None


def _lowest_empty_helper(cells: Sequence[int], empty: int, avoid: int) -> int:
    """Lowest-index empty cell other than avoid; avoid itself as last resort.

    The destination cell is empty in the before vector, so it always
    works as a helper; preferring another empty keeps the helper disjoint
    from the move when possible.
    """
    for node, value in enumerate(cells):
        if value == empty and node != avoid:
            return node
    return avoid


def _build_matrix(
    before: GameState, move: Move, captures: CaptureSet, domain: str
) -> TransitionMatrix:
    board = before.board
    alphabet = board.alphabet
    empty = alphabet.empty
    cells = before.cells
    src, dst = move

    if not (0 <= src < board.n and 0 <= dst < board.n):
        raise MatrixConstructionError(f"move {move} outside board 0..{board.n - 1}")
    mover_value = cells[src]
    mover = alphabet.owner(mover_value)
    if mover is None:
        raise MatrixConstructionError(f"source cell {src} is empty")
    if cells[dst] != empty:
        raise MatrixConstructionError(f"destination cell {dst} is not empty")

    if domain == DOMAIN_Y:
        if alphabet.empty != 3:
            raise MatrixConstructionError(
                "Y-domain construction requires the tri-valued alphabet"
            )
        for node in captures.indices:
            if cells[node] != 3 - mover_value:
                raise MatrixConstructionError(
                    f"captured cell {node} does not hold the opposing value; "
                    "no Y-domain row exists"
                )

    entries: dict[tuple[int, int], Fraction] = {
        (i, i): Fraction(1) for i in range(board.n)
    }
    helper = _lowest_opponent_cell(cells, alphabet.owner, mover)
    if helper is not None:
        helper_value = cells[helper]
        # Row src clears the vacated cell: value + coeff * helper = empty.
        # Row dst fills the destination: empty + coeff * helper = value.
        entries[(src, helper)] = Fraction(empty - mover_value, helper_value)
        entries[(dst, helper)] = Fraction(mover_value - empty, helper_value)
    else:
        # No opponent piece on the board: read the empty marker straight
        # from another empty cell and the mover value from the source.
        del entries[(src, src)]
        del entries[(dst, dst)]
        entries[(src, _lowest_empty_helper(cells, empty, dst))] = Fraction(1)
        entries[(dst, src)] = Fraction(1)

    for node in captures.indices:
        # Captured rows clear to empty using the arriving piece as helper.
        entries[(node, src)] = Fraction(empty - cells[node], mover_value)

    matrix = TransitionMatrix(board.n, entries, domain=domain)
    expected = _expected_after(cells, move, captures, empty)
    if list(matrix.apply(cells)) != [Fraction(v) for v in expected]:
        raise MatrixConstructionError(
            f"internal consistency failure for move {move}: M.a != b"
        )
    return matrix


def build_transition_matrix_y(
    before: GameState, move: Move, captures: CaptureSet
) -> TransitionMatrix:
    """Transition matrix over Y = {-1, 0, 1} for a tri-valued game move.

    Rows src/dst lean on the lowest-index opponent cell (coefficient
    +1/-1 because mover value plus opponent value is always 3); captured
    rows add the mover value to their own.  All other rows are identity.
    """
    return _build_matrix(before, move, captures, DOMAIN_Y)


def build_transition_matrix_q(
    before: GameState, move: Move, captures: CaptureSet
) -> TransitionMatrix:
    """Transition matrix over the rationals for any piece alphabet.

    Same row layout as the Y construction, with coefficients scaled by
    the helper-cell value, so every reduced denominator divides a piece
    value and never exceeds the alphabet maximum.
    """
    return _build_matrix(before, move, captures, DOMAIN_Q)


_AXIOM_NAMES = (
    "additive_commutativity",
    "additive_associativity",
    "multiplicative_associativity",
    "left_distributivity",
    "right_distributivity",
    "additive_identity",
    "additive_inverse",
)


@dataclass
class AlgebraReport:
    """Sampled ring-axiom results over Z_modulus."""

    dimension: int
    modulus: int
    samples: int
    seed: int
    axiom_passes: dict[str, int]
    failures: dict[str, dict]
    noncommutative_witness: tuple[list[list[int]], list[list[int]]] | None

    @property
    def all_passed(self) -> bool:
        return all(count == self.samples for count in self.axiom_passes.values())

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "modulus": self.modulus,
            "samples": self.samples,
            "seed": self.seed,
            "axiom_passes": self.axiom_passes,
            "all_passed": self.all_passed,
            "failures": self.failures,
            "noncommutative_witness": self.noncommutative_witness,
        }


def check_ring_axioms(
    dimension: int, modulus: int = 3, samples: int = 1000, seed: int = 0
) -> AlgebraReport:
    """Check ring axioms on random matrix triples over Z_modulus.

    With modulus 3, entry k stands for the signed value k mapped into
    {0, 1, 2} (so 2 plays the role of -1); matrix sums and products over
    the signed entries then agree with the mod-3 results.
    """
    if dimension < 1:
        raise AlgebraError(f"dimension must be >= 1, got {dimension}")
    if modulus < 2:
        raise AlgebraError(f"modulus must be >= 2, got {modulus}")
    if samples < 1:
        raise AlgebraError(f"samples must be >= 1, got {samples}")

    rng = np.random.default_rng(seed)
    a = rng.integers(0, modulus, size=(samples, dimension, dimension), dtype=np.int64)
    b = rng.integers(0, modulus, size=(samples, dimension, dimension), dtype=np.int64)
    c = rng.integers(0, modulus, size=(samples, dimension, dimension), dtype=np.int64)
    m = modulus
    zero = np.zeros_like(a)

    checks = {
        "additive_commutativity": (a + b) % m == (b + a) % m,
        "additive_associativity": ((a + b) % m + c) % m == (a + (b + c) % m) % m,
        "multiplicative_associativity": ((a @ b) % m @ c) % m == (a @ ((b @ c) % m)) % m,
        "left_distributivity": (a @ ((b + c) % m)) % m == ((a @ b) % m + (a @ c) % m) % m,
        "right_distributivity": (((a + b) % m) @ c) % m == ((a @ c) % m + (b @ c) % m) % m,
        "additive_identity": (a + zero) % m == a % m,
        "additive_inverse": (a + (m - a) % m) % m == zero,
    }

    axiom_passes = {}
    failures = {}
    for name in _AXIOM_NAMES:
        per_sample = checks[name].reshape(samples, -1).all(axis=1)
        axiom_passes[name] = int(per_sample.sum())
        if not per_sample.all():
            first_bad = int(np.argmin(per_sample))
            failures[name] = {
                "sample": first_bad,
                "a": a[first_bad].tolist(),
                "b": b[first_bad].tolist(),
                "c": c[first_bad].tolist(),
            }

    witness = None
    if dimension >= 2:
        commutes = ((a @ b) % m == (b @ a) % m).reshape(samples, -1).all(axis=1)
        if not commutes.all():
            first = int(np.argmin(commutes))
            witness = (a[first].tolist(), b[first].tolist())

    return AlgebraReport(
        dimension=dimension,
        modulus=modulus,
        samples=samples,
        seed=seed,
        axiom_passes=axiom_passes,
        failures=failures,
        noncommutative_witness=witness,
    )


@dataclass(frozen=True)
class NonclosureReport:
    """Explicit witnesses that D is closed under neither + nor x.

    The all-ones matrix and its negation both sit in D, yet they sum to
    the zero matrix; the cyclic shift and its transpose both sit in D,
    yet they multiply to the identity.
    """

    dimension: int
    sum_operands_in_D: tuple[bool, bool]
    sum_result_in_D: bool
    product_operands_in_D: tuple[bool, bool]
    product_result_in_D: bool

    @property
    def valid(self) -> bool:
        return (
            all(self.sum_operands_in_D)
            and not self.sum_result_in_D
            and all(self.product_operands_in_D)
            and not self.product_result_in_D
        )

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "sum_operands_in_D": list(self.sum_operands_in_D),
            "sum_result_in_D": self.sum_result_in_D,
            "product_operands_in_D": list(self.product_operands_in_D),
            "product_result_in_D": self.product_result_in_D,
            "valid": self.valid,
        }


def nonclosure_witnesses(dimension: int) -> NonclosureReport:
    if dimension < 2:
        raise AlgebraError(f"nonclosure witnesses need dimension >= 2, got {dimension}")
    ones = TransitionMatrix.all_ones(dimension)
    shift = TransitionMatrix.cyclic_shift(dimension)
    shift_t = shift.transpose()
    return NonclosureReport(
        dimension=dimension,
        sum_operands_in_D=(classify_matrix(ones).in_D, classify_matrix(-ones).in_D),
        sum_result_in_D=classify_matrix(ones + (-ones)).in_D,
        product_operands_in_D=(
            classify_matrix(shift).in_D,
            classify_matrix(shift_t).in_D,
        ),
        product_result_in_D=classify_matrix(shift @ shift_t).in_D,
    )
