"""Self-play dataset pipeline: feature encoding, export, and metrics.

Each decisive game contributes one sample per move.  A sample packs the
pre-move board, the post-move board, and the mover's color into 85 bits
and is labeled 1 when the mover's side went on to win the game.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .records import GameRecord
from .rules import GameState

FEATURE_WIDTH = 85

# Two bits per cell; 00 is deliberately unused so an all-zero pair
# always signals a corrupt row.
_CELL_CODES = {1: (0, 1), 2: (1, 0), 3: (1, 1)}
_CODE_CELLS = {bits: value for value, bits in _CELL_CODES.items()}

DRAWS_EXCLUDE = "exclude"
DRAWS_AS_LOSS = "include-as-loss"


class DatasetError(ValueError):
    pass


class MetricsError(ValueError):
    pass


def encode_features(before: GameState, after: GameState, mover: int) -> tuple[int, ...]:
    """85-bit encoding of one move on the tri-valued 21-node board.

    Bits 0..41 encode the pre-move cells (two bits each, low index
    first), bits 42..83 the post-move cells, and bit 84 the mover color
    (1 for player 1).
    """
    if before.board.n != 21 or before.board.alphabet.empty != 3:
        raise DatasetError("feature encoding is defined for the tri-valued 21-node board")
    bits: list[int] = []
    for cells in (before.cells, after.cells):
        for value in cells:
            bits.extend(_CELL_CODES[value])
    bits.append(1 if mover == 1 else 0)
    return tuple(bits)


def decode_features(bits: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Invert encode_features; rejects the invalid 00 cell code."""
    if len(bits) != FEATURE_WIDTH:
        raise DatasetError(f"expected {FEATURE_WIDTH} bits, got {len(bits)}")
    boards = []
    for offset in (0, 42):
        cells = []
        for i in range(21):
            pair = (bits[offset + 2 * i], bits[offset + 2 * i + 1])
            if pair not in _CODE_CELLS:
                raise DatasetError(f"invalid cell code {pair} at cell {i}, offset {offset}")
            cells.append(_CODE_CELLS[pair])
        boards.append(tuple(cells))
    return boards[0], boards[1], 1 if bits[84] else 2


@dataclass(frozen=True)
class LabeledSample:
    game_id: int
    ply: int
    features: tuple[int, ...]
    label: int


def generate_dataset(
    records: Iterable[GameRecord], draws: str = DRAWS_EXCLUDE
) -> list[LabeledSample]:
    """One sample per move of each finished game, ordered by (game, ply).

    Drawn games are dropped under the default policy; with
    "include-as-loss" their moves appear labeled 0 for both sides.
    """
    if draws not in (DRAWS_EXCLUDE, DRAWS_AS_LOSS):
        raise DatasetError(f"unknown draw policy {draws!r}")
    samples: list[LabeledSample] = []
    for game_id, record in enumerate(records):
        if record.outcome is None:
            raise DatasetError(f"game {game_id} is unfinished")
        if record.outcome.is_draw and draws == DRAWS_EXCLUDE:
            continue
        states = record.states
        for ply in range(len(record.moves)):
            mover = states[ply].to_move
            samples.append(
                LabeledSample(
                    game_id=game_id,
                    ply=ply,
                    features=encode_features(states[ply], states[ply + 1], mover),
                    label=1 if record.outcome.winner == mover else 0,
                )
            )
    return samples


def write_dataset_csv(samples: Iterable[LabeledSample], stream: TextIO) -> int:
    writer = csv.writer(stream)
    writer.writerow([f"f{i}" for i in range(FEATURE_WIDTH)] + ["label"])
    count = 0
    for sample in samples:
        writer.writerow(list(sample.features) + [sample.label])
        count += 1
    return count


def write_dataset_jsonl(samples: Iterable[LabeledSample], stream: TextIO) -> int:
    count = 0
    for sample in samples:
        stream.write(
            json.dumps(
                {
                    "game_id": sample.game_id,
                    "ply": sample.ply,
                    "features": list(sample.features),
                    "label": sample.label,
                },
                sort_keys=True,
                separators=(",", ":"),
            )
            + "\n"
        )
        count += 1
    return count


def read_dataset_csv(stream: TextIO) -> list[tuple[tuple[int, ...], int]]:
    """Read (features, label) rows back from the CSV export."""
    reader = csv.reader(stream)
    header = next(reader, None)
    expected = [f"f{i}" for i in range(FEATURE_WIDTH)] + ["label"]
    if header != expected:
        raise DatasetError("unexpected CSV header")
    rows = []
    for row in reader:
        if len(row) != FEATURE_WIDTH + 1:
            raise DatasetError(f"row has {len(row)} fields, expected {FEATURE_WIDTH + 1}")
        values = [int(x) for x in row]
        rows.append((tuple(values[:-1]), values[-1]))
    return rows


# ---------------------------------------------------------------------------
# Binary-classification metrics.


@dataclass(frozen=True)
class MetricsReport:
    tp: int
    fp: int
    tn: int
    fn: int
    sensitivity: float
    specificity: float
    ppv: float
    npv: float
    accuracy: float
    odds_ratio: float
    f1: float
    auc: float

    def to_dict(self) -> dict:
        return {
            "confusion": {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn},
            "sensitivity": self.sensitivity,
            "specificity": self.specificity,
            "ppv": self.ppv,
            "npv": self.npv,
            "accuracy": self.accuracy,
            "odds_ratio": self.odds_ratio,
            "f1": self.f1,
            "auc": self.auc,
        }


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def rank_auc(labels: Sequence[int], scores: Sequence[float]) -> float:
    """Rank-based AUC (Mann-Whitney) with average ranks for tied scores."""
    positives = sum(labels)
    negatives = len(labels) - positives
    if positives == 0 or negatives == 0:
        raise MetricsError("AUC undefined: both classes must be present")
    order = sorted(range(len(scores)), key=lambda i: scores[i])
    ranks = [0.0] * len(scores)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        # ranks are 1-based; tied scores share the average rank
        average = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = average
        i = j + 1
    positive_rank_sum = sum(r for r, label in zip(ranks, labels) if label == 1)
    return (positive_rank_sum - positives * (positives + 1) / 2) / (positives * negatives)


def compute_metrics(
    labels: Sequence[int], scores: Sequence[float], threshold: float = 0.5
) -> MetricsReport:
    """Confusion-matrix metrics at a threshold plus threshold-free AUC.

    A score >= threshold predicts the positive class.  The odds ratio
    applies the Haldane +0.5 correction to every cell whenever any cell
    is zero.
    """
    if len(labels) != len(scores):
        raise MetricsError(f"{len(labels)} labels vs {len(scores)} scores")
    if not labels:
        raise MetricsError("no samples")
    if any(label not in (0, 1) for label in labels):
        raise MetricsError("labels must be 0 or 1")

    tp = fp = tn = fn = 0
    for label, score in zip(labels, scores):
        predicted = 1 if score >= threshold else 0
        if predicted == 1:
            if label == 1:
                tp += 1
            else:
                fp += 1
        else:
            if label == 1:
                fn += 1
            else:
                tn += 1

    if min(tp, fp, tn, fn) == 0:
        a, b, c, d = tp + 0.5, fp + 0.5, tn + 0.5, fn + 0.5
    else:
        a, b, c, d = tp, fp, tn, fn
    odds_ratio = (a * c) / (b * d)

    sensitivity = _ratio(tp, tp + fn)
    ppv = _ratio(tp, tp + fp)
    return MetricsReport(
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        sensitivity=sensitivity,
        specificity=_ratio(tn, tn + fp),
        ppv=ppv,
        npv=_ratio(tn, tn + fn),
        accuracy=_ratio(tp + tn, len(labels)),
        odds_ratio=odds_ratio,
        f1=_ratio(2 * ppv * sensitivity, ppv + sensitivity),
        auc=rank_auc(labels, scores),
    )
