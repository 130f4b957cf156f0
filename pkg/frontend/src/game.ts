// Pure view logic: selection handling, badges, status text. Everything
// here works from server responses alone, so it stays DOM-free and the
// board rules live in exactly one place (the service).

import type { AppliedMove, MatrixCheck, MoveRef, OutcomeView, StateView } from "./api.js";

export const RED = 1;
export const YELLOW = 2;

export type CellKind = "red" | "yellow" | "empty";

export function cellKind(value: number): CellKind {
  if (value === RED) return "red";
  if (value === YELLOW) return "yellow";
  return "empty";
}

export function sideName(player: number): string {
  return player === RED ? "Red" : "Yellow";
}

/** Nodes the side to move may pick up, per the server's legal move list. */
export function movableSources(view: StateView): number[] {
  const seen = new Set<number>();
  for (const move of view.legal_moves) seen.add(move.from);
  return [...seen].sort((a, b) => a - b);
}

export function destinationsFor(view: StateView, node: number): number[] {
  return view.legal_moves.filter((m) => m.from === node).map((m) => m.to);
}

export interface ClickResult {
  selected: number | null;
  move: MoveRef | null;
}

/**
 * Fold one board click into the selection state.
 *
 * Clicking a movable piece selects it (again deselects), clicking a
 * listed destination of the selection produces the move to submit, and
 * anything else clears. Ignores clicks when the game is over or it is
 * not the human's turn.
 */
export function reduceClick(
  view: StateView,
  humanPlays: number,
  selected: number | null,
  node: number,
): ClickResult {
  if (view.outcome !== null || view.to_move !== humanPlays) {
    return { selected: null, move: null };
  }
  if (selected !== null && destinationsFor(view, selected).includes(node)) {
    return { selected: null, move: { from: selected, to: node } };
  }
  if (node === selected) {
    return { selected: null, move: null };
  }
  if (movableSources(view).includes(node)) {
    return { selected: node, move: null };
  }
  return { selected: null, move: null };
}

export interface Badge {
  ok: boolean;
  text: string;
  detail: string;
}

/** Per-move verification badge; green only when the rebuilt matrix reproduced the move exactly. */
export function matrixBadge(check: MatrixCheck): Badge {
  const detail = `domain ${check.domain}, ${check.matrix_nnz} nonzero entries`;
  const failures: string[] = [];
  if (!check.exact_match) failures.push("M·a=b ✗");
  if (!check.in_D) failures.push("M∉D");
  if (failures.length === 0) {
    return { ok: true, text: "M·a=b ✓, M∈D", detail };
  }
  return { ok: false, text: failures.join(", "), detail };
}

export function moveLabel(move: AppliedMove, mover: number): string {
  const captures =
    move.captures.length > 0 ? ` x${move.captures.length} [${move.captures.join(", ")}]` : "";
  return `${sideName(mover)} ${move.from}→${move.to}${captures}`;
}

export function outcomeText(outcome: OutcomeView, humanPlays: number): string {
  if (outcome.kind === "draw") {
    return `Draw: ${outcome.reason}`;
  }
  const who = outcome.winner === humanPlays ? "you" : "engine";
  return `${sideName(outcome.winner ?? 0)} (${who}) wins: ${outcome.reason}`;
}

export function turnText(view: StateView, humanPlays: number): string {
  if (view.outcome !== null) {
    return outcomeText(view.outcome, humanPlays);
  }
  if (view.to_move === humanPlays) {
    return `Your move (${sideName(humanPlays)})`;
  }
  return `Engine to move (${sideName(view.to_move)})`;
}
